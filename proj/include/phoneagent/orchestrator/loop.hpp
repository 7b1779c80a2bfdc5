#pragma once

#include <filesystem>
#include <memory>

#include "phoneagent/agents/agents.hpp"
#include "phoneagent/core/config.hpp"
#include "phoneagent/device/device.hpp"
#include "phoneagent/orchestrator/trajectory.hpp"

namespace phoneagent {

/// Everything one task run talks to.
struct TaskEnvironment {
  Device& device;
  Perceptor& perceptor;
  ModelBackend& backend;  // normally an AuditingBackend over the task directory
  const PromptLibrary& prompts;
};

struct TaskRun {
  Trajectory trajectory;
  WorkingMemory working;  // final state, input to the experience reflectors
  std::vector<std::string> warnings;
};

/// Runs one task to completion and records it under `task_dir` (see
/// TaskRecorder). Each step: Manager (with the last k errors when the
/// escalation flag is up), Operator, precondition gate for shortcuts,
/// execution, perception of the result, Action Reflector, Notetaker, then the
/// termination check. A Stop action ends the run as self-reported success.
/// Parse, transport, device and repeated perception failures end it as
/// other_error. ScriptMissError propagates.
TaskRun run_task(const TaskQuery& task, const OrchestratorConfig& config, TaskEnvironment& env,
                 const LongTermMemory& memory, const std::filesystem::path& task_dir);

/// Wraps `backend` so that every call is logged under task_dir/model_calls.
std::shared_ptr<ModelBackend> audited(std::shared_ptr<ModelBackend> backend, const std::filesystem::path& task_dir);

}  // namespace phoneagent
