#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <vector>

#include "phoneagent/agents/evolution.hpp"
#include "phoneagent/core/task_io.hpp"
#include "phoneagent/orchestrator/loop.hpp"

namespace phoneagent {

inline constexpr std::string_view kManifestFormat = "phoneagent.run.v1";

struct ScenarioOptions {
  OrchestratorConfig config;
  bool evolve = true;
  std::filesystem::path memory_path;  // read at start; rewritten after each task when evolving
  std::filesystem::path out_dir;      // one subdirectory per task id, plus manifest.json
  std::function<std::unique_ptr<Device>()> make_device;  // fresh session per task
  std::shared_ptr<Perceptor> perceptor;
  std::shared_ptr<ModelBackend> backend;
  const PromptLibrary* prompts = nullptr;
};

struct ScenarioRun {
  std::vector<Trajectory> trajectories;
  std::vector<EvolutionReport> evolution;  // one per task when evolving
  LongTermMemory memory;                   // final long-term memory
};

/// Runs the tasks in order against one shared long-term memory. With
/// evolution on, after task k the experience reflectors see the queries of
/// tasks k+1.. as upcoming tasks, and the memory file is saved before the
/// next task starts. With evolution off the memory file is never written.
///
/// Per task directory, besides the TaskRecorder files: memory_before.json,
/// memory_after.json and (when evolving) evolution.json. manifest.json in
/// out_dir records the config, the SHA-256 of the memory file before and
/// after, and each task's exit reason.
ScenarioRun run_scenario(const Scenario& scenario, const ScenarioOptions& options);

}  // namespace phoneagent
