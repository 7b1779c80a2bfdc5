#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "phoneagent/core/memory.hpp"
#include "phoneagent/device/app_graph.hpp"
#include "phoneagent/device/sim_device.hpp"
#include "phoneagent/llm/scripted_backend.hpp"
#include "phoneagent/orchestrator/loop.hpp"

namespace phoneagent::testkit {

std::filesystem::path source_dir();

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& child) const { return path_ / child; }

 private:
  std::filesystem::path path_;
};

// Canned agent responses in the response grammar.
std::string manager_reply(const std::string& plan = "1. Do the task", const std::string& subgoal = "Do the task");
std::string operator_reply(const std::string& action, const std::string& expectation = "progress");
std::string reflect_ok(const std::string& progress = "Step done.");
std::string reflect_fail(Outcome outcome, const std::string& description = "Nothing happened.");
std::string notes_reply(const std::string& notes = "nothing yet");

/// Builds a ScriptBook with per-caller counters, mirroring how the loop
/// consumes responses.
class ScriptWriter {
 public:
  void add(const std::string& caller, std::string response);
  /// One decision iteration: Manager, Operator and, unless the action ends
  /// the task or never reaches the device, Reflector and Notetaker.
  void step(const std::string& action, std::optional<std::string> reflection = reflect_ok(),
            std::string manager = manager_reply());
  ScriptBook book() const { return book_; }

 private:
  ScriptBook book_;
  std::map<std::string, int> counters_;
};

std::shared_ptr<const AppGraph> demo_graph();

/// Tap an input box, type, press enter.
Shortcut tap_type_and_enter();

/// Prompt texts sent by `caller`, in call order, read back from an audit
/// directory (a task's model_calls).
std::vector<std::string> audited_prompts(const std::filesystem::path& model_calls, const std::string& caller);


struct ScriptedRun {
  TaskRun run;
  SimState final_state;
  int backend_calls = 0;
};

/// Runs `task` on a fresh simulator over `graph` with a scripted backend,
/// recording into `dir`. `prelude` operations are applied to the device
/// before the task starts.
ScriptedRun run_scripted(const ScriptBook& book, const std::filesystem::path& dir,
                         const OrchestratorConfig& config = {}, const LongTermMemory& memory = {},
                         std::shared_ptr<const AppGraph> graph = demo_graph(),
                         std::span<const AtomicOperation> prelude = {}, bool render = false);

TaskQuery demo_task(std::string id = "t1", std::string query = "Do the task.");

}  // namespace phoneagent::testkit
