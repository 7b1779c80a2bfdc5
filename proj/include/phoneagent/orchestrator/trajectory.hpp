#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phoneagent/core/json_fields.hpp"
#include "phoneagent/core/memory.hpp"
#include "phoneagent/perception/perception.hpp"

namespace phoneagent {

inline constexpr std::string_view kTrajectoryFormat = "phoneagent.trajectory.v1";

/// One decision iteration. Screen fields are paths relative to the task
/// directory, empty when the screen was not rendered.
struct StepRecord {
  int index = 0;
  std::string pre_screen;
  PerceptionResult perception;
  bool escalated = false;  // the Manager received the error payload
  std::string plan;
  std::string subgoal;
  std::string operator_thought;
  std::optional<Action> action;  // absent when the step failed before an action was chosen
  std::string expectation;
  std::vector<std::string> operations;  // atomic expansion actually attempted
  std::optional<std::string> gate_denial;
  std::optional<std::size_t> failed_operation;
  std::string execution_failure;
  std::vector<std::string> trace_screens;  // one per attempted operation
  std::string post_screen;
  std::optional<Outcome> outcome;  // absent for Stop and failed steps
  std::optional<ErrorRecord> error;
  std::string progress;
  std::string notes;
  std::optional<std::string> step_error;
};

struct Trajectory {
  TaskQuery task;
  std::vector<StepRecord> steps;
  ExitReason exit_reason = ExitReason::OtherError;
  std::string exit_detail;
  int operations_executed = 0;

  /// Manager+Operator pairs; equals the number of steps.
  int decision_iterations() const { return static_cast<int>(steps.size()); }
};

Json action_to_json(const Action& action);
Json step_to_json(const StepRecord& step);
Json trajectory_to_json(const Trajectory& trajectory);

}  // namespace phoneagent
