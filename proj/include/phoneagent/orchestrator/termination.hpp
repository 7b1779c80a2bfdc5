#pragma once

#include <optional>
#include <span>

#include "phoneagent/core/config.hpp"
#include "phoneagent/core/memory.hpp"

namespace phoneagent {

/// What check_termination looks at after a step.
struct TerminationState {
  bool step_error = false;            // parse, transport or device failure this step
  int step_count = 0;                 // steps taken so far
  std::span<const Outcome> outcomes;  // reflected outcomes, oldest first
  std::span<const Action> actions;    // chosen actions, oldest first
};

/// Conditions in priority order: step error -> other_error; step_count >=
/// max_iterations -> max_iterations; trailing failures >=
/// max_consecutive_errors -> max_consecutive_errors; more than
/// max_repeated_actions identical trailing actions (Swipe and Back never
/// count) -> max_repeated_actions. Returns nullopt to continue.
std::optional<ExitReason> check_termination(const TerminationState& state, const OrchestratorConfig& config);

/// Length of the trailing run of identical actions; 0 if the last action is
/// exempt from the repetition rule.
int trailing_repeats(std::span<const Action> actions);

}  // namespace phoneagent
