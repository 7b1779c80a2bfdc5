#include "phoneagent/orchestrator/termination.hpp"

namespace phoneagent {

int trailing_repeats(std::span<const Action> actions) {
  if (actions.empty() || is_repeat_exempt(actions.back())) return 0;
  int run = 1;
  for (std::size_t i = actions.size() - 1; i > 0 && actions[i - 1] == actions.back(); --i) ++run;
  return run;
}

std::optional<ExitReason> check_termination(const TerminationState& state, const OrchestratorConfig& config) {
  if (state.step_error) return ExitReason::OtherError;
  if (state.step_count >= config.max_iterations) return ExitReason::MaxIterations;
  if (trailing_failures(state.outcomes) >= config.max_consecutive_errors) return ExitReason::MaxConsecutiveErrors;
  if (trailing_repeats(state.actions) > config.max_repeated_actions) return ExitReason::MaxRepeatedActions;
  return std::nullopt;
}

}  // namespace phoneagent
