#pragma once

#include <filesystem>

#include "phoneagent/core/json_fields.hpp"

namespace phoneagent {

/// Loop limits. Defaults: escalate after 2 consecutive failures, show the
/// Operator the last 5 actions/errors, stop after 40 iterations, 3
/// consecutive errors, or more than 3 identical consecutive actions.
struct OrchestratorConfig {
  int k_escalation = 2;
  int m_history_window = 5;
  int max_iterations = 40;
  int max_consecutive_errors = 3;
  int max_repeated_actions = 3;

  /// Deny shortcut calls whose precondition visibly does not hold instead of
  /// trusting the Operator's own check.
  bool strict_precondition_gate = false;

  /// Experience retrievers run only when enabled and memory holds more tips
  /// (or shortcuts) than the threshold; otherwise all of memory is shown.
  bool retrieval_enabled = false;
  int retrieval_tip_threshold = 10;
  int retrieval_shortcut_threshold = 5;

  /// Throws ConfigError when a limit is < 1, a threshold is negative, or
  /// k_escalation exceeds max_consecutive_errors.
  void validate() const;
  bool operator==(const OrchestratorConfig&) const = default;
};

Json config_to_json(const OrchestratorConfig& config);

/// Reads the keys present in `value` over `base`; absent keys keep their
/// value from `base`.
OrchestratorConfig config_from_json(const Json& value, OrchestratorConfig base = {});

}  // namespace phoneagent
