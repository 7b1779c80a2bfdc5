#include "phoneagent/core/config.hpp"

#include <string>

#include "phoneagent/core/errors.hpp"

namespace phoneagent {

void OrchestratorConfig::validate() const {
  auto positive = [](int value, const char* name) {
    if (value < 1) throw ConfigError(std::string(name) + " must be >= 1");
  };
  positive(k_escalation, "k_escalation");
  positive(m_history_window, "m_history_window");
  positive(max_iterations, "max_iterations");
  positive(max_consecutive_errors, "max_consecutive_errors");
  positive(max_repeated_actions, "max_repeated_actions");
  if (retrieval_tip_threshold < 0 || retrieval_shortcut_threshold < 0) {
    throw ConfigError("retrieval thresholds must be >= 0");
  }
  if (k_escalation > max_consecutive_errors) {
    throw ConfigError("k_escalation must not exceed max_consecutive_errors");
  }
}

Json config_to_json(const OrchestratorConfig& config) {
  Json out = Json::object();
  out["k_escalation"] = config.k_escalation;
  out["m_history_window"] = config.m_history_window;
  out["max_iterations"] = config.max_iterations;
  out["max_consecutive_errors"] = config.max_consecutive_errors;
  out["max_repeated_actions"] = config.max_repeated_actions;
  out["strict_precondition_gate"] = config.strict_precondition_gate;
  out["retrieval_enabled"] = config.retrieval_enabled;
  out["retrieval_tip_threshold"] = config.retrieval_tip_threshold;
  out["retrieval_shortcut_threshold"] = config.retrieval_shortcut_threshold;
  return out;
}

OrchestratorConfig config_from_json(const Json& value, OrchestratorConfig base) {
  fields::object(value, "config");
  auto read = [&](const char* key, int& target) {
    target = static_cast<int>(fields::integer_or(value, key, "config", target));
  };
  read("k_escalation", base.k_escalation);
  read("m_history_window", base.m_history_window);
  read("max_iterations", base.max_iterations);
  read("max_consecutive_errors", base.max_consecutive_errors);
  read("max_repeated_actions", base.max_repeated_actions);
  read("retrieval_tip_threshold", base.retrieval_tip_threshold);
  read("retrieval_shortcut_threshold", base.retrieval_shortcut_threshold);
  base.strict_precondition_gate =
      fields::boolean_or(value, "strict_precondition_gate", "config", base.strict_precondition_gate);
  base.retrieval_enabled = fields::boolean_or(value, "retrieval_enabled", "config", base.retrieval_enabled);
  for (const auto& [key, _] : value.items()) {
    static const Json known = config_to_json({});
    if (!known.contains(key)) throw DecodeError(fields::join("config", key), "unknown setting");
  }
  return base;
}

}  // namespace phoneagent
