#include "phoneagent/core/memory.hpp"

#include <algorithm>
#include <stdexcept>

namespace phoneagent {

const StoredShortcut* LongTermMemory::find_shortcut(std::string_view name) const {
  auto it = std::find_if(shortcuts_.begin(), shortcuts_.end(),
                         [&](const StoredShortcut& s) { return s.shortcut.name == name; });
  return it == shortcuts_.end() ? nullptr : &*it;
}

const StoredTip* LongTermMemory::find_tip(int id) const {
  if (id < 1 || id > static_cast<int>(tips_.size())) return nullptr;
  return &tips_[static_cast<std::size_t>(id - 1)];
}

bool LongTermMemory::add_shortcut(Shortcut shortcut, Provenance provenance) {
  if (find_shortcut(shortcut.name) != nullptr) return false;
  shortcuts_.push_back({std::move(shortcut), std::move(provenance)});
  return true;
}

void LongTermMemory::add_tip(std::string text, Provenance provenance) {
  const int id = static_cast<int>(tips_.size()) + 1;
  tips_.push_back({{id, std::move(text)}, std::move(provenance)});
}

void LongTermMemory::replace_tips(std::vector<std::pair<std::string, Provenance>> tips) {
  tips_.clear();
  for (auto& [text, provenance] : tips) add_tip(std::move(text), std::move(provenance));
}

WorkingMemory::WorkingMemory(int k_escalation) : k_escalation_(k_escalation) {
  if (k_escalation < 1) throw std::invalid_argument("k_escalation must be >= 1");
}

void WorkingMemory::record(ActionRecord action, std::optional<ErrorRecord> error) {
  if (is_failure(action.outcome) != error.has_value()) {
    throw std::invalid_argument(is_failure(action.outcome)
                                    ? "failed outcome requires an error record"
                                    : "outcome A must not carry an error record");
  }
  if (error && error->description.empty()) {
    throw std::invalid_argument("error record needs a description");
  }
  actions_.push_back(std::move(action));
  if (error) errors_.push_back(std::move(*error));

  std::vector<Outcome> outcomes;
  outcomes.reserve(actions_.size());
  for (const auto& a : actions_) outcomes.push_back(a.outcome);
  escalation_flag_ = trailing_failures(outcomes) >= k_escalation_;
}

std::span<const ErrorRecord> WorkingMemory::escalation_errors() const {
  const auto n = std::min(errors_.size(), static_cast<std::size_t>(k_escalation_));
  return std::span<const ErrorRecord>(errors_).last(n);
}

HistoryWindow history_window(const WorkingMemory& memory, int m) {
  if (m < 1) throw std::invalid_argument("history window m must be >= 1");
  const auto cap = static_cast<std::size_t>(m);
  std::span<const ActionRecord> actions(memory.actions());
  std::span<const ErrorRecord> errors(memory.errors());
  return {actions.last(std::min(cap, actions.size())), errors.last(std::min(cap, errors.size()))};
}

int trailing_failures(std::span<const Outcome> outcomes) {
  int run = 0;
  for (auto it = outcomes.rbegin(); it != outcomes.rend() && is_failure(*it); ++it) ++run;
  return run;
}

}  // namespace phoneagent
