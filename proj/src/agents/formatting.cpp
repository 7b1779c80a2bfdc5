#include "phoneagent/agents/formatting.hpp"

#include "phoneagent/core/overloaded.hpp"

namespace phoneagent {

std::string indent_continuation(const std::string& text) {
  std::string out;
  for (char c : text) {
    out += c;
    if (c == '\n') out += "  ";
  }
  return out;
}

std::string format_action_history(std::span<const ActionRecord> actions) {
  std::string out;
  for (const auto& a : actions) {
    std::string line = "- Step " + std::to_string(a.step_index) + ": " + to_string(a.action) + " -> outcome " +
                       std::string(to_string(a.outcome));
    if (!a.expectation.empty()) line += "\nexpected: " + a.expectation;
    out += indent_continuation(line) + "\n";
  }
  return out;
}

std::string format_error_history(std::span<const ErrorRecord> errors) {
  std::string out;
  for (const auto& e : errors) {
    std::string entry = "- Error at step " + std::to_string(e.step_index) + ": " + e.description;
    if (!e.suspected_cause.empty()) entry += "\nsuspected cause: " + e.suspected_cause;
    if (!e.suggested_fix.empty()) entry += "\nsuggested fix: " + e.suggested_fix;
    out += indent_continuation(entry) + "\n";
  }
  return out;
}

std::string format_tips(std::span<const Tip> tips) {
  std::string out;
  for (const auto& t : tips) out += indent_continuation(std::to_string(t.id) + ". " + t.text) + "\n";
  return out;
}

std::string format_sequence(const Shortcut& shortcut) {
  std::string out;
  for (std::size_t i = 0; i < shortcut.sequence.size(); ++i) {
    const auto& t = shortcut.sequence[i];
    if (i > 0) out += " -> ";
    out += t.operation;
    if (t.slots.empty()) continue;
    out += '(';
    for (std::size_t j = 0; j < t.slots.size(); ++j) {
      if (j > 0) out += ", ";
      out += t.slots[j].first + "=";
      out += std::visit(Overloaded{
                            [](const ArgRef& ref) { return ref.name; },
                            [](const ArgValue& literal) { return to_string(literal); },
                        },
                        t.slots[j].second);
    }
    out += ')';
  }
  return out;
}

std::string format_shortcuts(std::span<const Shortcut> shortcuts) {
  std::string out;
  for (const auto& s : shortcuts) {
    std::string signature = s.name + "(";
    for (std::size_t i = 0; i < s.arguments.size(); ++i) signature += (i > 0 ? ", " : "") + s.arguments[i];
    signature += ")";
    std::string entry = "- Shortcut " + signature + ": " + s.description;
    entry += "\nprecondition: " + s.precondition;
    entry += "\noperations: " + format_sequence(s);
    out += indent_continuation(entry) + "\n";
  }
  return out;
}

std::string format_task_list(std::span<const TaskQuery> tasks) {
  std::string out;
  for (const auto& t : tasks) out += indent_continuation("- Task: " + t.text) + "\n";
  return out;
}

}  // namespace phoneagent
