#include "phoneagent/shortcut/engine.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "phoneagent/core/overloaded.hpp"

namespace phoneagent {
namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  const auto first = static_cast<unsigned char>(s.front());
  if (!std::isalpha(first) && s.front() != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

[[noreturn]] void fail(ValidationErrorKind kind, const std::string& message) {
  throw ValidationError(kind, message);
}

std::string_view kind_name(ParamKind kind) { return kind == ParamKind::Integer ? "integer" : "text"; }

ParamKind kind_of(const ArgValue& v) {
  return std::holds_alternative<std::int64_t>(v) ? ParamKind::Integer : ParamKind::Text;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string_view to_string(ValidationErrorKind kind) {
  switch (kind) {
    case ValidationErrorKind::InvalidName: return "invalid_name";
    case ValidationErrorKind::NameCollision: return "name_collision";
    case ValidationErrorKind::MissingPrecondition: return "missing_precondition";
    case ValidationErrorKind::EmptySequence: return "empty_sequence";
    case ValidationErrorKind::DuplicateArgument: return "duplicate_argument";
    case ValidationErrorKind::UnknownOperation: return "unknown_operation";
    case ValidationErrorKind::UnexpectedSlot: return "unexpected_slot";
    case ValidationErrorKind::MissingSlot: return "missing_slot";
    case ValidationErrorKind::UnknownSlotReference: return "unknown_slot_reference";
    case ValidationErrorKind::LiteralKindMismatch: return "literal_kind_mismatch";
    case ValidationErrorKind::KindConflict: return "kind_conflict";
    case ValidationErrorKind::UnusedArgument: return "unused_argument";
  }
  return "unknown";
}

ParamKind ValidatedShortcut::argument_kind(std::string_view argument) const {
  for (std::size_t i = 0; i < shortcut_.arguments.size(); ++i) {
    if (shortcut_.arguments[i] == argument) return kinds_[i];
  }
  throw std::out_of_range("shortcut " + shortcut_.name + " has no argument " + std::string(argument));
}

ValidatedShortcut validate_shortcut(Shortcut candidate) {
  using K = ValidationErrorKind;
  const Shortcut& s = candidate;
  if (!is_identifier(s.name)) fail(K::InvalidName, "'" + s.name + "' is not an identifier");
  if (find_operation_spec(s.name) != nullptr || s.name == "Stop") {
    fail(K::NameCollision, "'" + s.name + "' is a built-in action name");
  }
  if (blank(s.precondition)) fail(K::MissingPrecondition, s.name + " has no precondition");
  if (s.sequence.empty()) fail(K::EmptySequence, s.name + " has no operations");

  std::map<std::string, std::optional<ParamKind>, std::less<>> declared;
  for (const auto& arg : s.arguments) {
    if (!is_identifier(arg)) fail(K::InvalidName, "argument '" + arg + "' is not an identifier");
    if (!declared.emplace(arg, std::nullopt).second) fail(K::DuplicateArgument, "argument '" + arg + "' repeated");
  }

  for (std::size_t i = 0; i < s.sequence.size(); ++i) {
    const OperationTemplate& t = s.sequence[i];
    const std::string where = s.name + " operation " + std::to_string(i) + " (" + t.operation + ")";
    const OperationSpec* spec = find_operation_spec(t.operation);
    if (spec == nullptr) fail(K::UnknownOperation, where + " is not an atomic operation");

    std::vector<std::string_view> seen;
    for (const auto& [slot, value] : t.slots) {
      const auto param = std::find_if(spec->params.begin(), spec->params.end(),
                                      [&](const ParamSpec& p) { return p.name == slot; });
      if (param == spec->params.end()) fail(K::UnexpectedSlot, where + " takes no slot '" + slot + "'");
      if (std::find(seen.begin(), seen.end(), slot) != seen.end()) {
        fail(K::UnexpectedSlot, where + " fills slot '" + slot + "' twice");
      }
      seen.push_back(slot);

      std::visit(Overloaded{
                     [&](const ArgRef& ref) {
                       auto it = declared.find(ref.name);
                       if (it == declared.end()) {
                         fail(K::UnknownSlotReference, where + " refers to undeclared argument '" + ref.name + "'");
                       }
                       if (it->second && *it->second != param->kind) {
                         fail(K::KindConflict, "argument '" + ref.name + "' is used as both integer and text");
                       }
                       it->second = param->kind;
                     },
                     [&](const ArgValue& literal) {
                       if (kind_of(literal) != param->kind) {
                         fail(K::LiteralKindMismatch, where + " slot '" + slot + "' needs " +
                                                          std::string(kind_name(param->kind)) + " literal");
                       }
                     },
                 },
                 value);
    }
    for (const auto& p : spec->params) {
      if (std::find(seen.begin(), seen.end(), p.name) == seen.end()) {
        fail(K::MissingSlot, where + " is missing slot '" + std::string(p.name) + "'");
      }
    }
  }

  std::vector<ParamKind> kinds;
  for (const auto& arg : s.arguments) {
    const auto& kind = declared.find(arg)->second;
    if (!kind) fail(K::UnusedArgument, "argument '" + arg + "' is never used");
    kinds.push_back(*kind);
  }
  return ValidatedShortcut(std::move(candidate), std::move(kinds));
}

void validate_memory(const LongTermMemory& memory) {
  for (const auto& stored : memory.shortcuts()) {
    try {
      validate_shortcut(stored.shortcut);
    } catch (const ValidationError& e) {
      throw ValidationError(e.kind(), "stored shortcut " + stored.shortcut.name + ": " + e.what());
    }
  }
}

std::vector<AtomicOperation> bind_arguments(const ValidatedShortcut& validated,
                                            std::span<const std::pair<std::string, ArgValue>> values) {
  const Shortcut& s = validated.shortcut();
  std::map<std::string, const ArgValue*, std::less<>> bound;
  for (const auto& [name, value] : values) {
    if (std::find(s.arguments.begin(), s.arguments.end(), name) == s.arguments.end()) {
      throw BindingError(name, s.name + " takes no argument '" + name + "'");
    }
    if (!bound.emplace(name, &value).second) throw BindingError(name, "given more than once");
    const ParamKind want = validated.argument_kind(name);
    if (kind_of(value) != want) {
      throw BindingError(name, "expected " + std::string(kind_name(want)) + ", got " + to_string(value));
    }
  }
  for (const auto& arg : s.arguments) {
    if (!bound.contains(arg)) throw BindingError(arg, "missing value for " + s.name);
  }

  std::vector<AtomicOperation> out;
  for (const auto& t : s.sequence) {
    const OperationSpec& spec = *find_operation_spec(t.operation);
    std::vector<ArgValue> positional;
    for (const auto& p : spec.params) {
      const auto slot = std::find_if(t.slots.begin(), t.slots.end(), [&](const auto& e) { return e.first == p.name; });
      positional.push_back(std::visit(Overloaded{
                                          [&](const ArgRef& ref) { return *bound.find(ref.name)->second; },
                                          [](const ArgValue& literal) { return literal; },
                                      },
                                      slot->second));
    }
    try {
      out.push_back(make_operation(t.operation, positional));
    } catch (const std::invalid_argument& e) {
      // Only reachable for integers that do not fit a screen coordinate.
      throw BindingError(s.name, e.what());
    }
  }
  return out;
}

GateDecision gate_precondition(const Shortcut& shortcut, const PerceptionResult& perception,
                               std::string_view /*subgoal*/, GateMode mode) {
  if (mode == GateMode::ModelMediated) return {};
  static constexpr std::string_view kInputPhrases[] = {"text input", "input box",  "search bar",
                                                       "search box", "text field", "input field"};
  const std::string pre = lower(shortcut.precondition);
  const bool wants_input = std::any_of(std::begin(kInputPhrases), std::end(kInputPhrases),
                                       [&](std::string_view p) { return pre.find(p) != std::string::npos; });
  if (!wants_input) return {};
  const bool has_field = std::any_of(perception.elements.begin(), perception.elements.end(), [](const auto& e) {
    return e.truth_kind == ElementKind::TextField;
  });
  if (has_field) return {};
  return {false, "precondition of " + shortcut.name + " requires a text input box, but none is on screen"};
}

ShortcutExecution execute_shortcut(Device& device, std::span<const AtomicOperation> operations,
                                   const ScreenState& before) {
  if (operations.empty()) throw std::invalid_argument("execute_shortcut needs at least one operation");
  ShortcutExecution result;
  for (std::size_t i = 0; i < operations.size(); ++i) {
    const AtomicOperation& operation = operations[i];
    std::string failure;
    if (!in_bounds(operation, device.width(), device.height())) {
      failure = to_string(operation) + " is outside the " + std::to_string(device.width()) + "x" +
                std::to_string(device.height()) + " screen";
    } else {
      try {
        result.trace.push_back(device.execute(operation));
        continue;
      } catch (const DeviceError& e) {
        failure = to_string(operation) + " failed: " + e.what();
      }
    }
    ScreenState reached = result.trace.empty() ? before : result.trace.back();
    result.trace.push_back(std::move(reached));
    result.failure_index = i;
    result.failure = std::move(failure);
    break;
  }
  result.final_screen = result.trace.back();
  return result;
}

}  // namespace phoneagent
