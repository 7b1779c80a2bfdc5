#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phoneagent/core/errors.hpp"
#include "phoneagent/core/memory.hpp"
#include "phoneagent/device/device.hpp"
#include "phoneagent/perception/perception.hpp"

namespace phoneagent {

enum class ValidationErrorKind {
  InvalidName,           // shortcut or argument name is not an identifier
  NameCollision,         // shortcut named like an atomic operation or Stop
  MissingPrecondition,
  EmptySequence,
  DuplicateArgument,
  UnknownOperation,      // not an atomic operation (shortcuts cannot nest)
  UnexpectedSlot,        // slot the operation does not take, or a repeated slot
  MissingSlot,           // operation parameter without a slot
  UnknownSlotReference,  // slot refers to an undeclared argument
  LiteralKindMismatch,   // e.g. a string literal for Tap.x
  KindConflict,          // one argument feeds both integer and text slots
  UnusedArgument,
};

std::string_view to_string(ValidationErrorKind kind);

class ValidationError : public Error {
 public:
  ValidationError(ValidationErrorKind kind, const std::string& message)
      : Error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}
  ValidationErrorKind kind() const { return kind_; }

 private:
  ValidationErrorKind kind_;
};

/// A shortcut that passed validate_shortcut, plus the inferred kind of each
/// argument. Only validate_shortcut creates one.
class ValidatedShortcut {
 public:
  const Shortcut& shortcut() const { return shortcut_; }
  ParamKind argument_kind(std::string_view argument) const;

 private:
  friend ValidatedShortcut validate_shortcut(Shortcut candidate);
  ValidatedShortcut(Shortcut shortcut, std::vector<ParamKind> kinds)
      : shortcut_(std::move(shortcut)), kinds_(std::move(kinds)) {}
  Shortcut shortcut_;
  std::vector<ParamKind> kinds_;  // parallel to shortcut_.arguments
};

/// Throws ValidationError for the first violated rule. An argument may feed
/// several slots as long as their kinds agree. Semantic sufficiency (does the
/// sequence actually achieve the description?) is not checked.
ValidatedShortcut validate_shortcut(Shortcut candidate);

/// Validates every stored shortcut; the error message names the shortcut.
void validate_memory(const LongTermMemory& memory);

class BindingError : public Error {
 public:
  BindingError(std::string argument, const std::string& message)
      : Error(argument + ": " + message), argument_(std::move(argument)) {}
  const std::string& argument() const { return argument_; }

 private:
  std::string argument_;
};

/// Substitutes named values into the template sequence. Values must cover
/// the declared arguments exactly, with matching kinds.
std::vector<AtomicOperation> bind_arguments(const ValidatedShortcut& shortcut,
                                            std::span<const std::pair<std::string, ArgValue>> values);

enum class GateMode {
  ModelMediated,    // the Operator already asserted the precondition; always allow
  StrictHeuristic,  // deterministic check used by tests, see gate_precondition
};

struct GateDecision {
  bool allowed = true;
  std::string reason;  // set when denied
};

/// Strict mode denies when the precondition talks about a text input (text
/// input, input box, search bar, search box, text field, input field) and no
/// perceived element is a text field according to simulator ground truth.
GateDecision gate_precondition(const Shortcut& shortcut, const PerceptionResult& perception,
                               std::string_view subgoal, GateMode mode);

struct ShortcutExecution {
  ScreenState final_screen;
  /// One screen per attempted operation. A failed operation contributes the
  /// last screen reached before it.
  std::vector<ScreenState> trace;
  std::optional<std::size_t> failure_index;
  std::string failure;
};

/// Runs `operations` in order with no agent involvement. Stops at the first
/// operation that is out of screen bounds or raises DeviceError. `before` is
/// the screen the sequence starts from.
ShortcutExecution execute_shortcut(Device& device, std::span<const AtomicOperation> operations,
                                   const ScreenState& before);

}  // namespace phoneagent
