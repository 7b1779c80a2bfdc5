#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "phoneagent/core/action.hpp"
#include "phoneagent/core/screen.hpp"

namespace phoneagent {

// ---------------------------------------------------------------------------
// Shortcuts and tips

/// Reference from an operation slot to a declared shortcut argument.
struct ArgRef {
  std::string name;
  bool operator==(const ArgRef&) const = default;
};

/// A template slot is either bound to a shortcut argument or fixed.
using SlotValue = std::variant<ArgRef, ArgValue>;

/// One atomic operation inside a shortcut. `slots` maps the operation's
/// parameter names to values, in the order they were written.
struct OperationTemplate {
  std::string operation;
  std::vector<std::pair<std::string, SlotValue>> slots;
  bool operator==(const OperationTemplate&) const = default;
};

struct Shortcut {
  std::string name;
  std::string description;
  std::string precondition;
  std::vector<std::string> arguments;
  std::vector<OperationTemplate> sequence;
  bool operator==(const Shortcut&) const = default;
};

struct Tip {
  int id = 0;
  std::string text;
  bool operator==(const Tip&) const = default;
};

/// Where a long-term memory entry came from.
struct Provenance {
  enum class Origin { Seed, Evolved };
  Origin origin = Origin::Seed;
  std::string task_id;  // set for evolved entries

  static Provenance seed() { return {}; }
  static Provenance evolved(std::string task) { return {Origin::Evolved, std::move(task)}; }
  bool operator==(const Provenance&) const = default;
};

struct StoredShortcut {
  Shortcut shortcut;
  Provenance provenance;
  bool operator==(const StoredShortcut&) const = default;
};

struct StoredTip {
  Tip tip;
  Provenance provenance;
  bool operator==(const StoredTip&) const = default;
};

/// Persistent store of shortcuts and tips shared across tasks. Shortcut names
/// are unique; tips are numbered densely from 1 in list order.
class LongTermMemory {
 public:
  const std::vector<StoredShortcut>& shortcuts() const { return shortcuts_; }
  const std::vector<StoredTip>& tips() const { return tips_; }

  const StoredShortcut* find_shortcut(std::string_view name) const;
  const StoredTip* find_tip(int id) const;

  /// Appends a shortcut. Returns false (and leaves memory unchanged) when the
  /// name is already taken. Validation is the caller's job.
  bool add_shortcut(Shortcut shortcut, Provenance provenance);

  void add_tip(std::string text, Provenance provenance);

  /// Replaces the whole tip list, renumbering 1..n.
  void replace_tips(std::vector<std::pair<std::string, Provenance>> tips);

  bool empty() const { return shortcuts_.empty() && tips_.empty(); }
  bool operator==(const LongTermMemory&) const = default;

 private:
  std::vector<StoredShortcut> shortcuts_;
  std::vector<StoredTip> tips_;
};

// ---------------------------------------------------------------------------
// Working memory

struct ActionRecord {
  int step_index = 0;
  Action action;
  Outcome outcome = Outcome::A;
  std::string expectation;
  bool operator==(const ActionRecord&) const = default;
};

struct ErrorRecord {
  int step_index = 0;
  std::string description;
  std::string suspected_cause;
  std::string suggested_fix;
  bool operator==(const ErrorRecord&) const = default;
};

/// Per-task mutable state. Histories are append-only; the escalation flag is
/// recomputed on every append.
class WorkingMemory {
 public:
  explicit WorkingMemory(int k_escalation = 2);

  std::string plan;
  std::string subgoal;
  std::string progress;
  std::string notes;

  const std::vector<ActionRecord>& actions() const { return actions_; }
  const std::vector<ErrorRecord>& errors() const { return errors_; }
  bool escalation_flag() const { return escalation_flag_; }
  int k_escalation() const { return k_escalation_; }

  /// Appends one reflected action. Outcomes B and C require an error record;
  /// outcome A forbids one. Throws std::invalid_argument otherwise.
  void record(ActionRecord action, std::optional<ErrorRecord> error);

  /// The last k error records, i.e. the escalation payload.
  std::span<const ErrorRecord> escalation_errors() const;

 private:
  int k_escalation_;
  bool escalation_flag_ = false;
  std::vector<ActionRecord> actions_;
  std::vector<ErrorRecord> errors_;
};

struct HistoryWindow {
  std::span<const ActionRecord> actions;
  std::span<const ErrorRecord> errors;
};

/// Last min(m, len) entries of each history, in original order. Throws
/// std::invalid_argument when m < 1.
HistoryWindow history_window(const WorkingMemory& memory, int m);

/// Length of the trailing run of failed outcomes.
int trailing_failures(std::span<const Outcome> outcomes);

}  // namespace phoneagent
