#pragma once

#include <span>
#include <string>
#include <vector>

#include "phoneagent/agents/prompts.hpp"
#include "phoneagent/core/json_fields.hpp"
#include "phoneagent/core/memory.hpp"
#include "phoneagent/llm/request.hpp"
#include "phoneagent/perception/perception.hpp"

namespace phoneagent {

// Caller tags used in model requests, audit file names and scripts.
namespace callers {
inline constexpr const char* kManager = "manager";
inline constexpr const char* kOperator = "operator";
inline constexpr const char* kReflector = "reflector";
inline constexpr const char* kNotetaker = "notetaker";
inline constexpr const char* kTipReflector = "tip_reflector";
inline constexpr const char* kShortcutReflector = "shortcut_reflector";
inline constexpr const char* kTipRetriever = "tip_retriever";
inline constexpr const char* kShortcutRetriever = "shortcut_retriever";
}  // namespace callers

/// The part of long-term memory shown to the agents for one task: everything,
/// or what the retrievers selected.
struct MemoryView {
  std::vector<Tip> tips;
  std::vector<Shortcut> shortcuts;

  static MemoryView of(const LongTermMemory& memory);
};

struct AgentContext {
  ModelBackend& backend;
  const PromptLibrary& prompts;
};

// ---------------------------------------------------------------------------
// Response values. Each has format_* producing a canonical response and
// parse_* accepting it (and looser model output); parse throws ParseError.

struct ManagerOutput {
  std::string thought;
  std::string plan;
  std::string subgoal;
  bool operator==(const ManagerOutput&) const = default;
};

struct OperatorOutput {
  std::string thought;
  Action action;
  std::string expectation;
  bool operator==(const OperatorOutput&) const = default;
};

struct ReflectorOutput {
  Outcome outcome = Outcome::A;
  std::string progress;           // outcome A only
  std::string error_description;  // outcomes B and C
  std::string suspected_cause;
  std::string suggested_fix;
  bool operator==(const ReflectorOutput&) const = default;
};

struct NotetakerOutput {
  std::string notes;
  bool operator==(const NotetakerOutput&) const = default;
};

struct TipReflectorOutput {
  std::vector<std::string> tips;
  bool operator==(const TipReflectorOutput&) const = default;
};

/// Proposals stay raw JSON so that each malformed one can be rejected with
/// its own reason.
struct ShortcutReflectorOutput {
  std::vector<Json> proposals;
  bool operator==(const ShortcutReflectorOutput&) const = default;
};

struct TipRetrieverOutput {
  std::vector<int> tip_ids;
  bool operator==(const TipRetrieverOutput&) const = default;
};

struct ShortcutRetrieverOutput {
  std::vector<std::string> names;
  bool operator==(const ShortcutRetrieverOutput&) const = default;
};

std::string format_manager_output(const ManagerOutput& value);
ManagerOutput parse_manager_output(std::string_view text);

std::string format_operator_output(const OperatorOutput& value);
OperatorOutput parse_operator_output(std::string_view text, const LongTermMemory& memory);

std::string format_reflector_output(const ReflectorOutput& value);
ReflectorOutput parse_reflector_output(std::string_view text);

std::string format_notetaker_output(const NotetakerOutput& value);
NotetakerOutput parse_notetaker_output(std::string_view text);

std::string format_tip_reflector_output(const TipReflectorOutput& value);
TipReflectorOutput parse_tip_reflector_output(std::string_view text);

std::string format_shortcut_reflector_output(const ShortcutReflectorOutput& value);
ShortcutReflectorOutput parse_shortcut_reflector_output(std::string_view text);

std::string format_tip_retriever_output(const TipRetrieverOutput& value);
TipRetrieverOutput parse_tip_retriever_output(std::string_view text);

std::string format_shortcut_retriever_output(const ShortcutRetrieverOutput& value);
ShortcutRetrieverOutput parse_shortcut_retriever_output(std::string_view text);

// ---------------------------------------------------------------------------
// Agent inputs and steps. build_*_request is exposed so prompt contents can
// be asserted without a backend.

struct ManagerInput {
  const TaskQuery& task;
  const ScreenState& screen;
  const WorkingMemory& working;  // plan, subgoal, progress and notes so far
  const MemoryView& memory;
  /// Non-empty exactly when the escalation flag is raised.
  std::span<const ErrorRecord> escalation;
};

/// The Manager sees the screenshot but never the perception list.
ModelRequest build_manager_request(const PromptLibrary& prompts, const ManagerInput& in);
ManagerOutput manager_step(const AgentContext& ctx, const ManagerInput& in);

struct OperatorInput {
  const TaskQuery& task;
  const ScreenState& screen;
  const PerceptionResult& perception;
  const WorkingMemory& working;  // plan and subgoal already updated this step
  const MemoryView& memory;
  const LongTermMemory& shortcuts;  // resolves shortcut names in ACTION
  int history_window = 5;
};

ModelRequest build_operator_request(const PromptLibrary& prompts, const OperatorInput& in);
OperatorOutput operator_step(const AgentContext& ctx, const OperatorInput& in);

struct ReflectorInput {
  const TaskQuery& task;
  const ScreenState& before;
  const PerceptionResult& perception_before;
  const ScreenState& after;
  const PerceptionResult& perception_after;
  const Action& action;
  const std::string& expectation;
  const WorkingMemory& working;  // subgoal and prior progress
};

ModelRequest build_reflector_request(const PromptLibrary& prompts, const ReflectorInput& in);
ReflectorOutput reflect_action(const AgentContext& ctx, const ReflectorInput& in);

struct NotetakerInput {
  const TaskQuery& task;
  const ScreenState& screen;  // after the action
  const PerceptionResult& perception;
  const WorkingMemory& working;  // plan, subgoal, progress (updated) and prior notes
};

ModelRequest build_notetaker_request(const PromptLibrary& prompts, const NotetakerInput& in);
NotetakerOutput take_notes(const AgentContext& ctx, const NotetakerInput& in);

/// Image part for `screen`, or nothing when the screen was not rendered.
void append_screen(Message& message, const ScreenState& screen);

}  // namespace phoneagent
