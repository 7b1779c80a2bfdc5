#pragma once

#include <span>
#include <string>
#include <vector>

#include "phoneagent/agents/agents.hpp"

namespace phoneagent {

/// End-of-task state handed to the experience reflectors.
struct EvolutionInput {
  const TaskQuery& task;
  const WorkingMemory& working;              // final plan, progress, full histories
  std::span<const TaskQuery> future_tasks;  // may be empty
};

struct ShortcutRejection {
  std::string name;         // empty when the proposal has no readable name
  std::string error_class;  // "decode", "duplicate_name" or a validation kind
  std::string message;
  Json proposal;
};

struct EvolutionReport {
  bool tips_updated = false;
  std::vector<std::string> admitted_shortcuts;
  std::vector<ShortcutRejection> rejected_shortcuts;
  std::vector<std::string> warnings;
};

Json evolution_report_to_json(const EvolutionReport& report);

ModelRequest build_tip_reflector_request(const PromptLibrary& prompts, const EvolutionInput& in,
                                         const LongTermMemory& memory);
ModelRequest build_shortcut_reflector_request(const PromptLibrary& prompts, const EvolutionInput& in,
                                              const LongTermMemory& memory);

/// Replaces the tip list with the reflector's updated list. Tips whose text
/// is unchanged keep their provenance; new text is credited to the task. An
/// empty list or an unusable response leaves the tips unchanged with a
/// warning.
void evolve_tips(const AgentContext& ctx, const EvolutionInput& in, LongTermMemory& memory, EvolutionReport& report);

/// Admits each proposed shortcut that decodes, validates and has a fresh
/// name; every rejection is recorded and warned about.
void evolve_shortcuts(const AgentContext& ctx, const EvolutionInput& in, LongTermMemory& memory,
                      EvolutionReport& report);

/// Tip reflector, then shortcut reflector. Transport and parse failures
/// degrade to warnings; a script miss still propagates.
EvolutionReport evolve_memory(const AgentContext& ctx, const EvolutionInput& in, LongTermMemory& memory);

}  // namespace phoneagent
