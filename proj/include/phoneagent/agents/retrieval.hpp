#pragma once

#include <string>
#include <vector>

#include "phoneagent/agents/agents.hpp"
#include "phoneagent/core/config.hpp"

namespace phoneagent {

struct RetrievalResult {
  MemoryView view;
  bool tips_retrieved = false;       // false: all tips passed through
  bool shortcuts_retrieved = false;  // false: all shortcuts passed through
  std::vector<std::string> warnings;
};

ModelRequest build_tip_retriever_request(const PromptLibrary& prompts, const TaskQuery& task,
                                         const LongTermMemory& memory);
ModelRequest build_shortcut_retriever_request(const PromptLibrary& prompts, const TaskQuery& task,
                                              const LongTermMemory& memory);

/// Selects the memory shown to the agents for `task`. Each retriever runs
/// only when retrieval is enabled and its list is longer than its threshold.
/// Selections keep memory order and original text; ids or names not in
/// memory are dropped with a warning.
RetrievalResult retrieve_memory(const AgentContext& ctx, const TaskQuery& task, const LongTermMemory& memory,
                                const OrchestratorConfig& config);

}  // namespace phoneagent
