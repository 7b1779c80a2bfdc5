#include "phoneagent/agents/retrieval.hpp"

#include <algorithm>

#include "phoneagent/agents/formatting.hpp"
#include "phoneagent/core/log.hpp"

namespace phoneagent {
namespace {

ModelRequest text_request(const char* caller, std::string text) {
  ModelRequest request;
  request.caller = caller;
  request.messages.push_back({Role::User, {TextPart{std::move(text)}}});
  return request;
}

}  // namespace

ModelRequest build_tip_retriever_request(const PromptLibrary& prompts, const TaskQuery& task,
                                         const LongTermMemory& memory) {
  return text_request(callers::kTipRetriever,
                      prompts.render("tip_retriever", {{"task", task.text}, {"tips", format_tips(MemoryView::of(memory).tips)}}));
}

ModelRequest build_shortcut_retriever_request(const PromptLibrary& prompts, const TaskQuery& task,
                                              const LongTermMemory& memory) {
  return text_request(callers::kShortcutRetriever,
                      prompts.render("shortcut_retriever", {{"task", task.text},
                                                            {"shortcuts", format_shortcuts(MemoryView::of(memory).shortcuts)}}));
}

RetrievalResult retrieve_memory(const AgentContext& ctx, const TaskQuery& task, const LongTermMemory& memory,
                                const OrchestratorConfig& config) {
  RetrievalResult result;
  result.view = MemoryView::of(memory);
  auto dropped = [&](std::string message) {
    warn(message);
    result.warnings.push_back(std::move(message));
  };

  if (config.retrieval_enabled && memory.tips().size() > static_cast<std::size_t>(config.retrieval_tip_threshold)) {
    const auto out =
        parse_tip_retriever_output(ctx.backend.complete(build_tip_retriever_request(ctx.prompts, task, memory)));
    for (int id : out.tip_ids) {
      if (memory.find_tip(id) == nullptr) dropped("tip retriever selected unknown tip " + std::to_string(id));
    }
    std::erase_if(result.view.tips, [&](const Tip& t) {
      return std::find(out.tip_ids.begin(), out.tip_ids.end(), t.id) == out.tip_ids.end();
    });
    result.tips_retrieved = true;
  }

  if (config.retrieval_enabled &&
      memory.shortcuts().size() > static_cast<std::size_t>(config.retrieval_shortcut_threshold)) {
    const auto out = parse_shortcut_retriever_output(
        ctx.backend.complete(build_shortcut_retriever_request(ctx.prompts, task, memory)));
    for (const auto& name : out.names) {
      if (memory.find_shortcut(name) == nullptr) dropped("shortcut retriever selected unknown shortcut " + name);
    }
    std::erase_if(result.view.shortcuts, [&](const Shortcut& s) {
      return std::find(out.names.begin(), out.names.end(), s.name) == out.names.end();
    });
    result.shortcuts_retrieved = true;
  }
  return result;
}

}  // namespace phoneagent
