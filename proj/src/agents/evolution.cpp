#include "phoneagent/agents/evolution.hpp"

#include "phoneagent/agents/formatting.hpp"
#include "phoneagent/core/errors.hpp"
#include "phoneagent/core/log.hpp"
#include "phoneagent/core/memory_io.hpp"
#include "phoneagent/shortcut/engine.hpp"

namespace phoneagent {
namespace {

TemplateVars common_vars(const EvolutionInput& in) {
  return {
      {"task", in.task.text},
      {"plan", in.working.plan},
      {"progress", in.working.progress},
      {"actions", format_action_history(in.working.actions())},
      {"errors", format_error_history(in.working.errors())},
      {"future_tasks", format_task_list(in.future_tasks)},
  };
}

ModelRequest text_request(const char* caller, std::string text) {
  ModelRequest request;
  request.caller = caller;
  request.messages.push_back({Role::User, {TextPart{std::move(text)}}});
  return request;
}

void note(EvolutionReport& report, std::string message) {
  warn(message);
  report.warnings.push_back(std::move(message));
}

}  // namespace

ModelRequest build_tip_reflector_request(const PromptLibrary& prompts, const EvolutionInput& in,
                                         const LongTermMemory& memory) {
  TemplateVars vars = common_vars(in);
  vars["tips"] = format_tips(MemoryView::of(memory).tips);
  return text_request(callers::kTipReflector, prompts.render("tip_reflector", vars));
}

ModelRequest build_shortcut_reflector_request(const PromptLibrary& prompts, const EvolutionInput& in,
                                              const LongTermMemory& memory) {
  TemplateVars vars = common_vars(in);
  vars["shortcuts"] = format_shortcuts(MemoryView::of(memory).shortcuts);
  return text_request(callers::kShortcutReflector, prompts.render("shortcut_reflector", vars));
}

void evolve_tips(const AgentContext& ctx, const EvolutionInput& in, LongTermMemory& memory, EvolutionReport& report) {
  TipReflectorOutput out;
  try {
    out = parse_tip_reflector_output(ctx.backend.complete(build_tip_reflector_request(ctx.prompts, in, memory)));
  } catch (const ParseError& e) {
    note(report, std::string("tip reflector response ignored: ") + e.what());
    return;
  } catch (const TransportError& e) {
    note(report, std::string("tip reflector unavailable: ") + e.what());
    return;
  }
  if (out.tips.empty()) {
    note(report, "tip reflector returned no tips; keeping the current list");
    return;
  }
  std::vector<std::pair<std::string, Provenance>> updated;
  for (auto& text : out.tips) {
    Provenance provenance = Provenance::evolved(in.task.id);
    for (const auto& existing : memory.tips()) {
      if (existing.tip.text == text) {
        provenance = existing.provenance;
        break;
      }
    }
    updated.emplace_back(std::move(text), std::move(provenance));
  }
  memory.replace_tips(std::move(updated));
  report.tips_updated = true;
}

void evolve_shortcuts(const AgentContext& ctx, const EvolutionInput& in, LongTermMemory& memory,
                      EvolutionReport& report) {
  ShortcutReflectorOutput out;
  try {
    out = parse_shortcut_reflector_output(
        ctx.backend.complete(build_shortcut_reflector_request(ctx.prompts, in, memory)));
  } catch (const ParseError& e) {
    note(report, std::string("shortcut reflector response ignored: ") + e.what());
    return;
  } catch (const TransportError& e) {
    note(report, std::string("shortcut reflector unavailable: ") + e.what());
    return;
  }

  for (std::size_t i = 0; i < out.proposals.size(); ++i) {
    const Json& proposal = out.proposals[i];
    ShortcutRejection rejection;
    rejection.proposal = proposal;
    if (proposal.is_object() && proposal.contains("name") && proposal["name"].is_string()) {
      rejection.name = proposal["name"].get<std::string>();
    }
    try {
      ValidatedShortcut validated = validate_shortcut(shortcut_from_json(proposal, fields::index("shortcuts", i)));
      if (memory.add_shortcut(validated.shortcut(), Provenance::evolved(in.task.id))) {
        report.admitted_shortcuts.push_back(validated.shortcut().name);
        continue;
      }
      rejection.error_class = "duplicate_name";
      rejection.message = "a shortcut named " + rejection.name + " already exists";
    } catch (const DecodeError& e) {
      rejection.error_class = "decode";
      rejection.message = e.what();
    } catch (const ValidationError& e) {
      rejection.error_class = std::string(to_string(e.kind()));
      rejection.message = e.what();
    }
    note(report, "rejected shortcut proposal " + (rejection.name.empty() ? "#" + std::to_string(i) : rejection.name) +
                     ": " + rejection.message);
    report.rejected_shortcuts.push_back(std::move(rejection));
  }
  if (!out.proposals.empty() && report.admitted_shortcuts.empty()) {
    note(report, "no proposed shortcut was admitted; shortcut memory unchanged");
  }
}

EvolutionReport evolve_memory(const AgentContext& ctx, const EvolutionInput& in, LongTermMemory& memory) {
  EvolutionReport report;
  evolve_tips(ctx, in, memory, report);
  evolve_shortcuts(ctx, in, memory, report);
  return report;
}

Json evolution_report_to_json(const EvolutionReport& report) {
  Json rejected = Json::array();
  for (const auto& r : report.rejected_shortcuts) {
    rejected.push_back({{"name", r.name}, {"error_class", r.error_class}, {"message", r.message}, {"proposal", r.proposal}});
  }
  Json out = Json::object();
  out["tips_updated"] = report.tips_updated;
  out["admitted_shortcuts"] = report.admitted_shortcuts;
  out["rejected_shortcuts"] = std::move(rejected);
  out["warnings"] = report.warnings;
  return out;
}

}  // namespace phoneagent
