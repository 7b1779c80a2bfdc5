#include "phoneagent/agents/agents.hpp"

#include <cctype>

#include "phoneagent/agents/action_parser.hpp"
#include "phoneagent/agents/formatting.hpp"
#include "phoneagent/agents/grammar.hpp"
#include "phoneagent/core/errors.hpp"
#include "phoneagent/core/memory_io.hpp"

namespace phoneagent {
namespace {

const std::string& nonempty(const Sections& s, std::string_view label) {
  const std::string& content = s.required(label);
  if (content.empty()) throw ParseError(std::string(label) + " section is empty");
  return content;
}

bool is_none(std::string_view text) {
  std::string t = trim(text);
  for (auto& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  while (!t.empty() && (t.back() == '.' || t.back() == ')')) t.pop_back();
  if (!t.empty() && t.front() == '(') t.erase(0, 1);
  return t.empty() || t == "none" || t == "n/a";
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.emplace_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

// "3. text", "3) text", "- text" or "* text" -> text.
std::optional<std::string> list_item(const std::string& line) {
  std::size_t i = 0;
  while (i < line.size() && line[i] == ' ') ++i;
  const std::size_t digits = i;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
  if (i > digits) {
    if (i < line.size() && (line[i] == '.' || line[i] == ')')) return trim(std::string_view(line).substr(i + 1));
    return std::nullopt;
  }
  if (i + 1 < line.size() && (line[i] == '-' || line[i] == '*') && line[i + 1] == ' ') {
    return trim(std::string_view(line).substr(i + 2));
  }
  return std::nullopt;
}

std::string strip_code_fence(const std::string& text) {
  std::string t = trim(text);
  if (t.rfind("```", 0) != 0) return t;
  const std::size_t first_nl = t.find('\n');
  const std::size_t last = t.rfind("```");
  if (first_nl == std::string::npos || last <= first_nl) return t;
  return trim(std::string_view(t).substr(first_nl + 1, last - first_nl - 1));
}

std::string unquote_name(std::string s) {
  s = trim(s);
  while (!s.empty() && (s.front() == '`' || s.front() == '"' || s.front() == '\'')) s.erase(0, 1);
  while (!s.empty() && (s.back() == '`' || s.back() == '"' || s.back() == '\'')) s.pop_back();
  return s;
}

ModelRequest make_request(const char* caller, std::string text) {
  ModelRequest request;
  request.caller = caller;
  Message message;
  message.role = Role::User;
  message.parts.push_back(TextPart{std::move(text)});
  request.messages.push_back(std::move(message));
  return request;
}

std::string complete(const AgentContext& ctx, const ModelRequest& request) {
  return ctx.backend.complete(request);
}

}  // namespace

MemoryView MemoryView::of(const LongTermMemory& memory) {
  MemoryView view;
  for (const auto& t : memory.tips()) view.tips.push_back(t.tip);
  for (const auto& s : memory.shortcuts()) view.shortcuts.push_back(s.shortcut);
  return view;
}

// --- Manager ---------------------------------------------------------------

std::string format_manager_output(const ManagerOutput& v) {
  std::vector<std::pair<std::string, std::string>> s;
  if (!v.thought.empty()) s.emplace_back("THOUGHT", v.thought);
  s.emplace_back("PLAN", v.plan);
  s.emplace_back("SUBGOAL", v.subgoal);
  return format_sections(s);
}

ManagerOutput parse_manager_output(std::string_view text) {
  const auto s = Sections::parse(text, {"THOUGHT", "PLAN", "SUBGOAL"});
  return {s.optional("THOUGHT"), nonempty(s, "PLAN"), nonempty(s, "SUBGOAL")};
}

// --- Operator --------------------------------------------------------------

std::string format_operator_output(const OperatorOutput& v) {
  std::vector<std::pair<std::string, std::string>> s;
  if (!v.thought.empty()) s.emplace_back("THOUGHT", v.thought);
  s.emplace_back("ACTION", to_string(v.action));
  if (!v.expectation.empty()) s.emplace_back("EXPECTATION", v.expectation);
  return format_sections(s);
}

OperatorOutput parse_operator_output(std::string_view text, const LongTermMemory& memory) {
  const auto s = Sections::parse(text, {"THOUGHT", "ACTION", "EXPECTATION"});
  OperatorOutput out;
  out.thought = s.optional("THOUGHT");
  out.action = parse_action(nonempty(s, "ACTION"), memory);
  out.expectation = s.optional("EXPECTATION");
  return out;
}

// --- Reflector -------------------------------------------------------------

std::string format_reflector_output(const ReflectorOutput& v) {
  std::vector<std::pair<std::string, std::string>> s;
  s.emplace_back("OUTCOME", std::string(to_string(v.outcome)));
  if (v.outcome == Outcome::A) {
    s.emplace_back("PROGRESS", v.progress);
  } else {
    s.emplace_back("ERROR_DESCRIPTION", v.error_description);
    s.emplace_back("SUSPECTED_CAUSE", v.suspected_cause);
    s.emplace_back("SUGGESTED_FIX", v.suggested_fix);
  }
  return format_sections(s);
}

ReflectorOutput parse_reflector_output(std::string_view text) {
  const auto s = Sections::parse(
      text, {"OUTCOME", "PROGRESS", "ERROR_DESCRIPTION", "SUSPECTED_CAUSE", "SUGGESTED_FIX"});
  const std::string& verdict = nonempty(s, "OUTCOME");
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(verdict.front())));
  const bool separated = verdict.size() == 1 || !std::isalnum(static_cast<unsigned char>(verdict[1]));
  const auto outcome = separated ? parse_outcome(std::string(1, letter)) : std::nullopt;
  if (!outcome) throw ParseError("OUTCOME must be A, B or C, got '" + verdict + "'");

  ReflectorOutput out;
  out.outcome = *outcome;
  if (*outcome == Outcome::A) {
    out.progress = s.required("PROGRESS");
  } else {
    out.error_description = nonempty(s, "ERROR_DESCRIPTION");
    out.suspected_cause = nonempty(s, "SUSPECTED_CAUSE");
    out.suggested_fix = nonempty(s, "SUGGESTED_FIX");
  }
  return out;
}

// --- Notetaker -------------------------------------------------------------

std::string format_notetaker_output(const NotetakerOutput& v) { return format_sections({{"NOTES", v.notes}}); }

NotetakerOutput parse_notetaker_output(std::string_view text) {
  const auto s = Sections::parse(text, {"NOTES"});
  return {s.required("NOTES")};
}

// --- Experience reflectors -------------------------------------------------

std::string format_tip_reflector_output(const TipReflectorOutput& v) {
  std::string list;
  for (std::size_t i = 0; i < v.tips.size(); ++i) {
    list += indent_continuation(std::to_string(i + 1) + ". " + v.tips[i]);
    if (i + 1 < v.tips.size()) list += '\n';
  }
  return format_sections({{"TIPS", v.tips.empty() ? "none" : list}});
}

TipReflectorOutput parse_tip_reflector_output(std::string_view text) {
  const auto s = Sections::parse(text, {"TIPS"});
  const std::string& content = s.required("TIPS");
  TipReflectorOutput out;
  if (is_none(content)) return out;
  for (const auto& line : split_lines(content)) {
    if (auto item = list_item(line)) {
      out.tips.push_back(std::move(*item));
    } else if (!trim(line).empty()) {
      if (out.tips.empty()) throw ParseError("TIPS must be a numbered list");
      out.tips.back() += '\n' + (line.rfind("  ", 0) == 0 ? line.substr(2) : line);
    }
  }
  for (auto& tip : out.tips) tip = trim(tip);
  std::erase_if(out.tips, [](const std::string& t) { return t.empty(); });
  return out;
}

std::string format_shortcut_reflector_output(const ShortcutReflectorOutput& v) {
  Json array = Json::array();
  for (const auto& p : v.proposals) array.push_back(p);
  return format_sections({{"SHORTCUTS", array.dump(2)}});
}

ShortcutReflectorOutput parse_shortcut_reflector_output(std::string_view text) {
  const auto s = Sections::parse(text, {"SHORTCUTS"});
  const std::string content = strip_code_fence(s.required("SHORTCUTS"));
  ShortcutReflectorOutput out;
  if (is_none(content)) return out;
  Json parsed = Json::parse(content, nullptr, false);
  if (parsed.is_discarded()) throw ParseError("SHORTCUTS is not valid JSON");
  if (parsed.is_object()) {
    out.proposals.push_back(std::move(parsed));
  } else if (parsed.is_array()) {
    for (auto& p : parsed) out.proposals.push_back(std::move(p));
  } else {
    throw ParseError("SHORTCUTS must be a JSON array of shortcut objects");
  }
  return out;
}

// --- Retrievers ------------------------------------------------------------

std::string format_tip_retriever_output(const TipRetrieverOutput& v) {
  std::string ids;
  for (std::size_t i = 0; i < v.tip_ids.size(); ++i) ids += (i > 0 ? ", " : "") + std::to_string(v.tip_ids[i]);
  return format_sections({{"SELECTED_TIPS", v.tip_ids.empty() ? "none" : ids}});
}

TipRetrieverOutput parse_tip_retriever_output(std::string_view text) {
  const auto s = Sections::parse(text, {"SELECTED_TIPS"});
  const std::string& content = s.required("SELECTED_TIPS");
  TipRetrieverOutput out;
  if (is_none(content)) return out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    try {
      std::size_t used = 0;
      const int id = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.tip_ids.push_back(id);
    } catch (const std::logic_error&) {
      throw ParseError("SELECTED_TIPS entry '" + token + "' is not a tip number");
    }
    token.clear();
  };
  for (char c : content) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c != '#') {
      token += c;
    }
  }
  flush();
  return out;
}

std::string format_shortcut_retriever_output(const ShortcutRetrieverOutput& v) {
  std::string names;
  for (std::size_t i = 0; i < v.names.size(); ++i) names += (i > 0 ? ", " : "") + v.names[i];
  return format_sections({{"SELECTED_SHORTCUTS", v.names.empty() ? "none" : names}});
}

ShortcutRetrieverOutput parse_shortcut_retriever_output(std::string_view text) {
  const auto s = Sections::parse(text, {"SELECTED_SHORTCUTS"});
  const std::string& content = s.required("SELECTED_SHORTCUTS");
  ShortcutRetrieverOutput out;
  if (is_none(content)) return out;
  std::string token;
  auto flush = [&] {
    std::string name = unquote_name(token);
    if (auto item = list_item(name)) name = unquote_name(*item);
    if (!name.empty()) out.names.push_back(std::move(name));
    token.clear();
  };
  for (char c : content) {
    if (c == ',' || c == '\n') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return out;
}

// --- Requests and steps ----------------------------------------------------

void append_screen(Message& message, const ScreenState& screen) {
  if (const auto* blob = std::get_if<std::shared_ptr<const ImageBytes>>(&screen.image)) {
    if (!*blob || (*blob)->empty()) return;
  }
  message.parts.push_back(ImagePart{screen.image});
}

ModelRequest build_manager_request(const PromptLibrary& prompts, const ManagerInput& in) {
  const TemplateVars vars{
      {"task", in.task.text},
      {"plan", in.working.plan},
      {"subgoal", in.working.subgoal},
      {"progress", in.working.progress},
      {"notes", in.working.notes},
      {"shortcuts", format_shortcuts(in.memory.shortcuts)},
      {"errors", format_error_history(in.escalation)},
  };
  ModelRequest request = make_request(callers::kManager, prompts.render("manager", vars));
  append_screen(request.messages.back(), in.screen);
  return request;
}

ManagerOutput manager_step(const AgentContext& ctx, const ManagerInput& in) {
  return parse_manager_output(complete(ctx, build_manager_request(ctx.prompts, in)));
}

ModelRequest build_operator_request(const PromptLibrary& prompts, const OperatorInput& in) {
  const HistoryWindow window = history_window(in.working, in.history_window);
  const TemplateVars vars{
      {"task", in.task.text},
      {"width", std::to_string(in.screen.width)},
      {"height", std::to_string(in.screen.height)},
      {"plan", in.working.plan},
      {"subgoal", in.working.subgoal},
      {"progress", in.working.progress},
      {"notes", in.working.notes},
      {"perception", format_perception(in.perception)},
      {"actions", format_action_history(window.actions)},
      {"errors", format_error_history(window.errors)},
      {"shortcuts", format_shortcuts(in.memory.shortcuts)},
      {"tips", format_tips(in.memory.tips)},
  };
  ModelRequest request = make_request(callers::kOperator, prompts.render("operator", vars));
  append_screen(request.messages.back(), in.screen);
  return request;
}

OperatorOutput operator_step(const AgentContext& ctx, const OperatorInput& in) {
  return parse_operator_output(complete(ctx, build_operator_request(ctx.prompts, in)), in.shortcuts);
}

ModelRequest build_reflector_request(const PromptLibrary& prompts, const ReflectorInput& in) {
  const TemplateVars vars{
      {"task", in.task.text},
      {"subgoal", in.working.subgoal},
      {"progress", in.working.progress},
      {"action", to_string(in.action)},
      {"expectation", in.expectation},
      {"perception_before", format_perception(in.perception_before)},
      {"perception_after", format_perception(in.perception_after)},
  };
  ModelRequest request = make_request(callers::kReflector, prompts.render("reflector", vars));
  append_screen(request.messages.back(), in.before);
  append_screen(request.messages.back(), in.after);
  return request;
}

ReflectorOutput reflect_action(const AgentContext& ctx, const ReflectorInput& in) {
  return parse_reflector_output(complete(ctx, build_reflector_request(ctx.prompts, in)));
}

ModelRequest build_notetaker_request(const PromptLibrary& prompts, const NotetakerInput& in) {
  const TemplateVars vars{
      {"task", in.task.text},
      {"plan", in.working.plan},
      {"subgoal", in.working.subgoal},
      {"progress", in.working.progress},
      {"notes", in.working.notes},
      {"perception", format_perception(in.perception)},
  };
  ModelRequest request = make_request(callers::kNotetaker, prompts.render("notetaker", vars));
  append_screen(request.messages.back(), in.screen);
  return request;
}

NotetakerOutput take_notes(const AgentContext& ctx, const NotetakerInput& in) {
  return parse_notetaker_output(complete(ctx, build_notetaker_request(ctx.prompts, in)));
}

}  // namespace phoneagent
