#include "phoneagent/llm/scripted_backend.hpp"

#include <stdexcept>

#include "phoneagent/core/errors.hpp"

namespace phoneagent {
namespace {

bool matches(const ScriptEntry& e, const std::string& caller, int step, const std::string& text) {
  if (e.caller != caller) return false;
  if (e.step && *e.step != step) return false;
  if (e.steps && (step < e.steps->first || step > e.steps->second)) return false;
  if (e.contains && text.find(*e.contains) == std::string::npos) return false;
  return true;
}

void check_entry(const ScriptEntry& e) {
  if (e.caller.empty()) throw std::invalid_argument("script entry has no caller");
  if (!e.step && !e.steps && !e.contains) {
    throw std::invalid_argument("script entry for '" + e.caller + "' has no match condition");
  }
  if (e.step && *e.step < 1) throw std::invalid_argument("script step counters start at 1");
  if (e.steps && (e.steps->first < 1 || e.steps->first > e.steps->second)) {
    throw std::invalid_argument("script step range must satisfy 1 <= first <= last");
  }
}

}  // namespace

ScriptBook::ScriptBook(std::vector<ScriptEntry> entries) {
  for (auto& e : entries) add(std::move(e));
}

void ScriptBook::add(ScriptEntry entry) {
  check_entry(entry);
  entries_.push_back(std::move(entry));
}

const ScriptEntry& ScriptBook::lookup(const std::string& caller, int step, const std::string& text) const {
  const ScriptEntry* found = nullptr;
  std::size_t found_index = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!matches(entries_[i], caller, step, text)) continue;
    if (found != nullptr) {
      throw ScriptMissError(caller, step,
                            "ambiguous script: entries " + std::to_string(found_index) + " and " +
                                std::to_string(i) + " both match " + caller + " step " + std::to_string(step));
    }
    found = &entries_[i];
    found_index = i;
  }
  if (found == nullptr) {
    throw ScriptMissError(caller, step, "no scripted response for " + caller + " step " + std::to_string(step));
  }
  return *found;
}

ScriptBook script_from_json(const Json& value) {
  fields::object(value, "");
  const std::string format = fields::string(value, "format", "");
  if (format != kScriptFormat) throw DecodeError("format", "expected " + std::string(kScriptFormat));
  const Json& entries = fields::array(fields::required(value, "entries", ""), "entries");
  ScriptBook book;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string path = fields::index("entries", i);
    const Json& e = fields::object(entries[i], path);
    ScriptEntry entry;
    entry.caller = fields::string(e, "caller", path);
    entry.response = fields::string(e, "response", path);
    if (fields::optional(e, "step") != nullptr) entry.step = static_cast<int>(fields::integer(e, "step", path));
    if (const Json* steps = fields::optional(e, "steps")) {
      const auto range = fields::int_tuple(*steps, 2, fields::join(path, "steps"));
      entry.steps = std::make_pair(range[0], range[1]);
    }
    if (fields::optional(e, "contains") != nullptr) entry.contains = fields::string(e, "contains", path);
    try {
      book.add(std::move(entry));
    } catch (const std::invalid_argument& err) {
      throw DecodeError(path, err.what());
    }
  }
  return book;
}

Json script_to_json(const ScriptBook& book) {
  Json entries = Json::array();
  for (const auto& e : book.entries()) {
    Json entry = Json::object();
    entry["caller"] = e.caller;
    if (e.step) entry["step"] = *e.step;
    if (e.steps) entry["steps"] = {e.steps->first, e.steps->second};
    if (e.contains) entry["contains"] = *e.contains;
    entry["response"] = e.response;
    entries.push_back(std::move(entry));
  }
  return Json{{"format", kScriptFormat}, {"entries", std::move(entries)}};
}

ScriptBook load_script(const std::filesystem::path& path) { return script_from_json(read_json_file(path)); }

ScriptedBackend::ScriptedBackend(ScriptBook book) : book_(std::move(book)) {}

std::string ScriptedBackend::complete(const ModelRequest& request) {
  int step;
  {
    std::lock_guard lock(mutex_);
    step = ++counters_[request.caller];
  }
  return book_.lookup(request.caller, step, request_text(request)).response;
}

int ScriptedBackend::calls(const std::string& caller) const {
  std::lock_guard lock(mutex_);
  auto it = counters_.find(caller);
  return it == counters_.end() ? 0 : it->second;
}

}  // namespace phoneagent
