#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "phoneagent/llm/request.hpp"

namespace phoneagent {

inline constexpr const char* kScriptFormat = "phoneagent.script.v1";

/// A canned response. An entry applies to one caller and carries at least one
/// match condition; every condition present must hold.
///   step      the caller's n-th request (1-based)
///   steps     inclusive range [first, last] of such counters
///   contains  substring of request_text()
struct ScriptEntry {
  std::string caller;
  std::optional<int> step;
  std::optional<std::pair<int, int>> steps;
  std::optional<std::string> contains;
  std::string response;
};

class ScriptBook {
 public:
  ScriptBook() = default;
  explicit ScriptBook(std::vector<ScriptEntry> entries);

  void add(ScriptEntry entry);
  const std::vector<ScriptEntry>& entries() const { return entries_; }

  /// The single entry matching (caller, step, text). Throws ScriptMissError
  /// when none or more than one matches.
  const ScriptEntry& lookup(const std::string& caller, int step, const std::string& text) const;

 private:
  std::vector<ScriptEntry> entries_;
};

/// File form: {"format": "phoneagent.script.v1", "entries": [{caller, step |
/// steps | contains, response}, ...]}.
ScriptBook script_from_json(const Json& value);
Json script_to_json(const ScriptBook& book);
ScriptBook load_script(const std::filesystem::path& path);

/// Deterministic backend answering from a ScriptBook. Step counters are per
/// caller and run for the backend's lifetime, so one script can drive a whole
/// multi-task scenario.
class ScriptedBackend final : public ModelBackend {
 public:
  explicit ScriptedBackend(ScriptBook book);
  std::string complete(const ModelRequest& request) override;

  int calls(const std::string& caller) const;

 private:
  ScriptBook book_;
  mutable std::mutex mutex_;
  std::map<std::string, int> counters_;
};

}  // namespace phoneagent
