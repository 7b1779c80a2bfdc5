#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phoneagent {

/// A response split into labeled sections:
///
///   PLAN: 1. open Shop
///   2. search
///   SUBGOAL: open Shop
///
/// A section runs until the next line that starts with a known label. Labels
/// match case-insensitively and may be wrapped in markdown emphasis
/// (`**Plan:**`, `### PLAN:`). Text before the first label is ignored.
/// Content is trimmed. A content line that would itself read as a label is
/// written with a leading backslash, which parsing removes.
class Sections {
 public:
  struct Entry {
    std::string label;  // canonical upper-case form
    std::string content;
  };

  /// Throws ParseError on a repeated label.
  static Sections parse(std::string_view text, std::initializer_list<std::string_view> labels);

  const std::vector<Entry>& entries() const { return entries_; }
  const std::string* find(std::string_view label) const;
  /// Throws ParseError naming the missing label.
  const std::string& required(std::string_view label) const;
  std::string optional(std::string_view label) const;

 private:
  std::vector<Entry> entries_;
};

/// Inverse of Sections::parse for the given (label, content) pairs; empty
/// optional contents are omitted by the caller, not here.
std::string format_sections(const std::vector<std::pair<std::string, std::string>>& sections);

std::string trim(std::string_view text);

}  // namespace phoneagent
