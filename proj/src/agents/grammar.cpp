#include "phoneagent/agents/grammar.hpp"

#include <algorithm>
#include <cctype>

#include "phoneagent/core/errors.hpp"

namespace phoneagent {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string upper(std::string_view s) {
  std::string out;
  for (char c : s) out += c == ' ' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// If `line` starts with a label, returns (canonical label, rest of line).
std::optional<std::pair<std::string, std::string>> label_of(std::string_view line) {
  std::size_t i = 0;
  auto skip = [&](auto pred) {
    while (i < line.size() && pred(line[i])) ++i;
  };
  skip(is_space);
  skip([](char c) { return c == '#' || c == '*'; });
  skip(is_space);
  const std::size_t start = i;
  skip([](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ' '; });
  std::size_t end = i;
  while (end > start && line[end - 1] == ' ') --end;
  if (end == start) return std::nullopt;
  skip([](char c) { return c == '*'; });
  if (i >= line.size() || line[i] != ':') return std::nullopt;
  ++i;
  skip([](char c) { return c == '*'; });
  return std::make_pair(upper(line.substr(start, end - start)), trim(line.substr(i)));
}

bool known(const std::string& label, std::initializer_list<std::string_view> labels) {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

}  // namespace

std::string trim(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  return std::string(text.substr(b, e - b));
}

Sections Sections::parse(std::string_view text, std::initializer_list<std::string_view> labels) {
  Sections out;
  std::vector<std::string> lines;
  Entry* current = nullptr;
  auto close = [&] {
    if (current == nullptr) return;
    std::string joined;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (i > 0) joined += '\n';
      joined += lines[i];
    }
    current->content = trim(joined);
    lines.clear();
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = nl + 1;

    auto label = label_of(line);
    if (label && known(label->first, labels)) {
      close();
      if (out.find(label->first) != nullptr) throw ParseError("section " + label->first + " appears twice");
      out.entries_.push_back({label->first, {}});
      current = &out.entries_.back();
      lines.push_back(label->second);
      continue;
    }
    if (current == nullptr) continue;
    if (!line.empty() && line.front() == '\\') {
      const std::string_view rest = line.substr(1);
      if (label_of(rest) || (!rest.empty() && rest.front() == '\\')) line = rest;
    }
    lines.emplace_back(line);
  }
  close();
  return out;
}

const std::string* Sections::find(std::string_view label) const {
  for (const auto& e : entries_) {
    if (e.label == label) return &e.content;
  }
  return nullptr;
}

const std::string& Sections::required(std::string_view label) const {
  const std::string* content = find(label);
  if (content == nullptr) throw ParseError("response has no " + std::string(label) + " section");
  return *content;
}

std::string Sections::optional(std::string_view label) const {
  const std::string* content = find(label);
  return content == nullptr ? std::string{} : *content;
}

std::string format_sections(const std::vector<std::pair<std::string, std::string>>& sections) {
  std::string out;
  for (const auto& [label, content] : sections) {
    out += label + ":";
    std::size_t pos = 0;
    bool first = true;
    while (pos <= content.size()) {
      std::size_t nl = content.find('\n', pos);
      if (nl == std::string::npos) nl = content.size();
      const std::string_view line(content.data() + pos, nl - pos);
      pos = nl + 1;
      if (first) {
        first = false;
        // The label line is trimmed and loses emphasis stars on reading, so
        // such a line moves down to start the body instead.
        const bool keeps = trim(line) == line && (line.empty() || line.front() != '*');
        if (keeps) {
          if (!line.empty()) out += " " + std::string(line);
          continue;
        }
      }
      out += '\n';
      // Escape anything that could be read back as a label or an escape.
      if (label_of(line) || (!line.empty() && line.front() == '\\')) out += '\\';
      out += line;
    }
    out += '\n';
  }
  return out;
}

}  // namespace phoneagent
