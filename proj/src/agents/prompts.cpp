#include "phoneagent/agents/prompts.hpp"

#include <stdexcept>

#include "phoneagent/core/errors.hpp"
#include "phoneagent/core/json_fields.hpp"

namespace phoneagent {
namespace detail {
const std::map<std::string, std::string>& builtin_prompts();
}

namespace {

const std::string& lookup(const TemplateVars& vars, std::string_view name) {
  auto it = vars.find(name);
  if (it == vars.end()) throw std::invalid_argument("template variable '" + std::string(name) + "' is not set");
  return it->second;
}

}  // namespace

std::string render_template(std::string_view text, const TemplateVars& vars) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t open = text.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, open - pos));
    const std::size_t close = text.find("}}", open + 2);
    if (close == std::string_view::npos) throw std::invalid_argument("unterminated '{{' in template");
    const std::string_view tag = text.substr(open + 2, close - open - 2);
    pos = close + 2;

    if (!tag.empty() && tag.front() == '#') {
      const std::string_view name = tag.substr(1);
      const std::string end_tag = "{{/" + std::string(name) + "}}";
      const std::size_t end = text.find(end_tag, pos);
      if (end == std::string_view::npos) throw std::invalid_argument("block '" + std::string(name) + "' is not closed");
      const bool at_line_start = out.empty() || out.back() == '\n';
      std::string_view inner = text.substr(pos, end - pos);
      // A block tag alone on its line should not leave a blank line behind.
      if (at_line_start && !inner.empty() && inner.front() == '\n') inner.remove_prefix(1);
      if (!lookup(vars, name).empty()) out += render_template(inner, vars);
      pos = end + end_tag.size();
      if (pos < text.size() && text[pos] == '\n' && (out.empty() || out.back() == '\n')) ++pos;
    } else if (!tag.empty() && tag.front() == '/') {
      throw std::invalid_argument("stray closing tag '" + std::string(tag) + "'");
    } else {
      out += lookup(vars, tag);
    }
  }
  return out;
}

PromptLibrary PromptLibrary::builtin() {
  PromptLibrary library;
  for (const auto& [name, text] : detail::builtin_prompts()) library.templates_.emplace(name, text);
  return library;
}

PromptLibrary PromptLibrary::with_overrides(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw NotFoundError("prompt directory not found: " + dir.string());
  PromptLibrary library = builtin();
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".txt") continue;
    library.templates_[entry.path().stem().string()] = read_text_file(entry.path());
  }
  return library;
}

const std::string& PromptLibrary::get(std::string_view name) const {
  auto it = templates_.find(name);
  if (it == templates_.end()) throw std::out_of_range("no prompt template named '" + std::string(name) + "'");
  return it->second;
}

}  // namespace phoneagent
