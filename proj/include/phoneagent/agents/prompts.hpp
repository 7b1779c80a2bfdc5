#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace phoneagent {

using TemplateVars = std::map<std::string, std::string, std::less<>>;

/// Renders `{{name}}` substitutions and `{{#name}}...{{/name}}` blocks, which
/// are kept only when `name` is non-empty. Every referenced name must be
/// present in `vars` (std::invalid_argument otherwise), so a typo in a
/// template fails loudly instead of dropping context.
std::string render_template(std::string_view text, const TemplateVars& vars);

/// Prompt templates by agent name: manager, operator, reflector, notetaker,
/// tip_reflector, shortcut_reflector, tip_retriever, shortcut_retriever.
class PromptLibrary {
 public:
  /// Templates compiled into the binary from data/prompts.
  static PromptLibrary builtin();

  /// Built-ins, with any `<name>.txt` in `dir` replacing the entry of the
  /// same name. Throws NotFoundError when `dir` is not a directory.
  static PromptLibrary with_overrides(const std::filesystem::path& dir);

  /// Throws std::out_of_range for an unknown template name.
  const std::string& get(std::string_view name) const;

  std::string render(std::string_view name, const TemplateVars& vars) const {
    return render_template(get(name), vars);
  }

 private:
  std::map<std::string, std::string, std::less<>> templates_;
};

}  // namespace phoneagent
