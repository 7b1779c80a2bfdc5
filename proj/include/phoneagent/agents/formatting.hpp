#pragma once

#include <span>
#include <string>

#include "phoneagent/core/memory.hpp"
#include "phoneagent/core/screen.hpp"

namespace phoneagent {

// Prompt fragments. Each record starts a line with a fixed prefix and
// continuation lines are indented, so records can be counted by prefix:
//   action history  "- Step N: "
//   error history   "- Error at step N: "
//   tips            "N. "
//   shortcuts       "- Shortcut "
//   future tasks    "- Task: "

std::string format_action_history(std::span<const ActionRecord> actions);
std::string format_error_history(std::span<const ErrorRecord> errors);
std::string format_tips(std::span<const Tip> tips);
std::string format_shortcuts(std::span<const Shortcut> shortcuts);
std::string format_task_list(std::span<const TaskQuery> tasks);

/// `Tap(x=x, y=y) -> Type(text=text) -> Enter` with argument references bare
/// and literals quoted.
std::string format_sequence(const Shortcut& shortcut);

/// Indents every line after the first by two spaces.
std::string indent_continuation(const std::string& text);

}  // namespace phoneagent
