#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phoneagent/core/action.hpp"
#include "phoneagent/core/memory.hpp"

namespace phoneagent {

/// Syntactic form of a call expression `Name(arg, ..., key=value)`.
struct CallExpression {
  std::string name;
  std::vector<ArgValue> positional;
  std::vector<std::pair<std::string, ArgValue>> named;
};

/// Values are integers or double-quoted strings with `\"`, `\\`, `\n`, `\t`
/// escapes. Named arguments follow positional ones. Parentheses may be
/// omitted for a call without arguments, and the whole expression may be
/// wrapped in backticks. Throws ParseError.
CallExpression parse_call(std::string_view text);

/// Resolves a call against the atomic operations, `Stop(message)` and the
/// shortcuts in `memory`. Shortcut arguments come back in declaration order;
/// their kinds are checked when binding. Throws ParseError.
Action parse_action(std::string_view text, const LongTermMemory& memory);

}  // namespace phoneagent
