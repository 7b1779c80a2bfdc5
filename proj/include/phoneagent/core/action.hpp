#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace phoneagent {

struct Point {
  int x = 0;
  int y = 0;
  bool operator==(const Point&) const = default;
};

/// Axis-aligned rectangle in screen pixels. A point on the right or bottom
/// edge is outside.
struct Box {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  bool contains(Point p) const {
    return p.x >= x && p.y >= y && p.x < x + width && p.y < y + height;
  }
  Point center() const { return {x + width / 2, y + height / 2}; }
  bool within(int screen_width, int screen_height) const {
    return x >= 0 && y >= 0 && width > 0 && height > 0 &&
           x + width <= screen_width && y + height <= screen_height;
  }
  bool operator==(const Box&) const = default;
};

namespace op {
struct OpenApp {
  std::string app_name;
  bool operator==(const OpenApp&) const = default;
};
struct Tap {
  int x = 0;
  int y = 0;
  bool operator==(const Tap&) const = default;
};
struct Swipe {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;
  bool operator==(const Swipe&) const = default;
};
struct Type {
  std::string text;
  bool operator==(const Type&) const = default;
};
struct Enter {
  bool operator==(const Enter&) const = default;
};
struct SwitchApp {
  bool operator==(const SwitchApp&) const = default;
};
struct Back {
  bool operator==(const Back&) const = default;
};
struct Home {
  bool operator==(const Home&) const = default;
};
struct Wait {
  bool operator==(const Wait&) const = default;
};
}  // namespace op

/// The nine primitive device interactions.
using AtomicOperation = std::variant<op::OpenApp, op::Tap, op::Swipe, op::Type, op::Enter,
                                     op::SwitchApp, op::Back, op::Home, op::Wait>;
static_assert(std::variant_size_v<AtomicOperation> == 9);

/// Bound value of an operation or shortcut parameter.
using ArgValue = std::variant<std::int64_t, std::string>;

enum class ParamKind { Integer, Text };

struct ParamSpec {
  std::string_view name;
  ParamKind kind;
};

/// Name and parameter list of one atomic operation, in call order.
struct OperationSpec {
  std::string_view name;
  std::span<const ParamSpec> params;
};

std::span<const OperationSpec> atomic_operation_specs();
const OperationSpec* find_operation_spec(std::string_view name);
const OperationSpec& operation_spec(const AtomicOperation& operation);

/// Builds an operation from its name and positional values. Throws
/// std::invalid_argument on unknown names, wrong arity or wrong kinds.
AtomicOperation make_operation(std::string_view name, std::span<const ArgValue> values);

/// Positional parameter values of `operation`, in spec order.
std::vector<ArgValue> operation_arguments(const AtomicOperation& operation);

/// Call-expression form, e.g. `Tap(540, 1230)` or `Type("oled tv")`.
std::string to_string(const AtomicOperation& operation);

/// True when every coordinate lies in [0,width]x[0,height].
bool in_bounds(const AtomicOperation& operation, int width, int height);

/// Invocation of a stored shortcut, arguments keyed by declared name and kept
/// in declaration order.
struct ShortcutCall {
  std::string name;
  std::vector<std::pair<std::string, ArgValue>> arguments;
  bool operator==(const ShortcutCall&) const = default;
};

/// Operator decision to end the task.
struct Stop {
  std::string message;
  bool operator==(const Stop&) const = default;
};

using Action = std::variant<AtomicOperation, ShortcutCall, Stop>;

std::string to_string(const Action& action);
std::string to_string(const ArgValue& value);

/// Swipe and Back never count toward the repeated-action limit.
bool is_repeat_exempt(const Action& action);

/// Double-quoted literal with `\"`, `\\` and `\n` escapes.
std::string quote(std::string_view text);

}  // namespace phoneagent
