#include "phoneagent/core/action.hpp"

#include "phoneagent/core/overloaded.hpp"

#include <array>
#include <limits>
#include <stdexcept>

namespace phoneagent {
namespace {

constexpr std::array<ParamSpec, 1> kOpenAppParams{{{"app_name", ParamKind::Text}}};
constexpr std::array<ParamSpec, 2> kTapParams{{{"x", ParamKind::Integer}, {"y", ParamKind::Integer}}};
constexpr std::array<ParamSpec, 4> kSwipeParams{{{"x1", ParamKind::Integer},
                                                 {"y1", ParamKind::Integer},
                                                 {"x2", ParamKind::Integer},
                                                 {"y2", ParamKind::Integer}}};
constexpr std::array<ParamSpec, 1> kTypeParams{{{"text", ParamKind::Text}}};

// Index order matches the AtomicOperation alternatives.
const std::array<OperationSpec, 9> kSpecs{{
    {"Open_App", kOpenAppParams},
    {"Tap", kTapParams},
    {"Swipe", kSwipeParams},
    {"Type", kTypeParams},
    {"Enter", {}},
    {"Switch_App", {}},
    {"Back", {}},
    {"Home", {}},
    {"Wait", {}},
}};

int as_int(const ArgValue& value) { return static_cast<int>(std::get<std::int64_t>(value)); }
const std::string& as_text(const ArgValue& value) { return std::get<std::string>(value); }

}  // namespace

std::span<const OperationSpec> atomic_operation_specs() { return kSpecs; }

const OperationSpec* find_operation_spec(std::string_view name) {
  for (const auto& spec : kSpecs) {
    if (spec.name == name) return &spec;
  }
  return nullptr;
}

const OperationSpec& operation_spec(const AtomicOperation& operation) {
  return kSpecs[operation.index()];
}

AtomicOperation make_operation(std::string_view name, std::span<const ArgValue> values) {
  const OperationSpec* spec = find_operation_spec(name);
  if (spec == nullptr) throw std::invalid_argument("unknown operation '" + std::string(name) + "'");
  if (values.size() != spec->params.size()) {
    throw std::invalid_argument(std::string(name) + " takes " + std::to_string(spec->params.size()) +
                                " argument(s), got " + std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool want_int = spec->params[i].kind == ParamKind::Integer;
    if (want_int != std::holds_alternative<std::int64_t>(values[i])) {
      throw std::invalid_argument(std::string(name) + " argument '" +
                                  std::string(spec->params[i].name) + "' must be " +
                                  (want_int ? "an integer" : "a string"));
    }
    if (want_int) {
      const auto v = std::get<std::int64_t>(values[i]);
      if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw std::invalid_argument(std::string(name) + " argument '" + std::string(spec->params[i].name) +
                                    "' is out of range");
      }
    }
  }
  if (name == "Open_App") return op::OpenApp{as_text(values[0])};
  if (name == "Tap") return op::Tap{as_int(values[0]), as_int(values[1])};
  if (name == "Swipe") {
    return op::Swipe{as_int(values[0]), as_int(values[1]), as_int(values[2]), as_int(values[3])};
  }
  if (name == "Type") return op::Type{as_text(values[0])};
  if (name == "Enter") return op::Enter{};
  if (name == "Switch_App") return op::SwitchApp{};
  if (name == "Back") return op::Back{};
  if (name == "Home") return op::Home{};
  return op::Wait{};
}

std::vector<ArgValue> operation_arguments(const AtomicOperation& operation) {
  return std::visit(
      Overloaded{
          [](const op::OpenApp& o) { return std::vector<ArgValue>{o.app_name}; },
          [](const op::Tap& o) {
            return std::vector<ArgValue>{std::int64_t{o.x}, std::int64_t{o.y}};
          },
          [](const op::Swipe& o) {
            return std::vector<ArgValue>{std::int64_t{o.x1}, std::int64_t{o.y1},
                                         std::int64_t{o.x2}, std::int64_t{o.y2}};
          },
          [](const op::Type& o) { return std::vector<ArgValue>{o.text}; },
          [](const auto&) { return std::vector<ArgValue>{}; },
      },
      operation);
}

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string to_string(const ArgValue& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  return quote(std::get<std::string>(value));
}

std::string to_string(const AtomicOperation& operation) {
  std::string out(operation_spec(operation).name);
  out += '(';
  const auto args = operation_arguments(operation);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(args[i]);
  }
  out += ')';
  return out;
}

bool in_bounds(const AtomicOperation& operation, int width, int height) {
  auto ok = [&](int x, int y) { return x >= 0 && y >= 0 && x <= width && y <= height; };
  if (const auto* tap = std::get_if<op::Tap>(&operation)) return ok(tap->x, tap->y);
  if (const auto* swipe = std::get_if<op::Swipe>(&operation)) {
    return ok(swipe->x1, swipe->y1) && ok(swipe->x2, swipe->y2);
  }
  return true;
}

std::string to_string(const Action& action) {
  return std::visit(Overloaded{
                        [](const AtomicOperation& o) { return to_string(o); },
                        [](const ShortcutCall& call) {
                          std::string out = call.name + "(";
                          for (std::size_t i = 0; i < call.arguments.size(); ++i) {
                            if (i > 0) out += ", ";
                            out += call.arguments[i].first + "=" + to_string(call.arguments[i].second);
                          }
                          return out + ")";
                        },
                        [](const Stop& stop) { return "Stop(" + quote(stop.message) + ")"; },
                    },
                    action);
}

bool is_repeat_exempt(const Action& action) {
  const auto* atomic = std::get_if<AtomicOperation>(&action);
  return atomic != nullptr &&
         (std::holds_alternative<op::Swipe>(*atomic) || std::holds_alternative<op::Back>(*atomic));
}

}  // namespace phoneagent
