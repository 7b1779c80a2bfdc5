#include "phoneagent/core/screen.hpp"

#include <array>
#include <fstream>
#include <iterator>
#include <utility>

#include "phoneagent/core/errors.hpp"

namespace phoneagent {
namespace {

template <class Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<Enum, std::string_view>, N>& table,
                           std::string_view text) {
  for (const auto& [value, name] : table) {
    if (name == text) return value;
  }
  return std::nullopt;
}

template <class Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table, Enum value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

constexpr std::array<std::pair<ElementKind, std::string_view>, 5> kElementKinds{{
    {ElementKind::Button, "button"},
    {ElementKind::TextField, "text_field"},
    {ElementKind::ListItem, "list_item"},
    {ElementKind::Icon, "icon"},
    {ElementKind::StaticText, "static_text"},
}};

constexpr std::array<std::pair<Outcome, std::string_view>, 3> kOutcomes{{
    {Outcome::A, "A"},
    {Outcome::B, "B"},
    {Outcome::C, "C"},
}};

constexpr std::array<std::pair<ExitReason, std::string_view>, 5> kExitReasons{{
    {ExitReason::SelfReportedSuccess, "self_reported_success"},
    {ExitReason::MaxIterations, "max_iterations"},
    {ExitReason::MaxConsecutiveErrors, "max_consecutive_errors"},
    {ExitReason::MaxRepeatedActions, "max_repeated_actions"},
    {ExitReason::OtherError, "other_error"},
}};

}  // namespace

std::string_view to_string(ElementKind kind) { return name_of(kElementKinds, kind); }
std::optional<ElementKind> parse_element_kind(std::string_view text) {
  return lookup(kElementKinds, text);
}

std::string_view to_string(Outcome outcome) { return name_of(kOutcomes, outcome); }
std::optional<Outcome> parse_outcome(std::string_view text) { return lookup(kOutcomes, text); }

std::string_view to_string(ExitReason reason) { return name_of(kExitReasons, reason); }
std::optional<ExitReason> parse_exit_reason(std::string_view text) {
  return lookup(kExitReasons, text);
}

ImageBytes read_image(const ImageHandle& handle) {
  if (const auto* blob = std::get_if<std::shared_ptr<const ImageBytes>>(&handle)) {
    return *blob ? **blob : ImageBytes{};
  }
  const auto& path = std::get<std::filesystem::path>(handle);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("image not found: " + path.string());
  return ImageBytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace phoneagent
