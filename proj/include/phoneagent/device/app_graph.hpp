#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phoneagent/core/json_fields.hpp"
#include "phoneagent/core/screen.hpp"

namespace phoneagent {

/// Page id of the built-in app switcher. It belongs to every graph.
inline constexpr std::string_view kSwitcherPage = "system.switcher";

struct GraphElement {
  std::string id;  // same id on several pages = same logical field
  ElementKind kind = ElementKind::StaticText;
  std::string label;
  Box box;
  std::string content;
  std::string opens;   // app launched when tapped
  std::string clears;  // text field emptied (and focused) when tapped
  bool dismiss = false;  // closes the overlay it sits on
};

struct GraphPage {
  std::string id;
  std::string app;  // empty for system pages
  std::string title;
  std::vector<GraphElement> elements;
  std::string loads_to;  // non-empty: pending page, resolved by Wait

  const GraphElement* find_element(std::string_view id) const;
  /// First declared element containing `p`.
  const GraphElement* hit_test(Point p) const;
};

enum class SwipeDirection { Up, Down, Left, Right };
std::string_view to_string(SwipeDirection direction);
std::optional<SwipeDirection> parse_swipe_direction(std::string_view text);

/// Dominant-axis classification; nullopt for a zero-length swipe. Equal
/// magnitudes count as vertical.
std::optional<SwipeDirection> classify_swipe(int x1, int y1, int x2, int y2);

struct Transition {
  enum class Trigger { Tap, Enter, Swipe, Back };
  std::string from;
  Trigger trigger = Trigger::Tap;
  std::string element;                 // Tap: element id; Enter: field id
  std::optional<std::string> text;     // Enter: exact field content required
  SwipeDirection direction = SwipeDirection::Up;
  std::string to;
};

/// Shows `overlay` on top of `page` once the device has executed at least
/// `after_steps` operations while on that page.
struct PopupRule {
  std::string page;
  int after_steps = 0;
  std::string overlay;
};

struct AppInfo {
  std::string name;
  std::string entry;
};

/// Deterministic description of a simulated phone.
class AppGraph {
 public:
  std::string name;
  int width = 0;
  int height = 0;
  std::string home;
  std::vector<AppInfo> apps;
  std::vector<GraphPage> pages;
  std::vector<Transition> transitions;
  std::vector<PopupRule> popups;

  const GraphPage* find_page(std::string_view id) const;
  const GraphPage& page(std::string_view id) const;  // throws std::out_of_range
  const AppInfo* find_app(std::string_view name) const;

  const Transition* find_tap(std::string_view page, std::string_view element) const;
  /// Text-conditioned transitions win over an unconditioned one.
  const Transition* find_enter(std::string_view page, std::string_view field,
                               std::string_view text) const;
  const Transition* find_swipe(std::string_view page, SwipeDirection direction) const;
  const Transition* find_back(std::string_view page) const;

  /// Adds the built-in switcher page when missing and checks every
  /// structural invariant. Throws DecodeError naming the offending entry.
  void finalize();
};

AppGraph app_graph_from_json(const Json& value);
Json app_graph_to_json(const AppGraph& graph);
AppGraph load_app_graph(const std::filesystem::path& path);

}  // namespace phoneagent
