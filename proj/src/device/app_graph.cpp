#include "phoneagent/device/app_graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <tuple>

#include "phoneagent/core/errors.hpp"

namespace phoneagent {

const GraphElement* GraphPage::find_element(std::string_view element_id) const {
  for (const auto& e : elements) {
    if (e.id == element_id) return &e;
  }
  return nullptr;
}

const GraphElement* GraphPage::hit_test(Point p) const {
  for (const auto& e : elements) {
    if (e.box.contains(p)) return &e;
  }
  return nullptr;
}

std::string_view to_string(SwipeDirection direction) {
  switch (direction) {
    case SwipeDirection::Up: return "up";
    case SwipeDirection::Down: return "down";
    case SwipeDirection::Left: return "left";
    case SwipeDirection::Right: return "right";
  }
  return "?";
}

std::optional<SwipeDirection> parse_swipe_direction(std::string_view text) {
  if (text == "up") return SwipeDirection::Up;
  if (text == "down") return SwipeDirection::Down;
  if (text == "left") return SwipeDirection::Left;
  if (text == "right") return SwipeDirection::Right;
  return std::nullopt;
}

std::optional<SwipeDirection> classify_swipe(int x1, int y1, int x2, int y2) {
  const int dx = x2 - x1;
  const int dy = y2 - y1;
  if (dx == 0 && dy == 0) return std::nullopt;
  if (std::abs(dx) > std::abs(dy)) return dx > 0 ? SwipeDirection::Right : SwipeDirection::Left;
  return dy > 0 ? SwipeDirection::Down : SwipeDirection::Up;
}

const GraphPage* AppGraph::find_page(std::string_view id) const {
  for (const auto& p : pages) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

const GraphPage& AppGraph::page(std::string_view id) const {
  const GraphPage* p = find_page(id);
  if (p == nullptr) throw std::out_of_range("unknown page '" + std::string(id) + "'");
  return *p;
}

const AppInfo* AppGraph::find_app(std::string_view app_name) const {
  for (const auto& a : apps) {
    if (a.name == app_name) return &a;
  }
  return nullptr;
}

const Transition* AppGraph::find_tap(std::string_view from, std::string_view element) const {
  for (const auto& t : transitions) {
    if (t.trigger == Transition::Trigger::Tap && t.from == from && t.element == element) return &t;
  }
  return nullptr;
}

const Transition* AppGraph::find_enter(std::string_view from, std::string_view field,
                                       std::string_view text) const {
  const Transition* fallback = nullptr;
  for (const auto& t : transitions) {
    if (t.trigger != Transition::Trigger::Enter || t.from != from || t.element != field) continue;
    if (!t.text) {
      fallback = &t;
    } else if (*t.text == text) {
      return &t;
    }
  }
  return fallback;
}

const Transition* AppGraph::find_swipe(std::string_view from, SwipeDirection direction) const {
  for (const auto& t : transitions) {
    if (t.trigger == Transition::Trigger::Swipe && t.from == from && t.direction == direction) {
      return &t;
    }
  }
  return nullptr;
}

const Transition* AppGraph::find_back(std::string_view from) const {
  for (const auto& t : transitions) {
    if (t.trigger == Transition::Trigger::Back && t.from == from) return &t;
  }
  return nullptr;
}

void AppGraph::finalize() {
  if (width <= 0 || height <= 0) throw DecodeError("screen", "width and height must be positive");
  if (find_page(kSwitcherPage) == nullptr) {
    pages.push_back({std::string(kSwitcherPage), "", "Recent apps", {}, ""});
  }

  std::set<std::string, std::less<>> page_ids;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    const auto& p = pages[i];
    const std::string path = fields::index("pages", i);
    if (p.id.empty()) throw DecodeError(fields::join(path, "id"), "page id is empty");
    if (!page_ids.insert(p.id).second) {
      throw DecodeError(fields::join(path, "id"), "duplicate page id '" + p.id + "'");
    }
    std::set<std::string, std::less<>> element_ids;
    for (std::size_t j = 0; j < p.elements.size(); ++j) {
      const auto& e = p.elements[j];
      const std::string epath = fields::index(fields::join(path, "elements"), j);
      if (e.id.empty()) throw DecodeError(fields::join(epath, "id"), "element id is empty");
      if (!element_ids.insert(e.id).second) {
        throw DecodeError(fields::join(epath, "id"), "duplicate element id '" + e.id + "'");
      }
      if (!e.box.within(width, height)) {
        throw DecodeError(fields::join(epath, "box"), "box lies outside the screen");
      }
    }
  }
  if (find_page(home) == nullptr) throw DecodeError("home", "home page '" + home + "' not found");

  for (std::size_t i = 0; i < pages.size(); ++i) {
    const auto& p = pages[i];
    const std::string path = fields::index("pages", i);
    if (!p.loads_to.empty() && find_page(p.loads_to) == nullptr) {
      throw DecodeError(fields::join(path, "loads_to"), "unknown page '" + p.loads_to + "'");
    }
    for (std::size_t j = 0; j < p.elements.size(); ++j) {
      const auto& e = p.elements[j];
      const std::string epath = fields::index(fields::join(path, "elements"), j);
      if (!e.opens.empty() && find_app(e.opens) == nullptr) {
        throw DecodeError(fields::join(epath, "opens"), "unknown app '" + e.opens + "'");
      }
      if (!e.clears.empty()) {
        const GraphElement* target = p.find_element(e.clears);
        if (target == nullptr || target->kind != ElementKind::TextField) {
          throw DecodeError(fields::join(epath, "clears"), "no text field '" + e.clears + "' on page");
        }
      }
    }
  }

  std::set<std::string, std::less<>> app_names;
  for (std::size_t i = 0; i < apps.size(); ++i) {
    const std::string path = fields::index("apps", i);
    if (!app_names.insert(apps[i].name).second) {
      throw DecodeError(fields::join(path, "name"), "duplicate app '" + apps[i].name + "'");
    }
    if (find_page(apps[i].entry) == nullptr) {
      throw DecodeError(fields::join(path, "entry"), "unknown page '" + apps[i].entry + "'");
    }
  }

  using Key = std::tuple<std::string, int, std::string, std::string, int>;
  std::set<Key> keys;
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const auto& t = transitions[i];
    const std::string path = fields::index("transitions", i);
    const GraphPage* from = find_page(t.from);
    if (from == nullptr) throw DecodeError(fields::join(path, "from"), "unknown page '" + t.from + "'");
    if (find_page(t.to) == nullptr) throw DecodeError(fields::join(path, "to"), "unknown page '" + t.to + "'");
    if (t.trigger == Transition::Trigger::Tap || t.trigger == Transition::Trigger::Enter) {
      const GraphElement* e = from->find_element(t.element);
      if (e == nullptr) {
        throw DecodeError(path, "page '" + t.from + "' has no element '" + t.element + "'");
      }
      if (t.trigger == Transition::Trigger::Enter && e->kind != ElementKind::TextField) {
        throw DecodeError(path, "enter trigger on non-text-field '" + t.element + "'");
      }
    }
    const int direction = t.trigger == Transition::Trigger::Swipe ? static_cast<int>(t.direction) : -1;
    Key key{t.from, static_cast<int>(t.trigger), t.element, t.text ? "=" + *t.text : "*", direction};
    if (!keys.insert(key).second) {
      throw DecodeError(path, "transition is not deterministic: duplicate trigger on page '" + t.from + "'");
    }
  }

  for (std::size_t i = 0; i < popups.size(); ++i) {
    const auto& rule = popups[i];
    const std::string path = fields::index("popups", i);
    if (find_page(rule.page) == nullptr) throw DecodeError(fields::join(path, "page"), "unknown page");
    const GraphPage* overlay = find_page(rule.overlay);
    if (overlay == nullptr) throw DecodeError(fields::join(path, "overlay"), "unknown page");
    if (std::none_of(overlay->elements.begin(), overlay->elements.end(),
                     [](const GraphElement& e) { return e.dismiss; })) {
      throw DecodeError(fields::join(path, "overlay"), "overlay has no dismiss element");
    }
    if (rule.after_steps < 0) throw DecodeError(fields::join(path, "after_steps"), "must be >= 0");
  }
}

namespace {

Box box_from_json(const Json& value, const std::string& path) {
  if (!value.is_array() || value.size() != 4) throw DecodeError(path, "expected [x, y, width, height]");
  for (const auto& v : value) {
    if (!v.is_number_integer()) throw DecodeError(path, "box entries must be integers");
  }
  return {value[0].get<int>(), value[1].get<int>(), value[2].get<int>(), value[3].get<int>()};
}

std::vector<std::string> from_pages(const Json& t, const std::string& path) {
  const Json& from = fields::required(t, "from", path);
  if (from.is_string()) return {from.get<std::string>()};
  std::vector<std::string> out;
  fields::array(from, fields::join(path, "from"));
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (!from[i].is_string()) throw DecodeError(fields::index(fields::join(path, "from"), i), "expected a string");
    out.push_back(from[i].get<std::string>());
  }
  return out;
}

}  // namespace

AppGraph app_graph_from_json(const Json& value) {
  fields::object(value, "");
  AppGraph graph;
  graph.name = fields::string_or(value, "name", "", "");
  const Json& screen = fields::required(value, "screen", "");
  graph.width = static_cast<int>(fields::integer(screen, "width", "screen"));
  graph.height = static_cast<int>(fields::integer(screen, "height", "screen"));
  graph.home = fields::string(value, "home", "");

  if (const Json* apps = fields::optional(value, "apps")) {
    fields::array(*apps, "apps");
    for (std::size_t i = 0; i < apps->size(); ++i) {
      const std::string path = fields::index("apps", i);
      graph.apps.push_back({fields::string((*apps)[i], "name", path), fields::string((*apps)[i], "entry", path)});
    }
  }

  const Json& pages = fields::array(fields::required(value, "pages", ""), "pages");
  for (std::size_t i = 0; i < pages.size(); ++i) {
    const std::string path = fields::index("pages", i);
    GraphPage page;
    page.id = fields::string(pages[i], "id", path);
    page.app = fields::string_or(pages[i], "app", path, "");
    page.title = fields::string_or(pages[i], "title", path, "");
    page.loads_to = fields::string_or(pages[i], "loads_to", path, "");
    if (const Json* elements = fields::optional(pages[i], "elements")) {
      const std::string epath_base = fields::join(path, "elements");
      fields::array(*elements, epath_base);
      for (std::size_t j = 0; j < elements->size(); ++j) {
        const Json& e = (*elements)[j];
        const std::string epath = fields::index(epath_base, j);
        GraphElement element;
        element.id = fields::string(e, "id", epath);
        const std::string kind = fields::string(e, "kind", epath);
        const auto parsed = parse_element_kind(kind);
        if (!parsed) throw DecodeError(fields::join(epath, "kind"), "unknown element kind '" + kind + "'");
        element.kind = *parsed;
        element.label = fields::string_or(e, "label", epath, "");
        element.box = box_from_json(fields::required(e, "box", epath), fields::join(epath, "box"));
        element.content = fields::string_or(e, "content", epath, "");
        element.opens = fields::string_or(e, "opens", epath, "");
        element.clears = fields::string_or(e, "clears", epath, "");
        element.dismiss = fields::boolean_or(e, "dismiss", epath, false);
        page.elements.push_back(std::move(element));
      }
    }
    graph.pages.push_back(std::move(page));
  }

  if (const Json* transitions = fields::optional(value, "transitions")) {
    fields::array(*transitions, "transitions");
    for (std::size_t i = 0; i < transitions->size(); ++i) {
      const Json& t = (*transitions)[i];
      const std::string path = fields::index("transitions", i);
      Transition base;
      base.to = fields::string(t, "to", path);
      if (fields::optional(t, "tap")) {
        base.trigger = Transition::Trigger::Tap;
        base.element = fields::string(t, "tap", path);
      } else if (fields::optional(t, "enter")) {
        base.trigger = Transition::Trigger::Enter;
        base.element = fields::string(t, "enter", path);
        if (fields::optional(t, "text")) base.text = fields::string(t, "text", path);
      } else if (fields::optional(t, "swipe")) {
        base.trigger = Transition::Trigger::Swipe;
        const std::string dir = fields::string(t, "swipe", path);
        const auto parsed = parse_swipe_direction(dir);
        if (!parsed) throw DecodeError(fields::join(path, "swipe"), "expected up/down/left/right");
        base.direction = *parsed;
      } else if (fields::optional(t, "back")) {
        base.trigger = Transition::Trigger::Back;
      } else {
        throw DecodeError(path, "transition needs one of tap, enter, swipe, back");
      }
      for (auto& from : from_pages(t, path)) {
        Transition copy = base;
        copy.from = std::move(from);
        graph.transitions.push_back(std::move(copy));
      }
    }
  }

  if (const Json* popups = fields::optional(value, "popups")) {
    fields::array(*popups, "popups");
    for (std::size_t i = 0; i < popups->size(); ++i) {
      const std::string path = fields::index("popups", i);
      graph.popups.push_back({fields::string((*popups)[i], "page", path),
                              static_cast<int>(fields::integer((*popups)[i], "after_steps", path)),
                              fields::string((*popups)[i], "overlay", path)});
    }
  }

  graph.finalize();
  return graph;
}

Json app_graph_to_json(const AppGraph& graph) {
  Json out = Json::object();
  out["name"] = graph.name;
  out["screen"] = {{"width", graph.width}, {"height", graph.height}};
  out["home"] = graph.home;
  Json apps = Json::array();
  for (const auto& a : graph.apps) apps.push_back({{"name", a.name}, {"entry", a.entry}});
  out["apps"] = std::move(apps);
  Json pages = Json::array();
  for (const auto& p : graph.pages) {
    if (p.id == kSwitcherPage) continue;
    Json page = Json::object();
    page["id"] = p.id;
    if (!p.app.empty()) page["app"] = p.app;
    if (!p.title.empty()) page["title"] = p.title;
    if (!p.loads_to.empty()) page["loads_to"] = p.loads_to;
    Json elements = Json::array();
    for (const auto& e : p.elements) {
      Json element = Json::object();
      element["id"] = e.id;
      element["kind"] = std::string(to_string(e.kind));
      element["label"] = e.label;
      element["box"] = {e.box.x, e.box.y, e.box.width, e.box.height};
      if (!e.content.empty()) element["content"] = e.content;
      if (!e.opens.empty()) element["opens"] = e.opens;
      if (!e.clears.empty()) element["clears"] = e.clears;
      if (e.dismiss) element["dismiss"] = true;
      elements.push_back(std::move(element));
    }
    page["elements"] = std::move(elements);
    pages.push_back(std::move(page));
  }
  out["pages"] = std::move(pages);
  Json transitions = Json::array();
  for (const auto& t : graph.transitions) {
    Json entry = Json::object();
    entry["from"] = t.from;
    switch (t.trigger) {
      case Transition::Trigger::Tap: entry["tap"] = t.element; break;
      case Transition::Trigger::Enter:
        entry["enter"] = t.element;
        if (t.text) entry["text"] = *t.text;
        break;
      case Transition::Trigger::Swipe: entry["swipe"] = std::string(to_string(t.direction)); break;
      case Transition::Trigger::Back: entry["back"] = true; break;
    }
    entry["to"] = t.to;
    transitions.push_back(std::move(entry));
  }
  out["transitions"] = std::move(transitions);
  Json popups = Json::array();
  for (const auto& rule : graph.popups) {
    popups.push_back({{"page", rule.page}, {"after_steps", rule.after_steps}, {"overlay", rule.overlay}});
  }
  out["popups"] = std::move(popups);
  return out;
}

AppGraph load_app_graph(const std::filesystem::path& path) {
  return app_graph_from_json(read_json_file(path));
}

}  // namespace phoneagent
