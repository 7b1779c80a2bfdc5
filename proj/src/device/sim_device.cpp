#include "phoneagent/device/sim_device.hpp"

#include <algorithm>

#include "phoneagent/core/overloaded.hpp"
#include "phoneagent/device/render.hpp"

namespace phoneagent {

SimDevice::SimDevice(std::shared_ptr<const AppGraph> graph, SimOptions options)
    : graph_(std::move(graph)), options_(options) {
  for (const auto& page : graph_->pages) {
    for (const auto& e : page.elements) {
      if (e.kind == ElementKind::TextField) state_.fields.try_emplace(e.id, e.content);
    }
  }
  enter_page(graph_->home);
  fire_popups();
}

void SimDevice::enter_page(const std::string& page) {
  state_.page = page;
  state_.focused_field.clear();
  const std::string& app = graph_->page(page).app;
  if (app.empty()) return;
  state_.app_last_page[app] = page;
  auto& recent = state_.recent_apps;
  recent.erase(std::remove(recent.begin(), recent.end(), app), recent.end());
  recent.push_back(app);
}

void SimDevice::navigate(const std::string& page) {
  state_.back_stack.push_back(state_.page);
  enter_page(page);
}

void SimDevice::open_app(const std::string& app) {
  const AppInfo* info = graph_->find_app(app);
  if (info == nullptr) return;
  auto it = state_.app_last_page.find(app);
  navigate(it == state_.app_last_page.end() ? info->entry : it->second);
}

std::vector<GraphElement> SimDevice::switcher_elements() const {
  std::vector<GraphElement> cards;
  const int w = graph_->width;
  const int h = graph_->height;
  int slot = 0;
  for (auto it = state_.recent_apps.rbegin(); it != state_.recent_apps.rend(); ++it, ++slot) {
    Box box{w / 10, h / 8 + slot * (h / 5), w * 8 / 10, h * 17 / 100};
    if (!box.within(w, h)) break;
    GraphElement card;
    card.id = "switcher." + *it;
    card.kind = ElementKind::ListItem;
    card.label = *it;
    card.box = box;
    card.opens = *it;
    cards.push_back(std::move(card));
  }
  return cards;
}

void SimDevice::fire_popups() {
  if (!state_.overlay.empty()) return;
  for (std::size_t i = 0; i < graph_->popups.size(); ++i) {
    const auto& rule = graph_->popups[i];
    if (state_.fired_popups.contains(i) || rule.page != state_.page || state_.steps < rule.after_steps) {
      continue;
    }
    state_.overlay = rule.overlay;
    state_.fired_popups.insert(i);
    return;
  }
}

void SimDevice::apply(const AtomicOperation& operation) {
  const GraphPage& page = graph_->page(state_.page);
  const bool loading = !page.loads_to.empty();
  const bool overlay = !state_.overlay.empty();
  const bool on_switcher = state_.page == kSwitcherPage;

  std::visit(
      Overloaded{
          [&](const op::OpenApp& o) {
            if (!overlay && (state_.page == graph_->home || on_switcher)) open_app(o.app_name);
          },
          [&](const op::Tap& o) {
            const Point p{o.x, o.y};
            if (overlay) {
              const GraphElement* hit = graph_->page(state_.overlay).hit_test(p);
              if (hit != nullptr && hit->dismiss) state_.overlay.clear();
              return;
            }
            if (loading) return;
            if (on_switcher) {
              for (const auto& card : switcher_elements()) {
                if (card.box.contains(p)) {
                  const AppInfo* info = graph_->find_app(card.opens);
                  auto last = state_.app_last_page.find(card.opens);
                  enter_page(last != state_.app_last_page.end() ? last->second : info->entry);
                  return;
                }
              }
              return;
            }
            const GraphElement* hit = page.hit_test(p);
            if (hit == nullptr) return;
            if (!hit->clears.empty()) {
              state_.fields[hit->clears].clear();
              state_.focused_field = hit->clears;
            }
            if (hit->kind == ElementKind::TextField) state_.focused_field = hit->id;
            if (const Transition* t = graph_->find_tap(state_.page, hit->id)) {
              navigate(t->to);
            } else if (!hit->opens.empty()) {
              open_app(hit->opens);
            }
          },
          [&](const op::Swipe& o) {
            if (overlay || loading) return;
            const auto direction = classify_swipe(o.x1, o.y1, o.x2, o.y2);
            if (!direction) return;
            if (const Transition* t = graph_->find_swipe(state_.page, *direction)) navigate(t->to);
          },
          [&](const op::Type& o) {
            if (overlay || loading || state_.focused_field.empty()) return;
            state_.fields[state_.focused_field] += o.text;
          },
          [&](const op::Enter&) {
            if (overlay || loading || state_.focused_field.empty()) return;
            const std::string& text = state_.fields[state_.focused_field];
            if (const Transition* t = graph_->find_enter(state_.page, state_.focused_field, text)) {
              navigate(t->to);
            }
          },
          [&](const op::SwitchApp&) {
            state_.overlay.clear();
            if (!on_switcher) navigate(std::string(kSwitcherPage));
          },
          [&](const op::Back&) {
            if (overlay) {
              state_.overlay.clear();
              return;
            }
            if (const Transition* t = graph_->find_back(state_.page)) {
              enter_page(t->to);
            } else if (!state_.back_stack.empty()) {
              std::string previous = std::move(state_.back_stack.back());
              state_.back_stack.pop_back();
              enter_page(previous);
            }
          },
          [&](const op::Home&) {
            state_.overlay.clear();
            state_.back_stack.clear();
            enter_page(graph_->home);
          },
          [&](const op::Wait&) {
            if (loading) enter_page(page.loads_to);
          },
      },
      operation);
}

ScreenState SimDevice::execute(const AtomicOperation& operation) {
  apply(operation);
  ++state_.steps;
  fire_popups();
  return capture();
}

SimTruth SimDevice::truth() const {
  SimTruth truth;
  truth.page = state_.page;
  truth.overlay = state_.overlay;
  auto add = [&](const GraphElement& e, bool on_overlay) {
    SimElement out;
    out.id = e.id;
    out.kind = e.kind;
    out.label = e.label;
    out.box = e.box;
    out.content = e.content;
    if (e.kind == ElementKind::TextField) {
      auto it = state_.fields.find(e.id);
      if (it != state_.fields.end()) out.content = it->second;
      out.focused = !on_overlay && state_.overlay.empty() && e.id == state_.focused_field;
    }
    truth.elements.push_back(std::move(out));
  };
  if (state_.page == kSwitcherPage) {
    for (const auto& card : switcher_elements()) add(card, false);
  } else {
    for (const auto& e : graph_->page(state_.page).elements) add(e, false);
  }
  if (!state_.overlay.empty()) {
    for (const auto& e : graph_->page(state_.overlay).elements) add(e, true);
  }
  return truth;
}

ScreenState SimDevice::capture() {
  ScreenState screen;
  screen.step_index = state_.steps;
  screen.width = graph_->width;
  screen.height = graph_->height;
  screen.sim_truth = truth();
  if (options_.render_images) {
    screen.image = std::make_shared<const ImageBytes>(render_screen(*graph_, *screen.sim_truth));
  } else {
    screen.image = std::shared_ptr<const ImageBytes>();
  }
  return screen;
}

}  // namespace phoneagent
