#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "phoneagent/device/app_graph.hpp"
#include "phoneagent/device/device.hpp"

namespace phoneagent {

/// Complete mutable state of a simulated phone.
struct SimState {
  std::string page;
  std::string overlay;        // active popup page, empty if none
  std::string focused_field;  // element id, empty if none
  std::map<std::string, std::string> fields;  // text field id -> content
  std::vector<std::string> back_stack;
  std::vector<std::string> recent_apps;  // least recent first
  std::map<std::string, std::string> app_last_page;
  std::set<std::size_t> fired_popups;
  int steps = 0;
  bool operator==(const SimState&) const = default;
};

struct SimOptions {
  /// Render a PNG for every captured screen. Tests that only inspect
  /// sim_truth turn this off.
  bool render_images = true;
};

/// Deterministic phone driven by an AppGraph. Never throws on operations:
/// anything the graph does not define leaves the screen unchanged.
class SimDevice final : public Device {
 public:
  explicit SimDevice(std::shared_ptr<const AppGraph> graph, SimOptions options = {});

  ScreenState execute(const AtomicOperation& operation) override;
  ScreenState capture() override;
  int width() override { return graph_->width; }
  int height() override { return graph_->height; }
  std::string_view backend_name() const override { return "sim"; }

  const SimState& state() const { return state_; }
  const AppGraph& graph() const { return *graph_; }

  /// Ground truth of the visible screen.
  SimTruth truth() const;

 private:
  void apply(const AtomicOperation& operation);
  void navigate(const std::string& page);
  void enter_page(const std::string& page);
  void open_app(const std::string& app);
  std::vector<GraphElement> switcher_elements() const;
  void fire_popups();

  std::shared_ptr<const AppGraph> graph_;
  SimOptions options_;
  SimState state_;
};

}  // namespace phoneagent
