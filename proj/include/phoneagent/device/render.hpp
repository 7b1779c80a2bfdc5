#pragma once

#include <optional>
#include <span>
#include <utility>

#include "phoneagent/core/screen.hpp"
#include "phoneagent/device/app_graph.hpp"

namespace phoneagent {

/// Draws the visible screen as labelled boxes and encodes it as PNG. The
/// output depends only on (graph, truth).
ImageBytes render_screen(const AppGraph& graph, const SimTruth& truth);

/// Width and height from a PNG header; nullopt when `png` is not a PNG.
std::optional<std::pair<int, int>> png_dimensions(std::span<const std::uint8_t> png);

}  // namespace phoneagent
