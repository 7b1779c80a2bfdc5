#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phoneagent/core/action.hpp"

namespace phoneagent {

struct TaskQuery {
  std::string id;
  std::string text;
  std::string scenario;
  std::vector<std::string> apps;
  bool operator==(const TaskQuery&) const = default;
};

enum class ElementKind { Button, TextField, ListItem, Icon, StaticText };

std::string_view to_string(ElementKind kind);
std::optional<ElementKind> parse_element_kind(std::string_view text);

/// One element of the simulator's ground truth for the visible screen.
struct SimElement {
  std::string id;
  ElementKind kind = ElementKind::StaticText;
  std::string label;
  Box box;
  std::string content;  // text field contents, or static content
  bool focused = false;
  bool operator==(const SimElement&) const = default;
};

struct SimTruth {
  std::string page;
  std::string overlay;  // empty when no overlay is shown
  std::vector<SimElement> elements;
  bool operator==(const SimTruth&) const = default;
};

using ImageBytes = std::vector<std::uint8_t>;

/// Screenshot handle: either a file on disk or an in-memory encoded image.
/// A null blob means the image was not rendered.
using ImageHandle = std::variant<std::filesystem::path, std::shared_ptr<const ImageBytes>>;

/// Reads the encoded image behind `handle`. Throws NotFoundError for a
/// missing file.
ImageBytes read_image(const ImageHandle& handle);

struct ScreenState {
  int step_index = 0;
  ImageHandle image;
  int width = 0;
  int height = 0;
  std::optional<SimTruth> sim_truth;  // present iff produced by the simulator
};

/// Reflector verdict on one action.
enum class Outcome {
  A,  // successful or partially successful
  B,  // failed: wrong page
  C,  // failed: no change
};

std::string_view to_string(Outcome outcome);
std::optional<Outcome> parse_outcome(std::string_view text);
inline bool is_failure(Outcome outcome) { return outcome != Outcome::A; }

/// How a task run ended.
enum class ExitReason {
  SelfReportedSuccess,
  MaxIterations,
  MaxConsecutiveErrors,
  MaxRepeatedActions,
  OtherError,
};

std::string_view to_string(ExitReason reason);
std::optional<ExitReason> parse_exit_reason(std::string_view text);
inline bool is_termination_error(ExitReason reason) {
  return reason != ExitReason::SelfReportedSuccess;
}

}  // namespace phoneagent
