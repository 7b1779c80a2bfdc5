#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phoneagent/core/json_fields.hpp"
#include "phoneagent/core/screen.hpp"

namespace phoneagent {

struct PerceivedElement {
  enum class Kind { Text, Icon };
  Kind kind = Kind::Text;
  std::string content;  // recognized text or icon caption
  Point center;
  Box box;
  /// Ground-truth element kind; only the simulator backend knows it.
  std::optional<ElementKind> truth_kind;
  bool operator==(const PerceivedElement&) const = default;
};

/// Fine-grained screen description handed to the Operator, Reflector and
/// Notetaker. Elements are ordered top-to-bottom, then left-to-right.
struct PerceptionResult {
  std::vector<PerceivedElement> elements;
  bool operator==(const PerceptionResult&) const = default;
};

class Perceptor {
 public:
  virtual ~Perceptor() = default;
  /// Throws PerceptionError when the backend cannot produce a result.
  virtual PerceptionResult perceive(const ScreenState& state) = 0;
};

/// Sorts by box origin (y, then x) and clamps coordinates into the screen.
void normalize(PerceptionResult& result, int width, int height);

/// Prompt rendering: one line per element, e.g.
/// `- text "Search" at (360, 120)`.
std::string format_perception(const PerceptionResult& result);

Json perception_to_json(const PerceptionResult& result);
PerceptionResult perception_from_json(const Json& value, const std::string& path);

}  // namespace phoneagent
