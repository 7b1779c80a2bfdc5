#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phoneagent/perception/perception.hpp"

namespace phoneagent {

/// Seeded corruption of ground-truth perception, used to reproduce
/// misperception failures. Each element is independently dropped with
/// probability drop_rate; survivors have their content replaced with
/// probability substitute_rate.
struct NoiseModel {
  double drop_rate = 0.0;
  double substitute_rate = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> substitutes{"unknown"};

  bool active() const { return drop_rate > 0.0 || substitute_rate > 0.0; }
};

/// Reads the simulator's ground truth. Pure in (state, noise).
class SimPerceptor final : public Perceptor {
 public:
  explicit SimPerceptor(NoiseModel noise = {});
  PerceptionResult perceive(const ScreenState& state) override;

 private:
  NoiseModel noise_;
};

/// Exact perception of `truth`: static_text, text_field and list_item become
/// text entries, button and icon become icon entries captioned by label.
PerceptionResult perceive_truth(const SimTruth& truth, int width, int height);

}  // namespace phoneagent
