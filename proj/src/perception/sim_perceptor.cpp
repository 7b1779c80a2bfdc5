#include "phoneagent/perception/sim_perceptor.hpp"

#include <random>
#include <stdexcept>

#include "phoneagent/core/errors.hpp"

namespace phoneagent {
namespace {

// Uniform in [0,1) from the top 53 bits; std::uniform_real_distribution is
// not specified bit-exactly across standard libraries.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

SimPerceptor::SimPerceptor(NoiseModel noise) : noise_(std::move(noise)) {
  auto rate = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!rate(noise_.drop_rate) || !rate(noise_.substitute_rate)) {
    throw std::invalid_argument("noise rates must lie in [0, 1]");
  }
  if (noise_.substitute_rate > 0.0 && noise_.substitutes.empty()) {
    throw std::invalid_argument("substitution needs at least one substitute caption");
  }
}

PerceptionResult perceive_truth(const SimTruth& truth, int width, int height) {
  PerceptionResult result;
  for (const auto& e : truth.elements) {
    PerceivedElement out;
    switch (e.kind) {
      case ElementKind::Button:
      case ElementKind::Icon:
        out.kind = PerceivedElement::Kind::Icon;
        out.content = e.label;
        break;
      case ElementKind::TextField:
        out.kind = PerceivedElement::Kind::Text;
        out.content = e.content.empty() ? e.label : e.content;
        break;
      case ElementKind::ListItem:
      case ElementKind::StaticText:
        out.kind = PerceivedElement::Kind::Text;
        out.content = e.content.empty() ? e.label : e.label.empty() ? e.content : e.label + " " + e.content;
        break;
    }
    out.box = e.box;
    out.center = e.box.center();
    out.truth_kind = e.kind;
    result.elements.push_back(std::move(out));
  }
  normalize(result, width, height);
  return result;
}

PerceptionResult SimPerceptor::perceive(const ScreenState& state) {
  if (!state.sim_truth) throw PerceptionError("simulator perception needs sim_truth");
  PerceptionResult exact = perceive_truth(*state.sim_truth, state.width, state.height);
  if (!noise_.active()) return exact;

  std::mt19937_64 rng(noise_.seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(state.step_index + 1)));
  PerceptionResult noisy;
  for (auto& e : exact.elements) {
    const double drop = unit(rng);
    const double substitute = unit(rng);
    const std::uint64_t pick = rng();
    if (drop < noise_.drop_rate) continue;
    if (substitute < noise_.substitute_rate) e.content = noise_.substitutes[pick % noise_.substitutes.size()];
    noisy.elements.push_back(std::move(e));
  }
  return noisy;
}

}  // namespace phoneagent
