#include "phoneagent/orchestrator/recorder.hpp"

#include <cstdio>

#include "phoneagent/core/json_fields.hpp"

namespace phoneagent {
namespace {

std::string screen_stem(int step) {
  char name[32];
  std::snprintf(name, sizeof name, "screen_%04d", step);
  return name;
}

Json truth_to_json(const SimTruth& truth) {
  Json elements = Json::array();
  for (const auto& e : truth.elements) {
    Json entry = Json::object();
    entry["id"] = e.id;
    entry["kind"] = std::string(to_string(e.kind));
    entry["label"] = e.label;
    entry["box"] = {e.box.x, e.box.y, e.box.width, e.box.height};
    entry["content"] = e.content;
    entry["focused"] = e.focused;
    elements.push_back(std::move(entry));
  }
  Json out = Json::object();
  out["page"] = truth.page;
  out["overlay"] = truth.overlay;
  out["elements"] = std::move(elements);
  return out;
}

bool has_image(const ScreenState& screen) {
  if (const auto* blob = std::get_if<std::shared_ptr<const ImageBytes>>(&screen.image)) {
    return *blob && !(*blob)->empty();
  }
  return true;
}

}  // namespace

TaskRecorder::TaskRecorder(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_ / "screens");
}

ScreenState TaskRecorder::persist(const ScreenState& screen) {
  const auto stem = dir_ / "screens" / screen_stem(screen.step_index);
  ScreenState out = screen;
  if (has_image(screen)) out.image = std::filesystem::path(stem.string() + ".png");
  if (!written_.insert(screen.step_index).second) return out;

  if (has_image(screen)) {
    const ImageBytes bytes = read_image(screen.image);
    write_text_file(stem.string() + ".png", std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  }
  if (screen.sim_truth) write_json_file(stem.string() + ".json", truth_to_json(*screen.sim_truth));
  return out;
}

std::string TaskRecorder::relative(const ScreenState& screen) const {
  const auto* path = std::get_if<std::filesystem::path>(&screen.image);
  if (path == nullptr) return {};
  return path->lexically_relative(dir_).generic_string();
}

void TaskRecorder::write(const Trajectory& trajectory) const {
  write_json_file(dir_ / "trajectory.json", trajectory_to_json(trajectory));
  Json timing = Json::object();
  timing["step_seconds"] = timings_;
  write_json_file(dir_ / "timing.json", timing);
}

}  // namespace phoneagent
