#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "phoneagent/core/screen.hpp"
#include "phoneagent/orchestrator/trajectory.hpp"

namespace phoneagent {

/// Owns one task directory:
///
///   trajectory.json          steps, actions, outcomes, exit reason
///   timing.json              wall-clock seconds per step (not reproducible)
///   screens/screen_NNNN.png  every captured screen, NNNN = device step
///   screens/screen_NNNN.json simulator ground truth for that screen
///   model_calls/             audit log, see AuditingBackend
class TaskRecorder {
 public:
  explicit TaskRecorder(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  /// Writes the screen (once per step index) and returns it with its image
  /// pointing at the written file, so later prompts and audit logs refer to
  /// it by path.
  ScreenState persist(const ScreenState& screen);

  /// Path of a persisted screen relative to dir(), or "" if none was written.
  std::string relative(const ScreenState& screen) const;

  void record_timing(double seconds) { timings_.push_back(seconds); }

  void write(const Trajectory& trajectory) const;

 private:
  std::filesystem::path dir_;
  std::set<int> written_;
  std::vector<double> timings_;
};

}  // namespace phoneagent
