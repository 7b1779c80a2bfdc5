#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "phoneagent/core/json_fields.hpp"
#include "phoneagent/core/screen.hpp"

namespace phoneagent {

// Task record: {"id", "scenario", "apps": [...], "query"}. A task file holds
// one such object; a scenario file is
// {"format": "phoneagent.scenario.v1", "name", "tasks": [task, ...]}.

inline constexpr std::string_view kScenarioFormat = "phoneagent.scenario.v1";

Json task_to_json(const TaskQuery& task);
TaskQuery task_from_json(const Json& value, const std::string& path);
TaskQuery load_task(const std::filesystem::path& path);

struct Scenario {
  std::string name;
  std::vector<TaskQuery> tasks;
  bool operator==(const Scenario&) const = default;
};

Json scenario_to_json(const Scenario& scenario);
/// Task ids must be unique and non-empty; at least one task.
Scenario scenario_from_json(const Json& value);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace phoneagent
