#include "phoneagent/core/task_io.hpp"

#include <set>

#include "phoneagent/core/errors.hpp"

namespace phoneagent {

Json task_to_json(const TaskQuery& task) {
  Json out = Json::object();
  out["id"] = task.id;
  out["scenario"] = task.scenario;
  out["apps"] = task.apps;
  out["query"] = task.text;
  return out;
}

TaskQuery task_from_json(const Json& value, const std::string& path) {
  fields::object(value, path);
  TaskQuery task;
  task.id = fields::string(value, "id", path);
  if (task.id.empty()) throw DecodeError(fields::join(path, "id"), "must not be empty");
  task.text = fields::string(value, "query", path);
  if (task.text.empty()) throw DecodeError(fields::join(path, "query"), "must not be empty");
  task.scenario = fields::string_or(value, "scenario", path, "");
  if (const Json* apps = fields::optional(value, "apps")) {
    const std::string apps_path = fields::join(path, "apps");
    fields::array(*apps, apps_path);
    for (std::size_t i = 0; i < apps->size(); ++i) {
      if (!(*apps)[i].is_string()) throw DecodeError(fields::index(apps_path, i), "expected a string");
      task.apps.push_back((*apps)[i].get<std::string>());
    }
  }
  return task;
}

TaskQuery load_task(const std::filesystem::path& path) { return task_from_json(read_json_file(path), ""); }

Json scenario_to_json(const Scenario& scenario) {
  Json tasks = Json::array();
  for (const auto& t : scenario.tasks) tasks.push_back(task_to_json(t));
  Json out = Json::object();
  out["format"] = kScenarioFormat;
  out["name"] = scenario.name;
  out["tasks"] = std::move(tasks);
  return out;
}

Scenario scenario_from_json(const Json& value) {
  fields::object(value, "");
  if (fields::string(value, "format", "") != kScenarioFormat) {
    throw DecodeError("format", "expected " + std::string(kScenarioFormat));
  }
  Scenario scenario;
  scenario.name = fields::string_or(value, "name", "", "");
  const Json& tasks = fields::array(fields::required(value, "tasks", ""), "tasks");
  if (tasks.empty()) throw DecodeError("tasks", "a scenario needs at least one task");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string path = fields::index("tasks", i);
    TaskQuery task = task_from_json(tasks[i], path);
    if (!ids.insert(task.id).second) throw DecodeError(fields::join(path, "id"), "duplicate task id " + task.id);
    scenario.tasks.push_back(std::move(task));
  }
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) { return scenario_from_json(read_json_file(path)); }

}  // namespace phoneagent
