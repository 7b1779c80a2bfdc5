#include "phoneagent/orchestrator/scenario.hpp"

#include "phoneagent/core/errors.hpp"
#include "phoneagent/core/memory_io.hpp"
#include "phoneagent/orchestrator/hash.hpp"
#include "phoneagent/shortcut/engine.hpp"

namespace phoneagent {

ScenarioRun run_scenario(const Scenario& scenario, const ScenarioOptions& options) {
  if (!options.make_device || !options.perceptor || !options.backend || options.prompts == nullptr) {
    throw ConfigError("scenario run is missing a device factory, perceptor, backend or prompts");
  }
  options.config.validate();

  ScenarioRun run;
  run.memory = load_memory(options.memory_path);
  validate_memory(run.memory);
  const std::string hash_before = sha256_file(options.memory_path);

  Json tasks = Json::array();
  for (std::size_t k = 0; k < scenario.tasks.size(); ++k) {
    const TaskQuery& task = scenario.tasks[k];
    const auto task_dir = options.out_dir / task.id;
    save_memory(run.memory, task_dir / "memory_before.json");

    auto backend = audited(options.backend, task_dir);
    auto device = options.make_device();
    TaskEnvironment env{*device, *options.perceptor, *backend, *options.prompts};
    TaskRun result = run_task(task, options.config, env, run.memory, task_dir);

    Json entry = Json::object();
    entry["id"] = task.id;
    entry["exit_reason"] = std::string(to_string(result.trajectory.exit_reason));
    entry["steps"] = result.trajectory.decision_iterations();

    if (options.evolve) {
      const std::span<const TaskQuery> future(scenario.tasks.data() + k + 1, scenario.tasks.size() - k - 1);
      const AgentContext ctx{*backend, *options.prompts};
      EvolutionReport report = evolve_memory(ctx, {task, result.working, future}, run.memory);
      write_json_file(task_dir / "evolution.json", evolution_report_to_json(report));
      save_memory(run.memory, options.memory_path);
      entry["admitted_shortcuts"] = report.admitted_shortcuts;
      entry["rejected_shortcuts"] = report.rejected_shortcuts.size();
      run.evolution.push_back(std::move(report));
    }
    save_memory(run.memory, task_dir / "memory_after.json");
    tasks.push_back(std::move(entry));
    run.trajectories.push_back(std::move(result.trajectory));
  }

  Json manifest = Json::object();
  manifest["format"] = kManifestFormat;
  manifest["scenario"] = scenario.name;
  manifest["evolve"] = options.evolve;
  manifest["config"] = config_to_json(options.config);
  manifest["memory_sha256_before"] = hash_before;
  manifest["memory_sha256_after"] = sha256_file(options.memory_path);
  manifest["tasks"] = std::move(tasks);
  write_json_file(options.out_dir / "manifest.json", manifest);
  return run;
}

}  // namespace phoneagent
