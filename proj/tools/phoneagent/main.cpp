// phoneagent command-line front end. See README for the exit-code table.

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "phoneagent/agents/formatting.hpp"
#include "phoneagent/agents/retrieval.hpp"
#include "phoneagent/core/errors.hpp"
#include "phoneagent/core/memory_io.hpp"
#include "phoneagent/core/task_io.hpp"
#include "phoneagent/device/bridge_device.hpp"
#include "phoneagent/device/sim_device.hpp"
#include "phoneagent/eval/annotate.hpp"
#include "phoneagent/eval/metrics.hpp"
#include "phoneagent/llm/http_backend.hpp"
#include "phoneagent/llm/scripted_backend.hpp"
#include "phoneagent/orchestrator/loop.hpp"
#include "phoneagent/orchestrator/scenario.hpp"
#include "phoneagent/perception/remote_perceptor.hpp"
#include "phoneagent/perception/sim_perceptor.hpp"
#include "phoneagent/shortcut/engine.hpp"

namespace fs = std::filesystem;
using namespace phoneagent;

namespace {

enum ExitCode {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kNotFound = 3,
  kDecode = 4,
  kValidation = 5,
  kDevice = 6,
  kModel = 7,
  kPerception = 8,
  kMetric = 9,
};

/// A bad flag value discovered after CLI11 parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RuntimeFlags {
  std::string device = "sim:data/graphs/demo_phone.json";
  std::string backend = "http";
  std::string perception = "sim";
  std::string config_path;
  std::string prompts_dir;
  std::string adb_serial;
  std::string app_packages;
  double noise_drop = 0;
  double noise_substitute = 0;
  std::uint64_t noise_seed = 0;

  // Overrides; unset means "take it from the config file or the default".
  std::optional<int> max_iterations;
  std::optional<int> k_escalation;
  std::optional<int> history_window;
  std::optional<int> max_consecutive_errors;
  std::optional<int> max_repeated_actions;
  bool strict_gate = false;
  bool retrieval = false;
};

void add_runtime_flags(CLI::App& cmd, RuntimeFlags& f) {
  cmd.add_option("--device", f.device, "sim:GRAPH_FILE or bridge")->capture_default_str();
  cmd.add_option("--backend", f.backend, "http or script:BOOK_FILE")->capture_default_str();
  cmd.add_option("--perception", f.perception, "sim or remote:URL")->capture_default_str();
  cmd.add_option("--config", f.config_path, "orchestrator config JSON");
  cmd.add_option("--prompts", f.prompts_dir, "directory of prompt template overrides");
  cmd.add_option("--adb-serial", f.adb_serial, "bridge device serial");
  cmd.add_option("--app-packages", f.app_packages, "JSON object mapping app names to packages (bridge)");
  cmd.add_option("--noise-drop", f.noise_drop, "simulated perception drop rate");
  cmd.add_option("--noise-substitute", f.noise_substitute, "simulated perception substitution rate");
  cmd.add_option("--noise-seed", f.noise_seed, "simulated perception noise seed");
  cmd.add_option("--max-iterations", f.max_iterations);
  cmd.add_option("--k-escalation", f.k_escalation);
  cmd.add_option("--history-window", f.history_window);
  cmd.add_option("--max-consecutive-errors", f.max_consecutive_errors);
  cmd.add_option("--max-repeated-actions", f.max_repeated_actions);
  cmd.add_flag("--strict-gate", f.strict_gate, "deny shortcuts whose precondition is visibly unmet");
  cmd.add_flag("--retrieval", f.retrieval, "enable experience retrieval");
}

OrchestratorConfig resolve_config(const RuntimeFlags& f) {
  OrchestratorConfig config;
  if (!f.config_path.empty()) config = config_from_json(read_json_file(f.config_path));
  if (f.max_iterations) config.max_iterations = *f.max_iterations;
  if (f.k_escalation) config.k_escalation = *f.k_escalation;
  if (f.history_window) config.m_history_window = *f.history_window;
  if (f.max_consecutive_errors) config.max_consecutive_errors = *f.max_consecutive_errors;
  if (f.max_repeated_actions) config.max_repeated_actions = *f.max_repeated_actions;
  if (f.strict_gate) config.strict_precondition_gate = true;
  if (f.retrieval) config.retrieval_enabled = true;
  config.validate();
  return config;
}

std::optional<std::string> after_prefix(const std::string& value, std::string_view prefix) {
  if (value.rfind(prefix, 0) != 0) return std::nullopt;
  return value.substr(prefix.size());
}

std::function<std::unique_ptr<Device>()> device_factory(const RuntimeFlags& f, const fs::path& out_dir) {
  if (auto graph_path = after_prefix(f.device, "sim:")) {
    auto graph = std::make_shared<const AppGraph>(load_app_graph(*graph_path));
    return [graph] { return std::make_unique<SimDevice>(graph); };
  }
  if (f.device == "bridge") {
    BridgeOptions options;
    options.serial = f.adb_serial;
    options.screenshot_dir = out_dir / "bridge_screens";
    if (!f.app_packages.empty()) {
      const Json packages = read_json_file(f.app_packages);
      fields::object(packages, "app_packages");
      for (const auto& [app, package] : packages.items()) {
        options.app_packages[app] = fields::string(packages, app, "app_packages");
      }
    }
    return [options] { return std::make_unique<BridgeDevice>(options, std::make_shared<ShellCommandRunner>()); };
  }
  throw UsageError("--device must be sim:GRAPH_FILE or bridge, got '" + f.device + "'");
}

std::shared_ptr<ModelBackend> make_backend(const RuntimeFlags& f) {
  if (auto book = after_prefix(f.backend, "script:")) return std::make_shared<ScriptedBackend>(load_script(*book));
  if (f.backend == "http") return std::make_shared<HttpBackend>(HttpBackendOptions::from_environment());
  throw UsageError("--backend must be http or script:BOOK_FILE, got '" + f.backend + "'");
}

std::shared_ptr<Perceptor> make_perceptor(const RuntimeFlags& f) {
  if (auto url = after_prefix(f.perception, "remote:")) {
    return std::make_shared<RemotePerceptor>(RemotePerceptionOptions{*url});
  }
  if (f.perception == "sim") {
    NoiseModel noise;
    noise.drop_rate = f.noise_drop;
    noise.substitute_rate = f.noise_substitute;
    noise.seed = f.noise_seed;
    try {
      return std::make_shared<SimPerceptor>(noise);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  throw UsageError("--perception must be sim or remote:URL, got '" + f.perception + "'");
}

PromptLibrary make_prompts(const RuntimeFlags& f) {
  return f.prompts_dir.empty() ? PromptLibrary::builtin() : PromptLibrary::with_overrides(f.prompts_dir);
}

LongTermMemory memory_or_empty(const std::string& path) {
  return path.empty() ? LongTermMemory{} : load_memory(path);
}

std::map<std::string, RubricSheet> load_rubric_dir(const fs::path& path) {
  std::map<std::string, RubricSheet> sheets;
  auto add = [&](const fs::path& file) {
    RubricSheet sheet = load_rubrics(file);
    const std::string id = sheet.task_id;
    if (!sheets.emplace(id, std::move(sheet)).second) {
      throw DecodeError(file.filename().string(), "second rubric sheet for task '" + id + "'");
    }
  };
  if (!fs::exists(path)) throw NotFoundError("rubrics not found: " + path.string());
  if (fs::is_regular_file(path)) {
    add(path);
    return sheets;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) add(file);
  if (sheets.empty()) throw ConfigError("no rubric files in " + path.string());
  return sheets;
}

void print_memory(const LongTermMemory& memory) {
  auto origin = [](const Provenance& p) {
    return p.origin == Provenance::Origin::Seed ? std::string("seed") : "task " + p.task_id;
  };
  std::cout << "Tips (" << memory.tips().size() << ")\n";
  for (const auto& t : memory.tips()) {
    std::cout << "  " << t.tip.id << ". " << indent_continuation(t.tip.text) << "  [" << origin(t.provenance)
              << "]\n";
  }
  std::cout << "Shortcuts (" << memory.shortcuts().size() << ")\n";
  for (const auto& s : memory.shortcuts()) {
    const Shortcut& sc = s.shortcut;
    std::cout << "  " << sc.name << "(";
    for (std::size_t i = 0; i < sc.arguments.size(); ++i) std::cout << (i ? ", " : "") << sc.arguments[i];
    std::cout << ")  [" << origin(s.provenance) << "]\n";
    std::cout << "    " << sc.description << "\n";
    std::cout << "    precondition: " << sc.precondition << "\n";
    std::cout << "    sequence: " << format_sequence(sc) << "\n";
  }
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const ConfigError*>(&e)) return kUsage;
  if (dynamic_cast<const NotFoundError*>(&e)) return kNotFound;
  if (dynamic_cast<const DecodeError*>(&e)) return kDecode;
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const BindingError*>(&e)) return kValidation;
  if (dynamic_cast<const DeviceError*>(&e)) return kDevice;
  if (dynamic_cast<const TransportError*>(&e) || dynamic_cast<const ScriptMissError*>(&e) ||
      dynamic_cast<const ParseError*>(&e)) {
    return kModel;
  }
  if (dynamic_cast<const PerceptionError*>(&e)) return kPerception;
  if (dynamic_cast<const MetricError*>(&e)) return kMetric;
  return kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical mobile GUI agent with self-evolving memory"};
  app.require_subcommand(1);

  RuntimeFlags flags;
  std::string task_path, scenario_path, memory_path, out_dir, evolve = "on";

  auto* run_task_cmd = app.add_subcommand("run-task", "run one task and record its trajectory");
  add_runtime_flags(*run_task_cmd, flags);
  run_task_cmd->add_option("--task", task_path, "task JSON")->required();
  run_task_cmd->add_option("--memory", memory_path, "long-term memory JSON (read only)");
  run_task_cmd->add_option("--out", out_dir, "trajectory directory")->required();

  auto* run_scenario_cmd = app.add_subcommand("run-scenario", "run a task sequence sharing one memory");
  add_runtime_flags(*run_scenario_cmd, flags);
  run_scenario_cmd->add_option("--scenario", scenario_path, "scenario JSON")->required();
  run_scenario_cmd->add_option("--memory", memory_path, "long-term memory JSON")->required();
  run_scenario_cmd->add_option("--out", out_dir, "output directory")->required();
  run_scenario_cmd->add_option("--evolve", evolve, "update memory after each task")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();

  auto* memory_cmd = app.add_subcommand("memory", "inspect long-term memory");
  memory_cmd->require_subcommand(1);
  auto* show_cmd = memory_cmd->add_subcommand("show", "print tips and shortcuts");
  show_cmd->add_option("--memory", memory_path)->required();
  auto* validate_cmd = memory_cmd->add_subcommand("validate", "check every stored shortcut");
  validate_cmd->add_option("--memory", memory_path)->required();
  auto* retrieve_cmd = memory_cmd->add_subcommand("retrieve", "show the retrievers' selection for a task");
  add_runtime_flags(*retrieve_cmd, flags);
  retrieve_cmd->add_option("--memory", memory_path)->required();
  retrieve_cmd->add_option("--task", task_path)->required();

  std::string trajectory_dir, rubrics_path, annotations_dir, model_tag = "unknown", output;
  auto* annotate_cmd = app.add_subcommand("annotate", "review a trajectory step by step");
  annotate_cmd->add_option("--trajectory", trajectory_dir, "task directory holding trajectory.json")->required();
  annotate_cmd->add_option("--rubrics", rubrics_path, "rubric JSON for the task")->required();
  annotate_cmd->add_option("--model", model_tag, "model tag recorded in the annotation")->capture_default_str();
  annotate_cmd->add_option("--out", output, "annotation JSON to write")->required();

  bool as_json = false;
  auto* score_cmd = app.add_subcommand("score", "compute SS, AA, RA and TE");
  score_cmd->add_option("--annotations", annotations_dir)->required();
  score_cmd->add_option("--rubrics", rubrics_path, "rubric file or directory")->required();
  score_cmd->add_flag("--json", as_json, "print the machine-readable report");

  auto* sss_cmd = app.add_subcommand("sss", "write SSS curve points as CSV");
  sss_cmd->add_option("--annotations", annotations_dir)->required();
  sss_cmd->add_option("--rubrics", rubrics_path, "rubric file or directory")->required();
  sss_cmd->add_option("--out", output, "CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run_task_cmd) {
      const OrchestratorConfig config = resolve_config(flags);
      const TaskQuery task = load_task(task_path);
      const LongTermMemory memory = memory_or_empty(memory_path);
      const PromptLibrary prompts = make_prompts(flags);
      auto device = device_factory(flags, out_dir)();
      auto perceptor = make_perceptor(flags);
      auto backend = audited(make_backend(flags), out_dir);
      TaskEnvironment env{*device, *perceptor, *backend, prompts};
      const TaskRun run = run_task(task, config, env, memory, out_dir);
      std::cout << to_string(run.trajectory.exit_reason) << "\n";
      return kOk;
    }
    if (*run_scenario_cmd) {
      const PromptLibrary prompts = make_prompts(flags);
      ScenarioOptions options;
      options.config = resolve_config(flags);
      options.evolve = evolve == "on";
      options.memory_path = memory_path;
      options.out_dir = out_dir;
      options.make_device = device_factory(flags, out_dir);
      options.perceptor = make_perceptor(flags);
      options.backend = make_backend(flags);
      options.prompts = &prompts;
      const Scenario scenario = load_scenario(scenario_path);
      const ScenarioRun run = run_scenario(scenario, options);
      for (std::size_t i = 0; i < run.trajectories.size(); ++i) {
        std::cout << scenario.tasks[i].id << " " << to_string(run.trajectories[i].exit_reason) << "\n";
      }
      return kOk;
    }
    if (*show_cmd) {
      print_memory(load_memory(memory_path));
      return kOk;
    }
    if (*validate_cmd) {
      const LongTermMemory memory = load_memory(memory_path);
      int invalid = 0;
      for (const auto& s : memory.shortcuts()) {
        try {
          validate_shortcut(s.shortcut);
          std::cout << "ok       " << s.shortcut.name << "\n";
        } catch (const ValidationError& e) {
          ++invalid;
          std::cout << "invalid  " << s.shortcut.name << ": " << e.what() << "\n";
        }
      }
      std::cout << memory.tips().size() << " tips, " << memory.shortcuts().size() << " shortcuts, " << invalid
                << " invalid\n";
      return invalid == 0 ? kOk : kValidation;
    }
    if (*retrieve_cmd) {
      OrchestratorConfig config = resolve_config(flags);
      config.retrieval_enabled = true;
      const LongTermMemory memory = load_memory(memory_path);
      const TaskQuery task = load_task(task_path);
      const PromptLibrary prompts = make_prompts(flags);
      auto backend = make_backend(flags);
      const RetrievalResult result = retrieve_memory(AgentContext{*backend, prompts}, task, memory, config);
      std::cout << "Tips (" << (result.tips_retrieved ? "retrieved" : "all") << ")\n"
                << format_tips(result.view.tips);
      std::cout << "Shortcuts (" << (result.shortcuts_retrieved ? "retrieved" : "all") << ")\n"
                << format_shortcuts(result.view.shortcuts);
      return kOk;
    }
    if (*annotate_cmd) {
      const Json trajectory = read_json_file(fs::path(trajectory_dir) / "trajectory.json");
      const RubricSheet rubrics = load_rubrics(rubrics_path);
      const AnnotationRecord record = annotate_trajectory(trajectory, rubrics, model_tag, std::cin, std::cout);
      write_json_file(output, annotation_to_json(record));
      std::cout << "wrote " << output << "\n";
      return kOk;
    }
    if (*score_cmd) {
      const auto annotations = load_annotations(annotations_dir);
      const MetricsReport report = compute_report(annotations, load_rubric_dir(rubrics_path));
      std::cout << (as_json ? report_to_json(report).dump(2) + "\n" : report_to_table(report));
      return kOk;
    }
    if (*sss_cmd) {
      const auto annotations = load_annotations(annotations_dir);
      write_text_file(output, sss_csv(annotations, load_rubric_dir(rubrics_path)));
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kUsage;
}
