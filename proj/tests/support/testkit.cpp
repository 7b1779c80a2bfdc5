#include "testkit.hpp"

#include <algorithm>
#include <random>

#include "phoneagent/agents/grammar.hpp"
#include "phoneagent/core/json_fields.hpp"
#include "phoneagent/perception/sim_perceptor.hpp"

namespace phoneagent::testkit {

std::filesystem::path source_dir() { return PHONEAGENT_SOURCE_DIR; }

TempDir::TempDir() {
  std::random_device rd;
  const auto base = std::filesystem::temp_directory_path();
  for (;;) {
    path_ = base / ("phoneagent_test_" + std::to_string(rd()) + std::to_string(rd()));
    if (std::filesystem::create_directory(path_)) return;
  }
}

TempDir::~TempDir() {
  std::error_code ignored;
  std::filesystem::remove_all(path_, ignored);
}

std::string manager_reply(const std::string& plan, const std::string& subgoal) {
  return format_sections({{"PLAN", plan}, {"SUBGOAL", subgoal}});
}

std::string operator_reply(const std::string& action, const std::string& expectation) {
  return format_sections({{"ACTION", action}, {"EXPECTATION", expectation}});
}

std::string reflect_ok(const std::string& progress) {
  return format_sections({{"OUTCOME", "A"}, {"PROGRESS", progress}});
}

std::string reflect_fail(Outcome outcome, const std::string& description) {
  return format_sections({{"OUTCOME", std::string(to_string(outcome))},
                          {"ERROR_DESCRIPTION", description},
                          {"SUSPECTED_CAUSE", "The action did not apply."},
                          {"SUGGESTED_FIX", "Try something else."}});
}

std::string notes_reply(const std::string& notes) { return format_sections({{"NOTES", notes}}); }

void ScriptWriter::add(const std::string& caller, std::string response) {
  ScriptEntry entry;
  entry.caller = caller;
  entry.step = ++counters_[caller];
  entry.response = std::move(response);
  book_.add(std::move(entry));
}

void ScriptWriter::step(const std::string& action, std::optional<std::string> reflection, std::string manager) {
  add("manager", std::move(manager));
  add("operator", operator_reply(action));
  if (reflection) {
    add("reflector", std::move(*reflection));
    add("notetaker", notes_reply());
  }
}

std::shared_ptr<const AppGraph> demo_graph() {
  static const auto graph =
      std::make_shared<const AppGraph>(load_app_graph(source_dir() / "data/graphs/demo_phone.json"));
  return graph;
}

Shortcut tap_type_and_enter() {
  Shortcut s;
  s.name = "Tap_Type_and_Enter";
  s.description = "Tap an input box, type text into it, and press enter.";
  s.precondition = "There is a text input box on the screen.";
  s.arguments = {"x", "y", "text"};
  s.sequence = {{"Tap", {{"x", ArgRef{"x"}}, {"y", ArgRef{"y"}}}},
                {"Type", {{"text", ArgRef{"text"}}}},
                {"Enter", {}}};
  return s;
}

std::vector<std::string> audited_prompts(const std::filesystem::path& model_calls, const std::string& caller) {
  std::vector<std::filesystem::path> files;
  const std::string suffix = "_" + caller + ".json";
  for (const auto& entry : std::filesystem::directory_iterator(model_calls)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0 &&
        name.find_first_not_of("0123456789") == name.size() - suffix.size()) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> prompts;
  for (const auto& file : files) {
    const Json call = read_json_file(file);
    std::string text;
    for (const auto& message : call.at("request").at("messages")) {
      for (const auto& part : message.at("parts")) {
        if (part.at("type") != "text") continue;
        if (!text.empty()) text += '\n';
        text += part.at("text").get<std::string>();
      }
    }
    prompts.push_back(std::move(text));
  }
  return prompts;
}


ScriptedRun run_scripted(const ScriptBook& book, const std::filesystem::path& dir, const OrchestratorConfig& config,
                         const LongTermMemory& memory, std::shared_ptr<const AppGraph> graph,
                         std::span<const AtomicOperation> prelude, bool render) {
  SimDevice device(std::move(graph), SimOptions{render});
  for (const auto& op : prelude) device.execute(op);
  SimPerceptor perceptor;
  auto scripted = std::make_shared<ScriptedBackend>(book);
  auto backend = audited(scripted, dir);
  const PromptLibrary prompts = PromptLibrary::builtin();
  TaskEnvironment env{device, perceptor, *backend, prompts};
  ScriptedRun out{run_task(demo_task(), config, env, memory, dir), device.state(), 0};
  for (const char* caller : {"manager", "operator", "reflector", "notetaker"}) out.backend_calls += scripted->calls(caller);
  return out;
}

TaskQuery demo_task(std::string id, std::string query) {
  TaskQuery task;
  task.id = std::move(id);
  task.text = std::move(query);
  task.scenario = "test";
  return task;
}

}  // namespace phoneagent::testkit
