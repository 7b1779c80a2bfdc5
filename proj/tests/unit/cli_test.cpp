#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>

#include "phoneagent/core/json_fields.hpp"
#include "testkit.hpp"

namespace phoneagent {
namespace {

using testkit::source_dir;
using testkit::TempDir;

struct Outcome {
  int code = -1;
  std::string output;  // stdout and stderr
};

// Runs the CLI from the source tree so relative data paths resolve.
Outcome cli(const std::string& args, const std::string& stdin_text = "") {
  TempDir tmp;
  const auto input = tmp / "stdin.txt";
  write_text_file(input, stdin_text);
  const std::string command = "cd '" + source_dir().string() + "' && '" + PHONEAGENT_CLI + "' " + args + " < '" +
                              input.string() + "' 2>&1";
  Outcome out;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return out;
  char buffer[4096];
  while (std::size_t n = std::fread(buffer, 1, sizeof buffer, pipe)) out.output.append(buffer, n);
  const int status = ::pclose(pipe);
  out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("run-task").code, 2);  // --task and --out are required
  EXPECT_EQ(cli("run-scenario --scenario data/scenarios/shopping.json --memory x --out y --evolve maybe").code, 2);
  TempDir tmp;
  EXPECT_EQ(cli("run-task --task data/tasks/shop_1.json --out " + q(tmp / "o") + " --backend carrier-pigeon").code, 2);
  EXPECT_EQ(cli("run-task --task data/tasks/shop_1.json --out " + q(tmp / "o") + " --max-iterations 0 --backend " +
                "script:data/scripts/shopping.json")
                .code,
            2);
}

TEST(Cli, MissingFilesExitThree) {
  TempDir tmp;
  EXPECT_EQ(cli("memory show --memory " + q(tmp / "none.json")).code, 3);
  EXPECT_EQ(cli("run-task --task " + q(tmp / "none.json") + " --out " + q(tmp / "o") +
                " --backend script:data/scripts/shopping.json")
                .code,
            3);
}

TEST(Cli, MalformedFilesExitFour) {
  TempDir tmp;
  write_text_file(tmp / "m.json", "{\"format\": \"phoneagent.memory.v1\", \"shortcuts\": [], \"tips\": 3}");
  const Outcome r = cli("memory show --memory " + q(tmp / "m.json"));
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.output.find("tips"), std::string::npos);
}

TEST(Cli, MemoryShowAndValidate) {
  const Outcome shown = cli("memory show --memory data/memory/seed_memory.json");
  EXPECT_EQ(shown.code, 0);
  EXPECT_NE(shown.output.find("1. "), std::string::npos);

  TempDir tmp;
  Json doc = read_json_file(source_dir() / "data/memory/seed_memory.json");
  doc["shortcuts"] = Json::array({Json::parse(R"({
    "name": "Broken", "arguments": ["x", "unused"], "description": "d", "precondition": "p",
    "atomic_action_sequence": [{"name": "Tap", "arguments_map": {"x": "x", "y": 5}}],
    "provenance": {"origin": "seed"}})")});
  write_json_file(tmp / "m.json", doc);
  const Outcome bad = cli("memory validate --memory " + q(tmp / "m.json"));
  EXPECT_EQ(bad.code, 5);
  EXPECT_NE(bad.output.find("Broken"), std::string::npos);
  EXPECT_NE(bad.output.find("unused_argument"), std::string::npos);
  EXPECT_EQ(cli("memory validate --memory data/memory/seed_memory.json").code, 0);
}

TEST(Cli, RunTaskWithScriptedBackend) {
  TempDir tmp;
  const Outcome r = cli("run-task --task data/tasks/shop_1.json --memory data/memory/seed_memory.json --out " +
                        q(tmp / "out") + " --backend script:data/scripts/shopping.json");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("self_reported_success"), std::string::npos);
  const Json traj = read_json_file(tmp / "out" / "trajectory.json");
  EXPECT_EQ(traj.at("exit_reason"), "self_reported_success");
}

TEST(Cli, ScriptMissExitsSeven) {
  TempDir tmp;
  write_json_file(tmp / "empty_script.json", Json{{"format", "phoneagent.script.v1"}, {"entries", Json::array()}});
  const Outcome r = cli("run-task --task data/tasks/shop_1.json --out " + q(tmp / "out") + " --backend script:" +
                        (tmp / "empty_script.json").string());
  EXPECT_EQ(r.code, 7);
}

TEST(Cli, RunScenarioEvolvesMemoryFile) {
  TempDir tmp;
  std::filesystem::copy_file(source_dir() / "data/memory/seed_memory.json", tmp / "memory.json");
  const Outcome r = cli("run-scenario --scenario data/scenarios/shopping.json --memory " + q(tmp / "memory.json") +
                        " --out " + q(tmp / "out") + " --evolve on --backend script:data/scripts/shopping.json");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("shop_1 self_reported_success"), std::string::npos);
  EXPECT_NE(r.output.find("shop_5 self_reported_success"), std::string::npos);
  EXPECT_NE(read_text_file(tmp / "memory.json").find("Tap_Type_and_Enter"), std::string::npos);
  EXPECT_EQ(read_json_file(tmp / "out" / "manifest.json").at("tasks").size(), 5u);
}

TEST(Cli, ScoreAndSss) {
  const std::string args = "--annotations tests/fixtures/annotations --rubrics data/rubrics";
  const Outcome table = cli("score " + args);
  EXPECT_EQ(table.code, 0) << table.output;
  EXPECT_NE(table.output.find("66.7% (2/3)"), std::string::npos);
  EXPECT_NE(table.output.find("85.7% (6/7)"), std::string::npos);
  const Outcome json = cli("score " + args + " --json");
  EXPECT_EQ(Json::parse(json.output).at("termination_error_rate").at("den"), 2);

  TempDir tmp;
  EXPECT_EQ(cli("sss " + args + " --out " + q(tmp / "sss.csv")).code, 0);
  const std::string csv = read_text_file(tmp / "sss.csv");
  EXPECT_EQ(csv.rfind("x,y,model\n", 0), 0u);
  EXPECT_NE(csv.find("1,1,scripted\n"), std::string::npos);

  EXPECT_EQ(cli("score --annotations " + q(tmp.path()) + " --rubrics data/rubrics").code, 2);  // nothing to score
  write_text_file(tmp / "r" / "keep.txt", "");
  EXPECT_EQ(cli("score --annotations tests/fixtures/annotations --rubrics " + q(tmp / "r")).code, 2);
}

TEST(Cli, MetricErrorsExitNine) {
  TempDir tmp;
  std::filesystem::create_directories(tmp / "rubrics");
  std::filesystem::copy_file(source_dir() / "data/rubrics/shop_1.json", tmp / "rubrics" / "shop_1.json");
  EXPECT_EQ(cli("score --annotations tests/fixtures/annotations --rubrics " + q(tmp / "rubrics")).code, 9);
}

TEST(Cli, AnnotateWritesRecord) {
  TempDir tmp;
  const std::string traj_dir = (source_dir() / "tests/golden/shopping/shop_1").string();
  // Six steps, five reflected; then three rubric items.
  std::string answers;
  for (int i = 0; i < 5; ++i) answers += "y\ny\n";
  answers += "y\n1\n3\n\n";
  const Outcome r = cli("annotate --trajectory '" + traj_dir + "' --rubrics data/rubrics/shop_1.json --model demo --out " +
                            q(tmp / "a.json"),
                        answers);
  ASSERT_EQ(r.code, 0) << r.output;
  const Json a = read_json_file(tmp / "a.json");
  EXPECT_EQ(a.at("task_id"), "shop_1");
  EXPECT_EQ(a.at("model"), "demo");
  EXPECT_EQ(a.at("trajectory_length"), 6);
  EXPECT_TRUE(a.at("rubric")[2].at("fulfilled_at_step").is_null());
}

}  // namespace
}  // namespace phoneagent
