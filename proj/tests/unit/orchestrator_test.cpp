#include <gtest/gtest.h>

#include "phoneagent/core/errors.hpp"
#include "phoneagent/orchestrator/hash.hpp"
#include "phoneagent/orchestrator/termination.hpp"
#include "phoneagent/perception/sim_perceptor.hpp"
#include "testkit.hpp"

namespace phoneagent {
namespace {

using namespace testkit;

Action tap(int x) { return Action(AtomicOperation(op::Tap{x, x})); }
Action swipe() { return Action(AtomicOperation(op::Swipe{1, 900, 1, 100})); }

TEST(Termination, PriorityOrder) {
  const OrchestratorConfig c;
  const std::vector<Outcome> fails(3, Outcome::C);
  const std::vector<Action> same(4, tap(1));
  EXPECT_EQ(check_termination({true, 40, fails, same}, c), ExitReason::OtherError);
  EXPECT_EQ(check_termination({false, 40, fails, same}, c), ExitReason::MaxIterations);
  EXPECT_EQ(check_termination({false, 4, fails, same}, c), ExitReason::MaxConsecutiveErrors);
  const std::vector<Outcome> ok(4, Outcome::A);
  EXPECT_EQ(check_termination({false, 4, ok, same}, c), ExitReason::MaxRepeatedActions);
  const std::vector<Action> three(3, tap(1));
  EXPECT_FALSE(check_termination({false, 3, ok, three}, c).has_value());
}

TEST(Termination, RepeatsIgnoreExemptActions) {
  EXPECT_EQ(trailing_repeats(std::vector<Action>{tap(1), tap(2), tap(2)}), 2);
  EXPECT_EQ(trailing_repeats(std::vector<Action>(9, swipe())), 0);
  EXPECT_EQ(trailing_repeats(std::vector<Action>{}), 0);
  const OrchestratorConfig c;
  const std::vector<Outcome> ok(9, Outcome::A);
  EXPECT_FALSE(check_termination({false, 9, ok, std::vector<Action>(9, swipe())}, c).has_value());
  const std::vector<Outcome> mixed{Outcome::C, Outcome::C, Outcome::A};
  EXPECT_FALSE(check_termination({false, 3, mixed, std::vector<Action>{tap(1), tap(2), tap(3)}}, c).has_value());
}

TEST(Hash, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_THROW(sha256_file("/no/such/file"), NotFoundError);
}

TEST(RunTask, SearchRecordsEveryArtifact) {
  TempDir tmp;
  ScriptWriter w;
  w.step("Open_App(\"Shop\")");
  w.step("Tap(320, 160)");
  w.step("Type(\"steak\")");
  w.step("Enter()");
  w.step("Stop(\"found it\")", std::nullopt);
  const auto r = run_scripted(w.book(), tmp / "t", {}, {}, demo_graph(), {}, true);
  const Trajectory& t = r.run.trajectory;
  EXPECT_EQ(t.exit_reason, ExitReason::SelfReportedSuccess);
  EXPECT_EQ(t.exit_detail, "found it");
  EXPECT_EQ(t.decision_iterations(), 5);
  EXPECT_EQ(t.operations_executed, 4);
  EXPECT_EQ(r.final_state.page, "shop.results_steak");
  EXPECT_FALSE(t.steps.back().outcome.has_value());

  const Json traj = read_json_file(tmp / "t" / "trajectory.json");
  EXPECT_EQ(traj.at("format"), kTrajectoryFormat);
  EXPECT_EQ(traj.at("exit_reason"), "self_reported_success");
  EXPECT_EQ(traj.at("steps").size(), 5u);
  EXPECT_TRUE(std::filesystem::exists(tmp / "t" / "timing.json"));
  EXPECT_TRUE(std::filesystem::exists(tmp / "t" / "screens" / "screen_0000.png"));
  EXPECT_TRUE(std::filesystem::exists(tmp / "t" / "screens" / "screen_0004.json"));
  const std::string pre = t.steps[1].pre_screen;
  EXPECT_FALSE(pre.empty());
  EXPECT_TRUE(std::filesystem::path(pre).is_relative());
  // Manager, Operator, Reflector, Notetaker for four steps; Manager and Operator for Stop.
  EXPECT_EQ(r.backend_calls, 4 * 4 + 2);
  EXPECT_EQ(audited_prompts(tmp / "t" / "model_calls", "reflector").size(), 4u);
}

TEST(RunTask, ParseFailureEndsAsOtherError) {
  TempDir tmp;
  ScriptWriter w;
  w.add("manager", manager_reply());
  w.add("operator", "I think I should tap somewhere.");
  const auto r = run_scripted(w.book(), tmp / "t");
  EXPECT_EQ(r.run.trajectory.exit_reason, ExitReason::OtherError);
  ASSERT_EQ(r.run.trajectory.steps.size(), 1u);
  EXPECT_TRUE(r.run.trajectory.steps[0].step_error.has_value());
  EXPECT_FALSE(r.run.trajectory.exit_detail.empty());
}

TEST(RunTask, ScriptMissPropagates) {
  TempDir tmp;
  ScriptWriter w;
  w.add("manager", manager_reply());
  EXPECT_THROW(run_scripted(w.book(), tmp / "t"), ScriptMissError);
}

TEST(RunTask, OutOfBoundsTapIsReflectedNotFatal) {
  TempDir tmp;
  ScriptWriter w;
  w.step("Tap(5000, 10)", reflect_fail(Outcome::C, "nothing changed"));
  w.step("Stop(\"\")", std::nullopt);
  const auto r = run_scripted(w.book(), tmp / "t");
  const auto& s = r.run.trajectory.steps[0];
  EXPECT_EQ(s.failed_operation, 0u);
  EXPECT_FALSE(s.execution_failure.empty());
  EXPECT_EQ(s.outcome, Outcome::C);
  EXPECT_EQ(r.run.trajectory.operations_executed, 0);
  EXPECT_EQ(r.final_state.steps, 0);
}

TEST(RunTask, ShortcutExpandsInOneIteration) {
  TempDir tmp;
  LongTermMemory memory;
  memory.add_shortcut(tap_type_and_enter(), Provenance::seed());
  ScriptWriter w;
  w.step("Open_App(\"Shop\")");
  w.step("Tap_Type_and_Enter(320, 160, \"oranges\")");
  w.step("Stop(\"\")", std::nullopt);
  const auto r = run_scripted(w.book(), tmp / "t", {}, memory);
  const auto& s = r.run.trajectory.steps[1];
  EXPECT_EQ(s.operations, (std::vector<std::string>{"Tap(320, 160)", "Type(\"oranges\")", "Enter()"}));
  EXPECT_EQ(s.trace_screens.size(), 3u);  // one per operation
  EXPECT_EQ(r.final_state.page, "shop.results_oranges");
  EXPECT_EQ(r.run.trajectory.operations_executed, 4);
}

TEST(RunTask, StrictGateDeniesWithoutTouchingDevice) {
  TempDir tmp;
  LongTermMemory memory;
  memory.add_shortcut(tap_type_and_enter(), Provenance::seed());
  OrchestratorConfig config;
  config.strict_precondition_gate = true;
  ScriptWriter w;
  w.step("Tap_Type_and_Enter(320, 160, \"oranges\")", std::nullopt);  // on the home screen
  w.step("Stop(\"\")", std::nullopt);
  const auto r = run_scripted(w.book(), tmp / "t", config, memory);
  const auto& s = r.run.trajectory.steps[0];
  ASSERT_TRUE(s.gate_denial.has_value());
  EXPECT_TRUE(s.operations.empty());
  EXPECT_EQ(s.outcome, Outcome::C);
  ASSERT_TRUE(s.error.has_value());
  EXPECT_EQ(r.final_state.steps, 0);
  EXPECT_TRUE(audited_prompts(tmp / "t" / "model_calls", "reflector").empty());
}

TEST(RunTask, EscalationReachesTheManager) {
  TempDir tmp;
  ScriptWriter w;
  w.step("Tap(10, 10)", reflect_fail(Outcome::C, "first miss"));
  w.step("Tap(20, 20)", reflect_fail(Outcome::B, "second miss"));
  w.step("Stop(\"\")", std::nullopt);
  const auto r = run_scripted(w.book(), tmp / "t");
  EXPECT_FALSE(r.run.trajectory.steps[1].escalated);
  EXPECT_TRUE(r.run.trajectory.steps[2].escalated);
  const auto prompts = audited_prompts(tmp / "t" / "model_calls", "manager");
  ASSERT_EQ(prompts.size(), 3u);
  EXPECT_NE(prompts[2].find("first miss"), std::string::npos);
  EXPECT_NE(prompts[2].find("second miss"), std::string::npos);
}

}  // namespace
}  // namespace phoneagent
