#include <gtest/gtest.h>

#include "phoneagent/agents/action_parser.hpp"
#include "phoneagent/agents/evolution.hpp"
#include "phoneagent/agents/formatting.hpp"
#include "phoneagent/agents/grammar.hpp"
#include "phoneagent/agents/retrieval.hpp"
#include "phoneagent/core/errors.hpp"
#include "phoneagent/core/memory_io.hpp"
#include "phoneagent/perception/sim_perceptor.hpp"
#include "testkit.hpp"

namespace phoneagent {
namespace {

using testkit::tap_type_and_enter;

LongTermMemory with_shortcut() {
  LongTermMemory m;
  m.add_shortcut(tap_type_and_enter(), Provenance::seed());
  return m;
}

// Grammar -------------------------------------------------------------------

TEST(Sections, LabelsAreCaseInsensitiveAndMultiline) {
  const auto s = Sections::parse("preamble\n**Plan:** 1. a\n2. b\n### subgoal: open Shop\n", {"PLAN", "SUBGOAL"});
  EXPECT_EQ(s.required("PLAN"), "1. a\n2. b");
  EXPECT_EQ(s.required("SUBGOAL"), "open Shop");
  EXPECT_EQ(s.optional("THOUGHT"), "");
  EXPECT_THROW(s.required("THOUGHT"), ParseError);
  EXPECT_THROW(Sections::parse("PLAN: a\nPLAN: b", {"PLAN"}), ParseError);
}

TEST(Sections, FormatEscapesLabelLikeLines) {
  const std::string text = format_sections({{"NOTES", "price list\nPLAN: not a label"}});
  const auto s = Sections::parse(text, {"NOTES", "PLAN"});
  EXPECT_EQ(s.required("NOTES"), "price list\nPLAN: not a label");
  EXPECT_EQ(s.find("PLAN"), nullptr);
}

TEST(Sections, FirstLineKeepsStarsAndTrailingSpace) {
  for (const std::string content : {"**bold** start", "ends in space \nnext"}) {
    const auto s = Sections::parse(format_sections({{"NOTES", content}}), {"NOTES"});
    EXPECT_EQ(s.required("NOTES"), content);
  }
}

// Action parser --------------------------------------------------------------

TEST(ParseCall, PositionalNamedAndEscapes) {
  const CallExpression c = parse_call("`Type(\"say \\\"hi\\\"\\n\")`");
  EXPECT_EQ(c.name, "Type");
  ASSERT_EQ(c.positional.size(), 1u);
  EXPECT_EQ(std::get<std::string>(c.positional[0]), "say \"hi\"\n");
  const CallExpression n = parse_call("Tap(x=5, y=-3)");
  ASSERT_EQ(n.named.size(), 2u);
  EXPECT_EQ(std::get<std::int64_t>(n.named[1].second), -3);
  EXPECT_EQ(parse_call("Enter").name, "Enter");
  EXPECT_THROW(parse_call("Tap(x=1, 2)"), ParseError);
  EXPECT_THROW(parse_call("Tap(1, 2"), ParseError);
  EXPECT_THROW(parse_call("Type(\"unterminated)"), ParseError);
}

TEST(ParseAction, ResolvesOperationsStopAndShortcuts) {
  const LongTermMemory m = with_shortcut();
  EXPECT_EQ(parse_action("Tap(1, 2)", m), Action(AtomicOperation(op::Tap{1, 2})));
  EXPECT_EQ(parse_action("Swipe(x1=1, y1=2, x2=3, y2=4)", m), Action(AtomicOperation(op::Swipe{1, 2, 3, 4})));
  EXPECT_EQ(parse_action("Stop(\"done\")", m), Action(Stop{"done"}));
  EXPECT_EQ(parse_action("Stop", m), Action(Stop{""}));
  const Action sc = parse_action("Tap_Type_and_Enter(text=\"milk\", x=1, y=2)", m);
  const auto& call = std::get<ShortcutCall>(sc);
  ASSERT_EQ(call.arguments.size(), 3u);
  EXPECT_EQ(call.arguments[0].first, "x");  // declaration order
  EXPECT_EQ(call.arguments[2].first, "text");
  EXPECT_THROW(parse_action("Fly(3)", m), ParseError);
  EXPECT_THROW(parse_action("Tap(1)", m), ParseError);
  EXPECT_THROW(parse_action("Tap(\"a\", 2)", m), ParseError);
  EXPECT_THROW(parse_action("Tap_Type_and_Enter(1, 2)", m), ParseError);
  EXPECT_THROW(parse_action("Tap_Type_and_Enter(1, 2, \"a\")", LongTermMemory{}), ParseError);
}

// Response formats -----------------------------------------------------------

TEST(Responses, FormatParseRoundTrips) {
  const LongTermMemory m = with_shortcut();
  const ManagerOutput mo{"think", "1. a\n2. b", "a"};
  EXPECT_EQ(parse_manager_output(format_manager_output(mo)), mo);
  const OperatorOutput oo{"", Action(AtomicOperation(op::Type{"milk"})), "box shows milk"};
  EXPECT_EQ(parse_operator_output(format_operator_output(oo), m), oo);
  const ReflectorOutput ok{Outcome::A, "searched", "", "", ""};
  EXPECT_EQ(parse_reflector_output(format_reflector_output(ok)), ok);
  const ReflectorOutput bad{Outcome::B, "", "wrong page", "mis-tap", "go back"};
  EXPECT_EQ(parse_reflector_output(format_reflector_output(bad)), bad);
  const NotetakerOutput no{"steak $12"};
  EXPECT_EQ(parse_notetaker_output(format_notetaker_output(no)), no);
  const TipReflectorOutput tips{{"Clear the box.", "Wait after saving."}};
  EXPECT_EQ(parse_tip_reflector_output(format_tip_reflector_output(tips)), tips);
  EXPECT_TRUE(parse_tip_reflector_output("TIPS: none").tips.empty());
  const ShortcutReflectorOutput sr{{shortcut_to_json(tap_type_and_enter())}};
  EXPECT_EQ(parse_shortcut_reflector_output(format_shortcut_reflector_output(sr)), sr);
  const TipRetrieverOutput tr{{1, 3}};
  EXPECT_EQ(parse_tip_retriever_output(format_tip_retriever_output(tr)), tr);
  const ShortcutRetrieverOutput srr{{"Tap_Type_and_Enter"}};
  EXPECT_EQ(parse_shortcut_retriever_output(format_shortcut_retriever_output(srr)), srr);
}

TEST(Responses, ReflectorOutcomeRules) {
  EXPECT_EQ(parse_reflector_output("OUTCOME: a) success\nPROGRESS: ok").outcome, Outcome::A);
  EXPECT_THROW(parse_reflector_output("OUTCOME: D\nPROGRESS: x"), ParseError);
  EXPECT_THROW(parse_reflector_output("OUTCOME: Absolutely\nPROGRESS: x"), ParseError);
  EXPECT_THROW(parse_reflector_output("OUTCOME: B\nERROR_DESCRIPTION: x"), ParseError);
  EXPECT_THROW(parse_manager_output("PLAN: a"), ParseError);
}

TEST(Responses, ShortcutReflectorAcceptsFencesAndNone) {
  const auto fenced = parse_shortcut_reflector_output("SHORTCUTS:\n```json\n[{\"name\": \"A\"}]\n```");
  ASSERT_EQ(fenced.proposals.size(), 1u);
  EXPECT_EQ(fenced.proposals[0]["name"], "A");
  EXPECT_TRUE(parse_shortcut_reflector_output("SHORTCUTS: none").proposals.empty());
  EXPECT_THROW(parse_shortcut_reflector_output("SHORTCUTS: [oops"), ParseError);
  EXPECT_THROW(parse_tip_retriever_output("SELECTED_TIPS: one, two"), ParseError);
}

// Formatting -----------------------------------------------------------------

TEST(Formatting, RecordPrefixes) {
  const std::vector<Tip> tips{{1, "Clear first.\nThen type."}, {2, "Wait."}};
  EXPECT_EQ(format_tips(tips), "1. Clear first.\n  Then type.\n2. Wait.\n");
  const std::vector<Shortcut> sc{tap_type_and_enter()};
  const std::string text = format_shortcuts(sc);
  EXPECT_EQ(text.rfind("- Shortcut Tap_Type_and_Enter(x, y, text): ", 0), 0u);
  EXPECT_NE(text.find("  operations: Tap(x=x, y=y) -> Type(text=text) -> Enter\n"), std::string::npos);
  const std::vector<ErrorRecord> errs{{3, "wrong page", "mis-tap", ""}};
  EXPECT_EQ(format_error_history(errs), "- Error at step 3: wrong page\n  suspected cause: mis-tap\n");
  const std::vector<TaskQuery> tasks{{"a", "Buy milk", "", {}}, {"b", "Buy eggs", "", {}}};
  EXPECT_EQ(format_task_list(tasks), "- Task: Buy milk\n- Task: Buy eggs\n");
}

// Templates ------------------------------------------------------------------

TEST(Templates, SubstitutionAndConditionalBlocks) {
  const TemplateVars vars{{"a", "x"}, {"b", ""}};
  EXPECT_EQ(render_template("[{{a}}]{{#b}}hidden {{b}}{{/b}}{{#a}}shown{{/a}}", vars), "[x]shown");
  EXPECT_THROW(render_template("{{missing}}", vars), std::invalid_argument);
  const PromptLibrary lib = PromptLibrary::builtin();
  for (const char* name : {"manager", "operator", "reflector", "notetaker", "tip_reflector", "shortcut_reflector",
                           "tip_retriever", "shortcut_retriever"}) {
    EXPECT_FALSE(lib.get(name).empty()) << name;
  }
  EXPECT_THROW(lib.get("nope"), std::out_of_range);
  EXPECT_THROW(PromptLibrary::with_overrides("/no/such/dir"), NotFoundError);
}

TEST(Templates, OverrideDirectoryReplacesOneTemplate) {
  testkit::TempDir tmp;
  write_text_file(tmp / "notetaker.txt", "custom {{task}}");
  const PromptLibrary lib = PromptLibrary::with_overrides(tmp.path());
  EXPECT_EQ(lib.get("notetaker"), "custom {{task}}");
  EXPECT_EQ(lib.get("manager"), PromptLibrary::builtin().get("manager"));
}

// Requests -------------------------------------------------------------------

class Requests : public ::testing::Test {
 protected:
  PromptLibrary prompts = PromptLibrary::builtin();
  TaskQuery task = testkit::demo_task("t", "Find steak in Shop.");
  SimDevice dev{testkit::demo_graph(), SimOptions{false}};
  ScreenState screen = dev.execute(op::OpenApp{"Shop"});
  PerceptionResult perception = SimPerceptor().perceive(screen);
  WorkingMemory working;
  LongTermMemory memory = with_shortcut();
  MemoryView view = MemoryView::of(memory);
};

TEST_F(Requests, ManagerSeesNoPerceptionAndEscalatesOnlyWithErrors) {
  const std::string calm = request_text(build_manager_request(prompts, {task, screen, working, view, {}}));
  EXPECT_NE(calm.find("Find steak in Shop."), std::string::npos);
  EXPECT_EQ(calm.find(format_perception(perception)), std::string::npos);
  EXPECT_EQ(calm.find("### Recent errors"), std::string::npos);
  const std::vector<ErrorRecord> errs{{1, "first failure", "c", "f"}, {2, "second failure", "c", "f"}};
  const std::string hot = request_text(build_manager_request(prompts, {task, screen, working, view, errs}));
  EXPECT_NE(hot.find("### Recent errors"), std::string::npos);
  EXPECT_NE(hot.find("second failure"), std::string::npos);
}

TEST_F(Requests, OperatorSeesPerceptionTipsShortcutsAndHistory) {
  memory.add_tip("Clear the search box first.", Provenance::seed());
  view = MemoryView::of(memory);
  for (int i = 1; i <= 7; ++i) {
    working.record({i, Action(AtomicOperation(op::Tap{i, i})), Outcome::A, ""}, std::nullopt);
  }
  const std::string text =
      request_text(build_operator_request(prompts, {task, screen, perception, working, view, memory, 5}));
  EXPECT_NE(text.find(format_perception(perception)), std::string::npos);
  EXPECT_NE(text.find("1. Clear the search box first."), std::string::npos);
  EXPECT_NE(text.find(format_shortcuts(view.shortcuts)), std::string::npos);
  EXPECT_EQ(text.find("- Step 2: "), std::string::npos);
  EXPECT_NE(text.find("- Step 3: "), std::string::npos);
  EXPECT_NE(text.find("- Step 7: "), std::string::npos);
}

TEST_F(Requests, ReflectorGetsBothScreens) {
  const ScreenState after = dev.execute(op::Tap{320, 160});
  const PerceptionResult p_after = SimPerceptor().perceive(after);
  const Action action(AtomicOperation(op::Tap{320, 160}));
  const std::string exp = "search box focused";
  const std::string text = request_text(
      build_reflector_request(prompts, {task, screen, perception, after, p_after, action, exp, working}));
  EXPECT_NE(text.find("Tap(320, 160)"), std::string::npos);
  EXPECT_NE(text.find("search box focused"), std::string::npos);
  EXPECT_NE(text.find(format_perception(p_after)), std::string::npos);
}

// Retrieval ------------------------------------------------------------------

TEST(Retrieval, ThresholdsAndSelection) {
  LongTermMemory memory;
  for (int i = 1; i <= 4; ++i) memory.add_tip("tip " + std::to_string(i), Provenance::seed());
  memory.add_shortcut(tap_type_and_enter(), Provenance::seed());
  const PromptLibrary prompts = PromptLibrary::builtin();
  OrchestratorConfig config;
  config.retrieval_tip_threshold = 2;

  ScriptedBackend none({});
  const AgentContext idle{none, prompts};
  const RetrievalResult off = retrieve_memory(idle, testkit::demo_task(), memory, config);
  EXPECT_FALSE(off.tips_retrieved);
  EXPECT_EQ(off.view.tips.size(), 4u);

  config.retrieval_enabled = true;
  ScriptBook book;
  book.add({"tip_retriever", 1, std::nullopt, std::nullopt, "SELECTED_TIPS: 3, 1, 99"});
  ScriptedBackend backend(book);
  const AgentContext ctx{backend, prompts};
  const RetrievalResult r = retrieve_memory(ctx, testkit::demo_task(), memory, config);
  EXPECT_TRUE(r.tips_retrieved);
  EXPECT_FALSE(r.shortcuts_retrieved);  // 1 shortcut is under the threshold
  ASSERT_EQ(r.view.tips.size(), 2u);
  EXPECT_EQ(r.view.tips[0].text, "tip 1");  // memory order
  EXPECT_EQ(r.view.tips[1].text, "tip 3");
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.view.shortcuts.size(), 1u);
}

// Evolution ------------------------------------------------------------------

class Evolution : public ::testing::Test {
 protected:
  PromptLibrary prompts = PromptLibrary::builtin();
  TaskQuery task = testkit::demo_task("shop_1", "Find steak.");
  WorkingMemory working;
  std::vector<TaskQuery> future{testkit::demo_task("shop_2", "Find oranges.")};
  LongTermMemory memory;
  ScriptBook book;

  void SetUp() override { memory.add_tip("old tip", Provenance::seed()); }

  EvolutionReport run() {
    ScriptedBackend backend(book);
    const AgentContext ctx{backend, prompts};
    return evolve_memory(ctx, {task, working, future}, memory);
  }
};

TEST_F(Evolution, TipsKeepProvenanceAndShortcutsAreAdmitted) {
  book.add({"tip_reflector", 1, std::nullopt, std::nullopt, "TIPS:\n1. old tip\n2. new tip"});
  book.add({"shortcut_reflector", 1, std::nullopt, std::nullopt,
            format_shortcut_reflector_output({{shortcut_to_json(tap_type_and_enter())}})});
  const EvolutionReport r = run();
  EXPECT_TRUE(r.tips_updated);
  ASSERT_EQ(memory.tips().size(), 2u);
  EXPECT_EQ(memory.tips()[0].provenance, Provenance::seed());
  EXPECT_EQ(memory.tips()[1].provenance, Provenance::evolved("shop_1"));
  EXPECT_EQ(r.admitted_shortcuts, std::vector<std::string>{"Tap_Type_and_Enter"});
  EXPECT_EQ(memory.find_shortcut("Tap_Type_and_Enter")->provenance, Provenance::evolved("shop_1"));
  const Json j = evolution_report_to_json(r);
  EXPECT_EQ(j["admitted_shortcuts"][0], "Tap_Type_and_Enter");
}

TEST_F(Evolution, EmptyTipListAndBadResponsesDegradeToWarnings) {
  book.add({"tip_reflector", 1, std::nullopt, std::nullopt, "TIPS: none"});
  book.add({"shortcut_reflector", 1, std::nullopt, std::nullopt, "no labels at all"});
  const EvolutionReport r = run();
  EXPECT_FALSE(r.tips_updated);
  EXPECT_EQ(memory.tips().size(), 1u);
  EXPECT_GE(r.warnings.size(), 2u);
  EXPECT_TRUE(memory.shortcuts().empty());
}

TEST_F(Evolution, ScriptMissPropagates) {
  EXPECT_THROW(run(), ScriptMissError);
}

TEST_F(Evolution, ReflectorPromptsListUpcomingTasks) {
  const EvolutionInput in{task, working, future};
  const std::string tip = request_text(build_tip_reflector_request(prompts, in, memory));
  EXPECT_NE(tip.find("### Upcoming tasks\n- Task: Find oranges."), std::string::npos);
  const EvolutionInput last{task, working, {}};
  const std::string sc = request_text(build_shortcut_reflector_request(prompts, last, memory));
  EXPECT_EQ(sc.find("### Upcoming tasks"), std::string::npos);
}

}  // namespace
}  // namespace phoneagent
