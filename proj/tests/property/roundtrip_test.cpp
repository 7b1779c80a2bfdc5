#include <gtest/gtest.h>

#include <random>

#include "phoneagent/agents/action_parser.hpp"
#include "phoneagent/agents/agents.hpp"
#include "phoneagent/agents/grammar.hpp"
#include "phoneagent/core/memory_io.hpp"
#include "phoneagent/eval/benchmark.hpp"
#include "random_graph.hpp"
#include "testkit.hpp"

namespace phoneagent {
namespace {

constexpr int kTrials = 300;

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Text with the characters that tend to break escaping. No carriage returns:
// the section reader strips a trailing \r the way it strips CRLF endings.
std::string random_text(std::mt19937_64& rng, int max_len = 24) {
  static const std::string alphabet = "abcXYZ 019\"\\\n\t(),=:*#`_-";
  std::string out;
  const int n = uniform(rng, 0, max_len);
  for (int i = 0; i < n; ++i) out += alphabet[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(alphabet.size()) - 1))];
  return out;
}

// Multi-line content, trimmed like parsed content, with lines that look like
// labels or escapes mixed in.
std::string random_content(std::mt19937_64& rng) {
  static const std::vector<std::string> tricky{"PLAN: fake",   "**Subgoal:** x", "### THOUGHT:", "\\PLAN: y",
                                               "\\\\ slashes", "  notes: z",     "- 1. step",    ""};
  std::string out;
  const int lines = uniform(rng, 1, 5);
  for (int i = 0; i < lines; ++i) {
    if (i > 0) out += '\n';
    if (uniform(rng, 0, 2) == 0) {
      out += tricky[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(tricky.size()) - 1))];
    } else {
      std::string line = random_text(rng);
      std::erase(line, '\n');
      out += line;
    }
  }
  out = trim(out);
  return out.empty() ? "x" : out;  // required sections reject empty content
}

TEST(RoundTrip, SectionsSurviveFormatting) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < kTrials; ++t) {
    const ManagerOutput m{random_content(rng), random_content(rng), random_content(rng)};
    EXPECT_EQ(parse_manager_output(format_manager_output(m)), m) << format_manager_output(m);

    ReflectorOutput r;
    r.outcome = static_cast<Outcome>(uniform(rng, 0, 2));
    if (r.outcome == Outcome::A) {
      r.progress = random_content(rng);
    } else {
      r.error_description = random_content(rng);
      r.suspected_cause = random_content(rng);
      r.suggested_fix = random_content(rng);
    }
    EXPECT_EQ(parse_reflector_output(format_reflector_output(r)), r) << format_reflector_output(r);

    const NotetakerOutput n{random_content(rng)};
    EXPECT_EQ(parse_notetaker_output(format_notetaker_output(n)), n);
  }
}

AtomicOperation random_any_operation(std::mt19937_64& rng) {
  const auto specs = atomic_operation_specs();
  const OperationSpec& spec = specs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(specs.size()) - 1))];
  std::vector<ArgValue> values;
  for (const auto& p : spec.params) {
    if (p.kind == ParamKind::Integer) {
      values.emplace_back(static_cast<std::int64_t>(uniform(rng, 0, 5000)));
    } else {
      values.emplace_back(random_text(rng));
    }
  }
  return make_operation(spec.name, values);
}

TEST(RoundTrip, ActionsParseBackFromTheirCallForm) {
  std::mt19937_64 rng(12);
  LongTermMemory memory;
  memory.add_shortcut(testkit::tap_type_and_enter(), Provenance::seed());
  for (int t = 0; t < kTrials; ++t) {
    const Action op{random_any_operation(rng)};
    EXPECT_EQ(parse_action(to_string(op), memory), op) << to_string(op);

    const Action call{ShortcutCall{"Tap_Type_and_Enter",
                                   {{"x", std::int64_t{uniform(rng, 0, 700)}},
                                    {"y", std::int64_t{uniform(rng, 0, 1500)}},
                                    {"text", random_text(rng)}}}};
    EXPECT_EQ(parse_action(to_string(call), memory), call) << to_string(call);

    const Action stop{Stop{random_text(rng)}};
    EXPECT_EQ(parse_action(to_string(stop), memory), stop) << to_string(stop);

    const OperatorOutput o{random_content(rng), op, random_content(rng)};
    EXPECT_EQ(parse_operator_output(format_operator_output(o), memory), o) << format_operator_output(o);
  }
}

TEST(RoundTrip, MemoryFilesAreStable) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    const auto graph = testkit::random_graph(rng);
    LongTermMemory memory;
    const int shortcuts = uniform(rng, 0, 4);
    for (int i = 0; i < shortcuts; ++i) {
      Shortcut s = testkit::random_shortcut(rng, *graph).shortcut;
      s.name += "_" + std::to_string(i);
      s.description = random_text(rng);
      memory.add_shortcut(std::move(s), i % 2 == 0 ? Provenance::seed() : Provenance::evolved("task_" + std::to_string(t)));
    }
    const int tips = uniform(rng, 0, 4);
    for (int i = 0; i < tips; ++i) memory.add_tip(random_text(rng) + "x", Provenance::seed());

    const std::string text = serialize_memory(memory);
    const LongTermMemory back = memory_from_json(Json::parse(text));
    EXPECT_EQ(back, memory);
    EXPECT_EQ(serialize_memory(back), text);
  }
}

TEST(RoundTrip, RubricsAndAnnotations) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < kTrials; ++t) {
    RubricSheet sheet{"task_" + std::to_string(t), {}};
    const int items = uniform(rng, 1, 6);
    for (int i = 1; i <= items; ++i) {
      sheet.items.push_back({i, random_text(rng) + "x",
                             uniform(rng, 0, 1) == 0 ? RubricItem::Kind::Milestone
                                                     : RubricItem::Kind::SatisfactionCriterion});
    }
    EXPECT_EQ(rubrics_from_json(rubrics_to_json(sheet)), sheet);

    AnnotationRecord a;
    a.task_id = sheet.task_id;
    a.model = random_text(rng) + "m";
    a.trajectory_length = uniform(rng, 0, 12);
    a.exit_reason = static_cast<ExitReason>(uniform(rng, 0, 4));
    for (int i = 0; i < a.trajectory_length; ++i) {
      AnnotationRecord::StepJudgment s;
      s.action_correct = uniform(rng, 0, 1) == 1;
      if (uniform(rng, 0, 3) > 0) s.reflection_correct = uniform(rng, 0, 1) == 1;
      a.steps.push_back(s);
    }
    for (int i = 1; i <= items; ++i) {
      std::optional<int> at;
      if (uniform(rng, 0, 2) > 0) at = uniform(rng, 0, a.trajectory_length);
      a.rubric.push_back({i, at});
    }
    EXPECT_EQ(annotation_from_json(annotation_to_json(a)), a);
  }
}

TEST(RoundTrip, Benchmark) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 50; ++t) {
    std::vector<TaskQuery> tasks;
    const int n = uniform(rng, 1, 5);
    for (int i = 0; i < n; ++i) {
      TaskQuery q{"t" + std::to_string(i), random_text(rng) + "q", "scenario", {}};
      for (int a = uniform(rng, 0, 2); a > 0; --a) q.apps.push_back("App" + std::to_string(a));
      tasks.push_back(std::move(q));
    }
    EXPECT_EQ(benchmark_from_json(benchmark_to_json(tasks)), tasks);
  }
}

}  // namespace
}  // namespace phoneagent
