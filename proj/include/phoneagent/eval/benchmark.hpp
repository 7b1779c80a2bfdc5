#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "phoneagent/core/errors.hpp"
#include "phoneagent/core/json_fields.hpp"
#include "phoneagent/core/screen.hpp"

namespace phoneagent {

inline constexpr std::string_view kBenchmarkFormat = "phoneagent.benchmark.v1";
inline constexpr std::string_view kRubricFormat = "phoneagent.rubrics.v1";
inline constexpr std::string_view kAnnotationFormat = "phoneagent.annotation.v1";

/// A metric that is undefined for its input (e.g. accuracy over zero steps)
/// or whose inputs disagree with each other.
class MetricError : public Error {
 public:
  using Error::Error;
};

/// Task list: {"format": "phoneagent.benchmark.v1", "tasks": [task, ...]}.
std::vector<TaskQuery> benchmark_from_json(const Json& value);
Json benchmark_to_json(const std::vector<TaskQuery>& tasks);
std::vector<TaskQuery> load_benchmark(const std::filesystem::path& path);

struct RubricItem {
  enum class Kind { Milestone, SatisfactionCriterion };
  int id = 0;
  std::string text;
  Kind kind = Kind::Milestone;
  bool operator==(const RubricItem&) const = default;
};

/// {"format": "phoneagent.rubrics.v1", "task_id", "items": [{"id", "text",
/// "kind": "milestone" | "satisfaction_criterion"}]}. Ids are dense from 1 in
/// any order; at least one item.
struct RubricSheet {
  std::string task_id;
  std::vector<RubricItem> items;
  bool operator==(const RubricSheet&) const = default;
};

Json rubrics_to_json(const RubricSheet& sheet);
RubricSheet rubrics_from_json(const Json& value);
RubricSheet load_rubrics(const std::filesystem::path& path);

/// Human judgment of one trajectory.
///   rubric[i].fulfilled_at_step  number of steps after which the item holds
///                                (0 = already on the first screen, up to
///                                trajectory_length), or null
///   steps[i].reflection_correct  null when the step had no reflection
struct AnnotationRecord {
  struct Fulfillment {
    int rubric_id = 0;
    std::optional<int> fulfilled_at_step;
    bool operator==(const Fulfillment&) const = default;
  };
  struct StepJudgment {
    bool action_correct = false;
    std::optional<bool> reflection_correct;
    bool operator==(const StepJudgment&) const = default;
  };

  std::string task_id;
  std::string model;  // tag used to group SSS curves
  int trajectory_length = 0;
  ExitReason exit_reason = ExitReason::SelfReportedSuccess;
  std::vector<Fulfillment> rubric;
  std::vector<StepJudgment> steps;  // exactly trajectory_length entries
  bool operator==(const AnnotationRecord&) const = default;
};

Json annotation_to_json(const AnnotationRecord& record);
AnnotationRecord annotation_from_json(const Json& value);
AnnotationRecord load_annotation(const std::filesystem::path& path);

/// Every *.json annotation in `dir`, sorted by file name. Throws
/// ConfigError when there are none.
std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& dir);

}  // namespace phoneagent
