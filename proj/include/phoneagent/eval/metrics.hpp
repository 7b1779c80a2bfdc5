#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phoneagent/eval/benchmark.hpp"
#include "phoneagent/eval/ratio.hpp"

namespace phoneagent {

/// Fulfilled items over all items. The annotation must cover exactly the
/// sheet's ids; MetricError otherwise.
Ratio satisfaction_score(const RubricSheet& rubrics, const AnnotationRecord& annotation);

/// Correct actions over annotated steps. MetricError when there are none.
Ratio action_accuracy(const AnnotationRecord& annotation);

/// Correct reflections over steps that had one. MetricError when none did.
Ratio reflection_accuracy(const AnnotationRecord& annotation);

/// Runs that did not end in self-reported success, over all runs.
/// MetricError for an empty list.
Ratio termination_error_rate(std::span<const ExitReason> exits);

struct SssPoint {
  Ratio x;  // i / trajectory_length
  Ratio y;  // share of items fulfilled within i steps
  bool operator==(const SssPoint&) const = default;
};

/// Points for i = 1..trajectory_length; empty for a zero-length trajectory.
std::vector<SssPoint> sss_curve(const RubricSheet& rubrics, const AnnotationRecord& annotation);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
};

/// Ordinary least squares over the pooled points. MetricError with fewer
/// than two points or when all x are equal.
LinearFit sss_regression(std::span<const std::vector<SssPoint>> curves);

/// Pooled report over annotated tasks: SS is the mean of per-task scores;
/// AA and RA pool steps across tasks; TE is over tasks. A metric with no
/// applicable steps is reported as absent rather than zero.
struct MetricsReport {
  int tasks = 0;
  Ratio satisfaction;
  std::optional<Ratio> action_accuracy;
  std::optional<Ratio> reflection_accuracy;
  Ratio termination_error;
};

/// `rubrics` maps task id to its sheet; every annotation needs one.
MetricsReport compute_report(std::span<const AnnotationRecord> annotations,
                             const std::map<std::string, RubricSheet>& rubrics);

Json report_to_json(const MetricsReport& report);
std::string report_to_table(const MetricsReport& report);

/// "x,y,model" rows for each annotation's curve.
std::string sss_csv(std::span<const AnnotationRecord> annotations, const std::map<std::string, RubricSheet>& rubrics);

}  // namespace phoneagent
