#include "phoneagent/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace phoneagent {
namespace {

void check_coverage(const RubricSheet& rubrics, const AnnotationRecord& annotation) {
  if (rubrics.task_id != annotation.task_id) {
    throw MetricError("annotation for " + annotation.task_id + " scored against rubrics for " + rubrics.task_id);
  }
  std::set<int> sheet, annotated;
  for (const auto& item : rubrics.items) sheet.insert(item.id);
  for (const auto& f : annotation.rubric) {
    if (!sheet.contains(f.rubric_id)) {
      throw MetricError("annotation for " + annotation.task_id + " names unknown rubric item " +
                        std::to_string(f.rubric_id));
    }
    annotated.insert(f.rubric_id);
  }
  if (annotated != sheet) throw MetricError("annotation for " + annotation.task_id + " does not cover every rubric item");
}

std::string format_ratio(const Ratio& r) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.1f%% (%s)", 100.0 * r.value(), r.to_string().c_str());
  return buffer;
}

Json ratio_json(const std::optional<Ratio>& r) {
  if (!r) return Json();
  return Json{{"num", r->num()}, {"den", r->den()}, {"value", r->value()}};
}

}  // namespace

Ratio satisfaction_score(const RubricSheet& rubrics, const AnnotationRecord& annotation) {
  check_coverage(rubrics, annotation);
  const auto fulfilled = std::count_if(annotation.rubric.begin(), annotation.rubric.end(),
                                       [](const auto& f) { return f.fulfilled_at_step.has_value(); });
  return {fulfilled, static_cast<std::int64_t>(rubrics.items.size())};
}

Ratio action_accuracy(const AnnotationRecord& annotation) {
  if (annotation.steps.empty()) throw MetricError("action accuracy is undefined for " + annotation.task_id + ": no steps");
  const auto correct = std::count_if(annotation.steps.begin(), annotation.steps.end(),
                                     [](const auto& s) { return s.action_correct; });
  return {correct, static_cast<std::int64_t>(annotation.steps.size())};
}

Ratio reflection_accuracy(const AnnotationRecord& annotation) {
  std::int64_t total = 0, correct = 0;
  for (const auto& s : annotation.steps) {
    if (!s.reflection_correct) continue;
    ++total;
    correct += *s.reflection_correct ? 1 : 0;
  }
  if (total == 0) throw MetricError("reflection accuracy is undefined for " + annotation.task_id + ": no reflections");
  return {correct, total};
}

Ratio termination_error_rate(std::span<const ExitReason> exits) {
  if (exits.empty()) throw MetricError("termination error rate needs at least one run");
  const auto errors = std::count_if(exits.begin(), exits.end(), is_termination_error);
  return {errors, static_cast<std::int64_t>(exits.size())};
}

std::vector<SssPoint> sss_curve(const RubricSheet& rubrics, const AnnotationRecord& annotation) {
  check_coverage(rubrics, annotation);
  const int tau = annotation.trajectory_length;
  const auto n = static_cast<std::int64_t>(rubrics.items.size());
  std::vector<SssPoint> curve;
  for (int i = 1; i <= tau; ++i) {
    const auto done = std::count_if(annotation.rubric.begin(), annotation.rubric.end(), [&](const auto& f) {
      return f.fulfilled_at_step && *f.fulfilled_at_step <= i;
    });
    curve.push_back({Ratio(i, tau), Ratio(done, n)});
  }
  return curve;
}

LinearFit sss_regression(std::span<const std::vector<SssPoint>> curves) {
  std::vector<std::pair<double, double>> points;
  for (const auto& c : curves) {
    for (const auto& p : c) points.emplace_back(p.x.value(), p.y.value());
  }
  if (points.size() < 2) throw MetricError("regression needs at least two points");
  const double n = static_cast<double>(points.size());
  double mx = 0, my = 0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0) throw MetricError("regression is degenerate: all x values are equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

MetricsReport compute_report(std::span<const AnnotationRecord> annotations,
                             const std::map<std::string, RubricSheet>& rubrics) {
  if (annotations.empty()) throw MetricError("no annotations to score");
  MetricsReport report;
  report.tasks = static_cast<int>(annotations.size());
  Ratio ss_sum;
  std::int64_t actions = 0, actions_ok = 0, reflections = 0, reflections_ok = 0;
  std::vector<ExitReason> exits;
  for (const auto& a : annotations) {
    auto it = rubrics.find(a.task_id);
    if (it == rubrics.end()) throw MetricError("no rubric sheet for task " + a.task_id);
    ss_sum = ss_sum + satisfaction_score(it->second, a);
    for (const auto& s : a.steps) {
      ++actions;
      actions_ok += s.action_correct ? 1 : 0;
      if (s.reflection_correct) {
        ++reflections;
        reflections_ok += *s.reflection_correct ? 1 : 0;
      }
    }
    exits.push_back(a.exit_reason);
  }
  report.satisfaction = ss_sum / report.tasks;
  if (actions > 0) report.action_accuracy = Ratio(actions_ok, actions);
  if (reflections > 0) report.reflection_accuracy = Ratio(reflections_ok, reflections);
  report.termination_error = termination_error_rate(exits);
  return report;
}

Json report_to_json(const MetricsReport& r) {
  Json out = Json::object();
  out["tasks"] = r.tasks;
  out["satisfaction_score"] = ratio_json(r.satisfaction);
  out["action_accuracy"] = ratio_json(r.action_accuracy);
  out["reflection_accuracy"] = ratio_json(r.reflection_accuracy);
  out["termination_error_rate"] = ratio_json(r.termination_error);
  return out;
}

std::string report_to_table(const MetricsReport& r) {
  auto row = [](const char* name, const std::string& value) {
    char label[32];
    std::snprintf(label, sizeof label, "%-24s", name);
    return label + value + "\n";
  };
  auto cell = [](const std::optional<Ratio>& v) { return v ? format_ratio(*v) : std::string("undefined"); };
  std::string out = row("metric", "value");
  out += row("tasks", std::to_string(r.tasks));
  out += row("satisfaction score", cell(r.satisfaction));
  out += row("action accuracy", cell(r.action_accuracy));
  out += row("reflection accuracy", cell(r.reflection_accuracy));
  out += row("termination error", cell(r.termination_error));
  return out;
}

std::string sss_csv(std::span<const AnnotationRecord> annotations, const std::map<std::string, RubricSheet>& rubrics) {
  std::string out = "x,y,model\n";
  for (const auto& a : annotations) {
    auto it = rubrics.find(a.task_id);
    if (it == rubrics.end()) throw MetricError("no rubric sheet for task " + a.task_id);
    for (const auto& p : sss_curve(it->second, a)) {
      char row[96];
      std::snprintf(row, sizeof row, "%.10g,%.10g,", p.x.value(), p.y.value());
      out += row + (a.model.empty() ? std::string("unknown") : a.model) + "\n";
    }
  }
  return out;
}

}  // namespace phoneagent
