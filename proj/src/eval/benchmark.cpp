#include "phoneagent/eval/benchmark.hpp"

#include <algorithm>
#include <set>

#include "phoneagent/core/task_io.hpp"

namespace phoneagent {
namespace {

void check_format(const Json& value, std::string_view expected) {
  fields::object(value, "");
  if (fields::string(value, "format", "") != expected) throw DecodeError("format", "expected " + std::string(expected));
}

}  // namespace

std::vector<TaskQuery> benchmark_from_json(const Json& value) {
  check_format(value, kBenchmarkFormat);
  const Json& tasks = fields::array(fields::required(value, "tasks", ""), "tasks");
  std::vector<TaskQuery> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    out.push_back(task_from_json(tasks[i], fields::index("tasks", i)));
    if (!ids.insert(out.back().id).second) {
      throw DecodeError(fields::join(fields::index("tasks", i), "id"), "duplicate task id");
    }
  }
  return out;
}

Json benchmark_to_json(const std::vector<TaskQuery>& tasks) {
  Json list = Json::array();
  for (const auto& t : tasks) list.push_back(task_to_json(t));
  return Json{{"format", kBenchmarkFormat}, {"tasks", std::move(list)}};
}

std::vector<TaskQuery> load_benchmark(const std::filesystem::path& path) {
  return benchmark_from_json(read_json_file(path));
}

Json rubrics_to_json(const RubricSheet& sheet) {
  Json items = Json::array();
  for (const auto& item : sheet.items) {
    items.push_back({{"id", item.id},
                     {"text", item.text},
                     {"kind", item.kind == RubricItem::Kind::Milestone ? "milestone" : "satisfaction_criterion"}});
  }
  return Json{{"format", kRubricFormat}, {"task_id", sheet.task_id}, {"items", std::move(items)}};
}

RubricSheet rubrics_from_json(const Json& value) {
  check_format(value, kRubricFormat);
  RubricSheet sheet;
  sheet.task_id = fields::string(value, "task_id", "");
  const Json& items = fields::array(fields::required(value, "items", ""), "items");
  if (items.empty()) throw DecodeError("items", "a rubric sheet needs at least one item");
  std::vector<int> ids;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string path = fields::index("items", i);
    RubricItem item;
    item.id = static_cast<int>(fields::integer(items[i], "id", path));
    item.text = fields::string(items[i], "text", path);
    const std::string kind = fields::string(items[i], "kind", path);
    if (kind == "milestone") {
      item.kind = RubricItem::Kind::Milestone;
    } else if (kind == "satisfaction_criterion") {
      item.kind = RubricItem::Kind::SatisfactionCriterion;
    } else {
      throw DecodeError(fields::join(path, "kind"), "expected milestone or satisfaction_criterion");
    }
    ids.push_back(item.id);
    sheet.items.push_back(std::move(item));
  }
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] != static_cast<int>(i) + 1) throw DecodeError("items", "rubric ids must be 1..n without gaps");
  }
  return sheet;
}

RubricSheet load_rubrics(const std::filesystem::path& path) { return rubrics_from_json(read_json_file(path)); }

Json annotation_to_json(const AnnotationRecord& r) {
  Json rubric = Json::array();
  for (const auto& f : r.rubric) {
    rubric.push_back({{"id", f.rubric_id}, {"fulfilled_at_step", f.fulfilled_at_step ? Json(*f.fulfilled_at_step) : Json()}});
  }
  Json steps = Json::array();
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const auto& s = r.steps[i];
    steps.push_back({{"index", i},
                     {"action_correct", s.action_correct},
                     {"reflection_correct", s.reflection_correct ? Json(*s.reflection_correct) : Json()}});
  }
  Json out = Json::object();
  out["format"] = kAnnotationFormat;
  out["task_id"] = r.task_id;
  out["model"] = r.model;
  out["trajectory_length"] = r.trajectory_length;
  out["exit_reason"] = std::string(to_string(r.exit_reason));
  out["rubric"] = std::move(rubric);
  out["steps"] = std::move(steps);
  return out;
}

AnnotationRecord annotation_from_json(const Json& value) {
  check_format(value, kAnnotationFormat);
  AnnotationRecord r;
  r.task_id = fields::string(value, "task_id", "");
  r.model = fields::string_or(value, "model", "", "");
  r.trajectory_length = static_cast<int>(fields::integer(value, "trajectory_length", ""));
  if (r.trajectory_length < 0) throw DecodeError("trajectory_length", "must be >= 0");
  const std::string exit = fields::string(value, "exit_reason", "");
  const auto reason = parse_exit_reason(exit);
  if (!reason) throw DecodeError("exit_reason", "unknown exit reason '" + exit + "'");
  r.exit_reason = *reason;

  const Json& rubric = fields::array(fields::required(value, "rubric", ""), "rubric");
  std::set<int> seen;
  for (std::size_t i = 0; i < rubric.size(); ++i) {
    const std::string path = fields::index("rubric", i);
    AnnotationRecord::Fulfillment f;
    f.rubric_id = static_cast<int>(fields::integer(rubric[i], "id", path));
    if (!seen.insert(f.rubric_id).second) throw DecodeError(fields::join(path, "id"), "rubric id annotated twice");
    if (fields::optional(rubric[i], "fulfilled_at_step") != nullptr) {
      const auto step = fields::integer(rubric[i], "fulfilled_at_step", path);
      if (step < 0 || step > r.trajectory_length) {
        throw DecodeError(fields::join(path, "fulfilled_at_step"), "must lie in [0, trajectory_length]");
      }
      f.fulfilled_at_step = static_cast<int>(step);
    }
    r.rubric.push_back(f);
  }

  const Json& steps = fields::array(fields::required(value, "steps", ""), "steps");
  if (steps.size() != static_cast<std::size_t>(r.trajectory_length)) {
    throw DecodeError("steps", "expected one judgment per trajectory step");
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string path = fields::index("steps", i);
    fields::object(steps[i], path);
    AnnotationRecord::StepJudgment s;
    const Json& action = fields::required(steps[i], "action_correct", path);
    if (!action.is_boolean()) throw DecodeError(fields::join(path, "action_correct"), "expected a boolean");
    s.action_correct = action.get<bool>();
    if (const Json* reflection = fields::optional(steps[i], "reflection_correct")) {
      if (!reflection->is_boolean()) throw DecodeError(fields::join(path, "reflection_correct"), "expected a boolean or null");
      s.reflection_correct = reflection->get<bool>();
    }
    r.steps.push_back(s);
  }
  return r;
}

AnnotationRecord load_annotation(const std::filesystem::path& path) {
  try {
    return annotation_from_json(read_json_file(path));
  } catch (const DecodeError& e) {
    throw DecodeError(path.filename().string(), e.what());
  }
}

std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw NotFoundError("annotation directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  if (files.empty()) throw ConfigError("no annotation files in " + dir.string());
  std::sort(files.begin(), files.end());
  std::vector<AnnotationRecord> out;
  for (const auto& f : files) out.push_back(load_annotation(f));
  return out;
}

}  // namespace phoneagent
