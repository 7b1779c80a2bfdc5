#include "phoneagent/eval/annotate.hpp"

#include <istream>
#include <ostream>

#include "phoneagent/core/errors.hpp"
#include "phoneagent/core/json_fields.hpp"

namespace phoneagent {
namespace {

class Reviewer {
 public:
  Reviewer(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  bool yes_no(const std::string& question) {
    for (;;) {
      const std::string answer = ask(question + " [y/n] ");
      if (answer == "y" || answer == "yes") return true;
      if (answer == "n" || answer == "no") return false;
      out_ << "  please answer y or n\n";
    }
  }

  std::optional<int> step_or_never(const std::string& question, int max_step) {
    for (;;) {
      const std::string answer = ask(question + " [0-" + std::to_string(max_step) + ", blank = never] ");
      if (answer.empty() || answer == "never") return std::nullopt;
      try {
        std::size_t used = 0;
        const int value = std::stoi(answer, &used);
        if (used == answer.size() && value >= 0 && value <= max_step) return value;
      } catch (const std::exception&) {
      }
      out_ << "  please enter a step between 0 and " << max_step << "\n";
    }
  }

 private:
  std::string ask(const std::string& prompt) {
    out_ << prompt << std::flush;
    std::string line;
    if (!std::getline(in_, line)) throw DecodeError("annotation input", "input ended before the review finished");
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    return line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
  }

  std::istream& in_;
  std::ostream& out_;
};

std::string text_or(const Json& value, const char* fallback) {
  return value.is_string() ? value.get<std::string>() : std::string(fallback);
}

}  // namespace

AnnotationRecord annotate_trajectory(const Json& trajectory, const RubricSheet& rubrics, const std::string& model,
                                     std::istream& in, std::ostream& out) {
  fields::object(trajectory, "trajectory");
  if (fields::string(trajectory, "format", "trajectory") != "phoneagent.trajectory.v1") {
    throw DecodeError("trajectory.format", "expected phoneagent.trajectory.v1");
  }
  const Json& task = fields::required(trajectory, "task", "trajectory");
  const std::string task_id = fields::string(task, "id", "trajectory.task");
  if (task_id != rubrics.task_id) {
    throw DecodeError("trajectory.task.id", "rubrics are for '" + rubrics.task_id + "', trajectory is '" + task_id + "'");
  }
  const std::string exit_text = fields::string(trajectory, "exit_reason", "trajectory");
  const auto exit_reason = parse_exit_reason(exit_text);
  if (!exit_reason) throw DecodeError("trajectory.exit_reason", "unknown exit reason '" + exit_text + "'");
  const Json& steps = fields::required(trajectory, "steps", "trajectory");
  fields::array(steps, "trajectory.steps");

  AnnotationRecord record;
  record.task_id = task_id;
  record.model = model;
  record.trajectory_length = static_cast<int>(steps.size());
  record.exit_reason = *exit_reason;

  Reviewer reviewer(in, out);
  out << "Task " << task_id << ": " << fields::string(task, "query", "trajectory.task") << "\n";
  out << "Exit: " << exit_text << ", " << steps.size() << " steps\n\n";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Json& step = steps[i];
    fields::object(step, fields::index("trajectory.steps", i));
    out << "Step " << i + 1 << "\n";
    out << "  screen:      " << text_or(step.value("pre_screen", Json()), "-") << "\n";
    out << "  subgoal:     " << text_or(step.value("subgoal", Json()), "-") << "\n";
    const Json action = step.value("action", Json());
    out << "  action:      " << (action.is_object() ? text_or(action.value("text", Json()), "-") : "-") << "\n";
    const Json outcome = step.value("outcome", Json());
    if (outcome.is_string()) out << "  reflection:  outcome " << outcome.get<std::string>() << "\n";
    if (step.value("step_error", Json()).is_string()) {
      out << "  step error:  " << step["step_error"].get<std::string>() << "\n";
    }

    AnnotationRecord::StepJudgment judgment;
    judgment.action_correct = reviewer.yes_no("  action correct?");
    if (outcome.is_string()) judgment.reflection_correct = reviewer.yes_no("  reflection correct?");
    record.steps.push_back(judgment);
  }

  out << "\nRubric\n";
  for (const auto& item : rubrics.items) {
    out << "  " << item.id << ". " << item.text << "\n";
    record.rubric.push_back({item.id, reviewer.step_or_never("  fulfilled after step", record.trajectory_length)});
  }
  return record;
}

}  // namespace phoneagent
