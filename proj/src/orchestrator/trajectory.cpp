#include "phoneagent/orchestrator/trajectory.hpp"

#include "phoneagent/core/overloaded.hpp"
#include "phoneagent/core/task_io.hpp"

namespace phoneagent {
namespace {

Json arg_to_json(const ArgValue& v) {
  return std::visit([](const auto& x) { return Json(x); }, v);
}

Json error_to_json(const ErrorRecord& e) {
  Json out = Json::object();
  out["step_index"] = e.step_index;
  out["description"] = e.description;
  out["suspected_cause"] = e.suspected_cause;
  out["suggested_fix"] = e.suggested_fix;
  return out;
}

}  // namespace

Json action_to_json(const Action& action) {
  Json out = Json::object();
  std::visit(Overloaded{
                 [&](const AtomicOperation& o) {
                   out["kind"] = "atomic";
                   out["name"] = std::string(operation_spec(o).name);
                   Json args = Json::object();
                   const auto values = operation_arguments(o);
                   const auto& params = operation_spec(o).params;
                   for (std::size_t i = 0; i < values.size(); ++i) args[std::string(params[i].name)] = arg_to_json(values[i]);
                   out["arguments"] = std::move(args);
                 },
                 [&](const ShortcutCall& call) {
                   out["kind"] = "shortcut";
                   out["name"] = call.name;
                   Json args = Json::object();
                   for (const auto& [name, value] : call.arguments) args[name] = arg_to_json(value);
                   out["arguments"] = std::move(args);
                 },
                 [&](const Stop& stop) {
                   out["kind"] = "stop";
                   out["name"] = "Stop";
                   out["arguments"] = {{"message", stop.message}};
                 },
             },
             action);
  out["text"] = to_string(action);
  return out;
}

Json step_to_json(const StepRecord& s) {
  Json out = Json::object();
  out["index"] = s.index;
  out["pre_screen"] = s.pre_screen;
  out["perception"] = perception_to_json(s.perception);
  out["escalated"] = s.escalated;
  out["plan"] = s.plan;
  out["subgoal"] = s.subgoal;
  out["operator_thought"] = s.operator_thought;
  out["action"] = s.action ? action_to_json(*s.action) : Json();
  out["expectation"] = s.expectation;
  out["operations"] = s.operations;
  out["gate_denial"] = s.gate_denial ? Json(*s.gate_denial) : Json();
  if (s.failed_operation) {
    out["execution_failure"] = {{"operation", *s.failed_operation}, {"message", s.execution_failure}};
  } else {
    out["execution_failure"] = Json();
  }
  out["trace_screens"] = s.trace_screens;
  out["post_screen"] = s.post_screen;
  out["outcome"] = s.outcome ? Json(std::string(to_string(*s.outcome))) : Json();
  out["error"] = s.error ? error_to_json(*s.error) : Json();
  out["progress"] = s.progress;
  out["notes"] = s.notes;
  out["step_error"] = s.step_error ? Json(*s.step_error) : Json();
  return out;
}

Json trajectory_to_json(const Trajectory& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back(step_to_json(s));
  Json out = Json::object();
  out["format"] = kTrajectoryFormat;
  out["task"] = task_to_json(t.task);
  out["exit_reason"] = std::string(to_string(t.exit_reason));
  out["exit_detail"] = t.exit_detail;
  out["decision_iterations"] = t.decision_iterations();
  out["operations_executed"] = t.operations_executed;
  out["steps"] = std::move(steps);
  return out;
}

}  // namespace phoneagent
