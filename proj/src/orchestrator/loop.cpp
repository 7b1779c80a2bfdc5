#include "phoneagent/orchestrator/loop.hpp"

#include <chrono>

#include "phoneagent/agents/retrieval.hpp"
#include "phoneagent/core/errors.hpp"
#include "phoneagent/core/log.hpp"
#include "phoneagent/llm/audit.hpp"
#include "phoneagent/orchestrator/recorder.hpp"
#include "phoneagent/orchestrator/termination.hpp"
#include "phoneagent/shortcut/engine.hpp"

namespace phoneagent {
namespace {

// Failures that end a task as other_error. ScriptMissError is deliberately
// absent: a broken test script must surface.
bool is_step_failure(const std::exception& e) {
  return dynamic_cast<const ParseError*>(&e) != nullptr || dynamic_cast<const TransportError*>(&e) != nullptr ||
         dynamic_cast<const DeviceError*>(&e) != nullptr || dynamic_cast<const PerceptionError*>(&e) != nullptr ||
         dynamic_cast<const BindingError*>(&e) != nullptr;
}

class Loop {
 public:
  Loop(const TaskQuery& task, const OrchestratorConfig& config, TaskEnvironment& env, const LongTermMemory& memory,
       const std::filesystem::path& task_dir)
      : task_(task),
        config_(config),
        env_(env),
        memory_(memory),
        recorder_(task_dir),
        working_(config.k_escalation),
        ctx_{env.backend, env.prompts} {
    trajectory_.task = task;
  }

  TaskRun run() {
    try {
      RetrievalResult retrieval = retrieve_memory(ctx_, task_, memory_, config_);
      for (auto& w : retrieval.warnings) warnings_.push_back(std::move(w));
      view_ = std::move(retrieval.view);
      screen_ = recorder_.persist(env_.device.capture());
    } catch (const std::exception& e) {
      if (!is_step_failure(e)) throw;
      finish(ExitReason::OtherError, e.what());
      return result();
    }

    while (true) {
      const auto start = std::chrono::steady_clock::now();
      StepRecord step;
      step.index = static_cast<int>(trajectory_.steps.size());
      std::optional<ExitReason> exit;
      std::string detail;
      try {
        exit = run_step(step);
      } catch (const std::exception& e) {
        if (!is_step_failure(e)) throw;
        step.step_error = e.what();
        detail = e.what();
      }
      step.progress = working_.progress;
      step.notes = working_.notes;
      trajectory_.steps.push_back(std::move(step));
      recorder_.record_timing(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

      if (exit) {
        finish(*exit, detail);
        break;
      }
      const bool failed = trajectory_.steps.back().step_error.has_value();
      std::vector<Outcome> outcomes;
      for (const auto& a : working_.actions()) outcomes.push_back(a.outcome);
      const TerminationState state{failed, static_cast<int>(trajectory_.steps.size()), outcomes, chosen_actions_};
      if (auto reason = check_termination(state, config_)) {
        finish(*reason, failed ? detail : std::string{});
        break;
      }
    }
    return result();
  }

 private:
  // Returns an exit reason only for a Stop action; everything else goes
  // through check_termination.
  std::optional<ExitReason> run_step(StepRecord& step) {
    step.pre_screen = recorder_.relative(screen_);
    if (!perception_) perception_ = perceive_with_retry(screen_);
    if (!perception_) throw PerceptionError("perception failed twice on the current screen");
    step.perception = *perception_;

    // Manager
    const std::span<const ErrorRecord> escalation =
        working_.escalation_flag() ? working_.escalation_errors() : std::span<const ErrorRecord>{};
    step.escalated = !escalation.empty();
    const ManagerOutput plan = manager_step(ctx_, {task_, screen_, working_, view_, escalation});
    working_.plan = plan.plan;
    working_.subgoal = plan.subgoal;
    step.plan = plan.plan;
    step.subgoal = plan.subgoal;

    // Operator
    const OperatorOutput decision = operator_step(
        ctx_, {task_, screen_, *perception_, working_, view_, memory_, config_.m_history_window});
    step.operator_thought = decision.thought;
    step.action = decision.action;
    step.expectation = decision.expectation;
    chosen_actions_.push_back(decision.action);
    if (const auto* stop = std::get_if<Stop>(&decision.action)) {
      trajectory_.exit_detail = stop->message;
      return ExitReason::SelfReportedSuccess;
    }

    std::vector<AtomicOperation> operations;
    if (const auto* call = std::get_if<ShortcutCall>(&decision.action)) {
      const StoredShortcut* stored = memory_.find_shortcut(call->name);
      const ValidatedShortcut shortcut = validate_shortcut(stored->shortcut);
      operations = bind_arguments(shortcut, call->arguments);
      const GateMode mode = config_.strict_precondition_gate ? GateMode::StrictHeuristic : GateMode::ModelMediated;
      const GateDecision gate = gate_precondition(shortcut.shortcut(), *perception_, working_.subgoal, mode);
      if (!gate.allowed) {
        step.gate_denial = gate.reason;
        step.post_screen = step.pre_screen;
        ErrorRecord error{step.index, gate.reason, "the shortcut precondition does not hold on this screen",
                          "reach a screen where the precondition holds, or use atomic operations"};
        record(step, Outcome::C, decision, std::move(error));
        return std::nullopt;
      }
    } else {
      operations.push_back(std::get<AtomicOperation>(decision.action));
    }
    for (const auto& o : operations) step.operations.push_back(to_string(o));

    // Execute
    const ShortcutExecution run = execute_shortcut(env_.device, operations, screen_);
    for (const auto& s : run.trace) {
      const ScreenState saved = recorder_.persist(s);
      step.trace_screens.push_back(recorder_.relative(saved));
    }
    trajectory_.operations_executed += static_cast<int>(run.trace.size() - (run.failure_index ? 1 : 0));
    if (run.failure_index) {
      step.failed_operation = run.failure_index;
      step.execution_failure = run.failure;
    }
    const ScreenState before = screen_;
    const PerceptionResult perception_before = *perception_;
    screen_ = recorder_.persist(run.final_screen);
    step.post_screen = recorder_.relative(screen_);
    perception_ = perceive_with_retry(screen_);
    if (!perception_) {
      ErrorRecord error{step.index, "the screen after the action could not be perceived",
                        "perception service failure", "retry the action once perception recovers"};
      record(step, Outcome::C, decision, std::move(error));
      return std::nullopt;
    }

    // Reflect, then take notes.
    const ReflectorOutput verdict = reflect_action(
        ctx_, {task_, before, perception_before, screen_, *perception_, decision.action, decision.expectation, working_});
    std::optional<ErrorRecord> error;
    if (verdict.outcome == Outcome::A) {
      working_.progress = verdict.progress;
    } else {
      error = ErrorRecord{step.index, verdict.error_description, verdict.suspected_cause, verdict.suggested_fix};
    }
    record(step, verdict.outcome, decision, std::move(error));
    working_.notes = take_notes(ctx_, {task_, screen_, *perception_, working_}).notes;
    return std::nullopt;
  }

  void record(StepRecord& step, Outcome outcome, const OperatorOutput& decision, std::optional<ErrorRecord> error) {
    step.outcome = outcome;
    step.error = error;
    working_.record({step.index, decision.action, outcome, decision.expectation}, std::move(error));
  }

  std::optional<PerceptionResult> perceive_with_retry(const ScreenState& screen) {
    for (int attempt = 0; attempt < 2; ++attempt) {
      try {
        return env_.perceptor.perceive(screen);
      } catch (const PerceptionError& e) {
        warnings_.push_back(std::string("perception failed: ") + e.what());
        warn(warnings_.back());
      }
    }
    return std::nullopt;
  }

  void finish(ExitReason reason, const std::string& detail) {
    trajectory_.exit_reason = reason;
    if (reason != ExitReason::SelfReportedSuccess) trajectory_.exit_detail = detail;
    recorder_.write(trajectory_);
  }

  TaskRun result() { return {std::move(trajectory_), std::move(working_), std::move(warnings_)}; }

  const TaskQuery& task_;
  const OrchestratorConfig& config_;
  TaskEnvironment& env_;
  const LongTermMemory& memory_;
  TaskRecorder recorder_;
  WorkingMemory working_;
  AgentContext ctx_;
  MemoryView view_;
  Trajectory trajectory_;
  ScreenState screen_;
  std::optional<PerceptionResult> perception_;
  std::vector<Action> chosen_actions_;
  std::vector<std::string> warnings_;
};

}  // namespace

TaskRun run_task(const TaskQuery& task, const OrchestratorConfig& config, TaskEnvironment& env,
                 const LongTermMemory& memory, const std::filesystem::path& task_dir) {
  config.validate();
  validate_memory(memory);
  return Loop(task, config, env, memory, task_dir).run();
}

std::shared_ptr<ModelBackend> audited(std::shared_ptr<ModelBackend> backend, const std::filesystem::path& task_dir) {
  return std::make_shared<AuditingBackend>(std::move(backend), task_dir / "model_calls", task_dir);
}

}  // namespace phoneagent
