#include "introspect/engine.hpp"

#include <algorithm>
#include <utility>

namespace introspect {
namespace {

Json action_json(const AgentAction& a) {
  Json j = Json::object();
  j["verb"] = std::string(verb_name(a.verb));
  if (a.element_id) j["element_id"] = *a.element_id;
  if (a.text) j["text"] = *a.text;
  if (a.direction) j["direction"] = std::string(scroll_dir_name(*a.direction));
  if (a.url) j["url"] = *a.url;
  return j;
}

// A stack frame plus the snapshot it was created from. The snapshot is what
// element-id remapping reads when the page has re-rolled its ids by the time
// the frame is popped.
struct LiveFrame {
  StackFrame frame;
  StateSnapshot created_at;
};

// One task episode: owns the cursor, plan, history, and trace while trials
// run.
class Episode {
 public:
  Episode(const SimWorld& world, const TaskSpec& task, Oracle& oracle,
          const EngineConfig& config)
      : world_(world),
        task_(task),
        oracle_(oracle),
        config_(config),
        cursor_(world, task.start_url) {}

  TaskRunResult run() {
    int max_trials = task_.budget.max_trials;
    if (config_.max_trials_override) {
      max_trials = std::min(max_trials, *config_.max_trials_override);
    }
    for (int trial = 1; trial <= max_trials && !finished_; ++trial) {
      result_.trials_used = trial;
      if (trial > 1) {
        cursor_.reset_for_new_trial();
        result_.plan_revisions++;
      }
      start_plan(trial);
      run_trial(trial);
      result_.actions_by_trial.push_back(budget_used_);
      if (!finished_ && task_complete_now()) {
        // The trial ended on a completing state that alignment never saw.
        finish(trial, cursor_.observe());
      }
    }
    result_.task_id = task_.task_id;
    result_.final_url = cursor_.current_url();
    result_.actions_total = budget_used_total_;
    return result_;
  }

 private:
  OracleContext context(const StateSnapshot& state, int subtask_index) const {
    OracleContext ctx;
    ctx.task = &task_;
    ctx.plan = &plan_;
    ctx.subtask_index = subtask_index;
    ctx.state = &state;
    ctx.history = &history_;
    ctx.notes = &cursor_.notes();
    ctx.plan_revision = plan_.revision;
    ctx.rng_seed = config_.rng_seed;
    return ctx;
  }

  void start_plan(int trial) {
    StateSnapshot here = cursor_.observe();
    OracleContext ctx = context(here, Plan::kPrePlanCursor);
    ctx.plan_revision = trial - 1;
    std::vector<std::string> descriptions =
        oracle_.gen_plan(ctx, failed_plan_notes_);
    plan_ = Plan{};
    plan_.revision = trial - 1;
    for (std::size_t i = 0; i < descriptions.size(); ++i) {
      Subtask st;
      st.index = static_cast<int>(i) + 1;
      st.description = descriptions[i];
      plan_.subtasks.push_back(std::move(st));
    }
    Json subtasks = Json::array();
    for (const Subtask& st : plan_.subtasks) subtasks.push_back(st.description);
    Json payload = Json::object();
    payload["trial"] = trial;
    payload["revision"] = plan_.revision;
    payload["subtasks"] = std::move(subtasks);
    if (trial == 1) {
      trace().emit(TraceKind::kPlanCreated, std::move(payload));
    } else {
      payload["failed_reason"] = failed_plan_notes_.empty()
                                     ? std::string()
                                     : failed_plan_notes_.back();
      trace().emit(TraceKind::kPlanRevised, std::move(payload));
    }
  }

  void run_trial(int trial) {
    budget_used_ = 0;
    std::vector<LiveFrame> stack;
    {
      StateSnapshot here = cursor_.observe();
      LiveFrame sentinel;
      sentinel.frame.state_id = here.state_id;
      sentinel.frame.url = here.url;
      sentinel.frame.subtask_cursor = Plan::kPrePlanCursor;
      sentinel.frame.frame_id = next_frame_id_++;
      sentinel.created_at = std::move(here);
      stack.push_back(std::move(sentinel));
    }

    std::string fail_reason = "exhausted all pending branches";
    while (!stack.empty() && !finished_) {
      if (budget_used_ >= task_.budget.max_actions_per_trial) {
        emit_budget_exhausted(trial);
        fail_reason = "ran out of the action budget";
        break;
      }
      LiveFrame live = std::move(stack.back());
      stack.pop_back();

      if (!reposition(live)) continue;  // frame unreachable: dead end
      if (budget_used_ >= task_.budget.max_actions_per_trial) {
        emit_budget_exhausted(trial);
        fail_reason = "ran out of the action budget";
        break;
      }

      bool aligned;
      int tau;
      if (live.frame.is_sentinel()) {
        aligned = true;
        tau = advance_subtasks(1);
      } else {
        tau = live.frame.subtask_cursor;
        if (!execute_frame(live, trial, aligned)) continue;
        if (aligned) {
          StateSnapshot after = cursor_.observe();
          if (task_complete_at(after, tau)) {
            finish(trial, after);
            return;
          }
          tau = advance_subtasks(tau);
        }
      }
      if (!aligned || finished_) continue;
      if (plan_.exhausted_at(tau)) continue;  // nothing left to act for
      expand(stack, tau, live.frame.frame_id);
    }
    if (!finished_) {
      failed_plan_notes_.push_back("Plan " + std::to_string(plan_.revision) +
                                   " failed: " + fail_reason + ".");
    }
  }

  // Stands the cursor on the frame's page, paying one budgeted action when a
  // navigation is needed. False when the page cannot be reached.
  bool reposition(const LiveFrame& live) {
    const std::string& want = live.frame.url;
    if (world_.canonical(cursor_.current_url()) == world_.canonical(want)) {
      return true;
    }
    std::string from = cursor_.current_url();
    try {
      cursor_.execute(AgentAction::go_to(want));
    } catch (const EnvError& e) {
      Json payload = Json::object();
      payload["subtask_index"] = live.frame.subtask_cursor;
      payload["aligned"] = false;
      payload["error"] = std::string("backtrack failed: ") + e.what();
      trace().emit(TraceKind::kAlignmentChecked, std::move(payload));
      return false;
    }
    if (config_.count_backtrack_actions) {
      budget_used_++;
      budget_used_total_++;
    }
    result_.backtracks++;
    Json payload = Json::object();
    payload["from_url"] = from;
    payload["to_url"] = want;
    payload["budgeted"] = config_.count_backtrack_actions;
    trace().emit(TraceKind::kBacktracked, std::move(payload));
    return true;
  }

  // Executes the frame's pending action, records grounding and alignment.
  // False return means the frame failed before alignment could be judged.
  bool execute_frame(const LiveFrame& live, int trial, bool& aligned) {
    (void)trial;
    AgentAction action = *live.frame.pending_action;
    StateSnapshot before = cursor_.observe();
    bool remapped = false;

    if (action.targets_element()) {
      // Ids re-roll on every page (re)visit, and a re-rolled id can collide
      // with an unrelated element. The id is only trusted when it still means
      // what it meant in the snapshot the frame was created from.
      const ElementInfo* was = live.created_at.find_element(*action.element_id);
      const ElementInfo* now = before.find_element(*action.element_id);
      bool still_same = was != nullptr && now != nullptr &&
                        was->role == now->role && was->label == now->label;
      if (!still_same) {
        OracleContext ctx = context(before, live.frame.subtask_cursor);
        std::optional<int> fresh_id = oracle_.map_element(
            ctx, live.created_at, *action.element_id, before);
        if (!fresh_id) {
          emit_frame_failure(live, "element no longer present");
          return false;
        }
        remapped = *fresh_id != *action.element_id;
        action.element_id = *fresh_id;
      }
    }

    StateSnapshot after;
    try {
      after = cursor_.execute(action);
    } catch (const EnvError& e) {
      emit_frame_failure(live, e.what());
      return false;
    }
    budget_used_++;
    budget_used_total_++;
    step_counter_++;

    Json payload = Json::object();
    payload["step"] = step_counter_;
    payload["action"] = action_json(action);
    payload["pre_url"] = before.url;
    payload["post_url"] = after.url;
    payload["subtask_index"] = live.frame.subtask_cursor;
    payload["origin"] = live.frame.origin.is_remedy
                            ? "remedy_" + std::to_string(live.frame.origin.remedy_rank)
                            : "first_attempt";
    payload["remapped"] = remapped;
    trace().emit(TraceKind::kActionExecuted, std::move(payload));

    OracleContext after_ctx = context(after, live.frame.subtask_cursor);
    std::string description =
        oracle_.describe_action(after_ctx, action, before, after);
    HistoryEntry entry;
    entry.step = step_counter_;
    entry.action = action;
    entry.description = description;
    entry.pre_state = before.state_id;
    entry.post_state = after.state_id;
    if (action.verb == Verb::kNoteDown) entry.note = action.text;
    history_.push_back(std::move(entry));

    if (action.verb == Verb::kAnswer) {
      // Terminal delivery: the episode ends on the agent's own answer.
      result_.answer = action.text;
      result_.success = oracle_.eval_task_complete(after_ctx);
      Json ans = Json::object();
      ans["answer"] = *action.text;
      trace().emit(TraceKind::kAnswerDelivered, std::move(ans));
      finished_ = true;
      aligned = false;
      return true;
    }

    aligned = oracle_.eval_alignment(after_ctx, description);
    Json check = Json::object();
    check["subtask_index"] = live.frame.subtask_cursor;
    check["aligned"] = aligned;
    trace().emit(TraceKind::kAlignmentChecked, std::move(check));
    return true;
  }

  void emit_frame_failure(const LiveFrame& live, const std::string& error) {
    Json payload = Json::object();
    payload["subtask_index"] = live.frame.subtask_cursor;
    payload["aligned"] = false;
    payload["error"] = error;
    trace().emit(TraceKind::kAlignmentChecked, std::move(payload));
  }

  // Advances from `tau` past every finished or skippable subtask, updating
  // global plan state (which never moves backwards) along the way. Returns
  // the frame-local active subtask.
  int advance_subtasks(int tau) {
    StateSnapshot here = cursor_.observe();
    while (!plan_.exhausted_at(tau)) {
      OracleContext ctx = context(here, tau);
      SubtaskVerdict verdict = oracle_.eval_subtask(ctx);
      if (verdict == SubtaskVerdict::kIncomplete) break;
      SubtaskStatus status = verdict == SubtaskVerdict::kDone
                                 ? SubtaskStatus::kDone
                                 : SubtaskStatus::kSkippedNonessential;
      mark_subtask(tau, status);
      tau++;
    }
    if (!plan_.exhausted_at(tau) &&
        plan_.at(tau).status == SubtaskStatus::kPending) {
      plan_.at(tau).status = SubtaskStatus::kActive;
    }
    plan_.cursor = std::max(plan_.cursor, tau);
    return tau;
  }

  void mark_subtask(int index, SubtaskStatus status) {
    Subtask& st = plan_.at(index);
    if (st.status == SubtaskStatus::kDone ||
        st.status == SubtaskStatus::kSkippedNonessential) {
      return;  // already settled on some other branch
    }
    st.status = status;
    if (status == SubtaskStatus::kSkippedNonessential) st.nonessential = true;
    if (index > last_completed_emitted_) {
      Json payload = Json::object();
      payload["index"] = index;
      payload["status"] = std::string(subtask_status_name(status));
      trace().emit(TraceKind::kSubtaskCompleted, std::move(payload));
      last_completed_emitted_ = index;
    }
  }

  // Pushes the next wave of frames for subtask `tau` at the current state:
  // either attempt-plus-remedies, or k sampled candidates.
  void expand(std::vector<LiveFrame>& stack, int tau,
              std::uint64_t parent_id) {
    StateSnapshot here = cursor_.observe();
    OracleContext ctx = context(here, tau);

    std::vector<std::pair<AgentAction, FrameOrigin>> wave;
    if (config_.sample_k > 0) {
      std::vector<AgentAction> samples =
          oracle_.sample_actions(ctx, config_.sample_k);
      std::vector<AgentAction> unique;
      for (const AgentAction& a : samples) {
        if (std::find(unique.begin(), unique.end(), a) == unique.end()) {
          unique.push_back(a);
        }
      }
      for (std::size_t i = 1; i < unique.size(); ++i) {
        wave.emplace_back(unique[i], FrameOrigin::remedy(static_cast<int>(i)));
      }
      if (!unique.empty()) {
        wave.emplace_back(unique[0], FrameOrigin::first_attempt());
      }
    } else {
      AgentAction attempt = oracle_.gen_action(ctx);
      std::vector<AgentAction> remedies;
      if (config_.remedy_budget > 0) {
        remedies = oracle_.gen_remedies(ctx, attempt, config_.remedy_budget);
      }
      // Most promising remedy last so it pops first among the remedies.
      for (std::size_t i = remedies.size(); i-- > 0;) {
        wave.emplace_back(remedies[i],
                          FrameOrigin::remedy(static_cast<int>(i) + 1));
      }
      wave.emplace_back(attempt, FrameOrigin::first_attempt());
    }

    for (const auto& [action, origin] : wave) {
      LiveFrame next;
      next.frame.state_id = here.state_id;
      next.frame.url = here.url;
      next.frame.pending_action = action;
      next.frame.subtask_cursor = tau;
      next.frame.origin = origin;
      next.frame.frame_id = next_frame_id_++;
      next.frame.parent_frame_id = parent_id;
      next.created_at = here;
      if (origin.is_remedy) {
        Json payload = Json::object();
        payload["frame_id"] = next.frame.frame_id;
        payload["parent_frame_id"] = parent_id;
        payload["rank"] = origin.remedy_rank;
        payload["subtask_index"] = tau;
        payload["action"] = action_json(action);
        trace().emit(TraceKind::kRemedyPushed, std::move(payload));
      }
      stack.push_back(std::move(next));
    }
  }

  bool task_complete_at(const StateSnapshot& state, int tau) {
    OracleContext ctx = context(state, tau);
    return oracle_.eval_task_complete(ctx);
  }

  bool task_complete_now() {
    StateSnapshot here = cursor_.observe();
    return task_complete_at(here, plan_.cursor);
  }

  void finish(int trial, const StateSnapshot& state) {
    finished_ = true;
    result_.success = true;
    Json payload = Json::object();
    payload["trial"] = trial;
    payload["url"] = state.url;
    trace().emit(TraceKind::kTaskCompleted, std::move(payload));
    if (task_.kind == TaskKind::kInfoSeeking) {
      OracleContext ctx = context(state, plan_.cursor);
      std::string answer = oracle_.deliver_answer(ctx);
      result_.answer = answer;
      Json ans = Json::object();
      ans["answer"] = answer;
      trace().emit(TraceKind::kAnswerDelivered, std::move(ans));
    }
  }

  void emit_budget_exhausted(int trial) {
    Json payload = Json::object();
    payload["trial"] = trial;
    payload["actions"] = budget_used_;
    trace().emit(TraceKind::kBudgetExhausted, std::move(payload));
  }

  TraceLog& trace() { return result_.trace; }

  const SimWorld& world_;
  const TaskSpec& task_;
  Oracle& oracle_;
  EngineConfig config_;
  EnvCursor cursor_;
  Plan plan_;
  std::vector<HistoryEntry> history_;
  std::vector<std::string> failed_plan_notes_;
  TaskRunResult result_;
  bool finished_ = false;
  int budget_used_ = 0;
  int budget_used_total_ = 0;
  int step_counter_ = 0;
  int last_completed_emitted_ = 0;
  std::uint64_t next_frame_id_ = 1;
};

}  // namespace

TaskRunResult run_task(const SimWorld& world, const TaskSpec& task,
                       Oracle& oracle, const EngineConfig& config) {
  Episode episode(world, task, oracle, config);
  return episode.run();
}

}  // namespace introspect
