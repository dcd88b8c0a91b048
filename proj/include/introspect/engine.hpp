#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "introspect/oracle.hpp"
#include "introspect/simweb.hpp"
#include "introspect/trace.hpp"
#include "introspect/types.hpp"

namespace introspect {

struct EngineConfig {
  // Remedy list length R pushed beneath each first attempt.
  int remedy_budget = 1;
  // Backtracking navigation costs one action from the trial budget.
  bool count_backtrack_actions = true;
  // When > 0, expansions push k sampled candidate actions (deduplicated)
  // instead of attempt-plus-remedies: the sampling-based search mode.
  int sample_k = 0;
  // Caps trials below the task budget when set (e.g. 1 = never revise).
  std::optional<int> max_trials_override;
  std::uint64_t rng_seed = 0;
};

struct TaskRunResult {
  std::string task_id;
  bool success = false;
  // 1-based trial in which the run finished; equals trials_used.
  int trials_used = 0;
  int plan_revisions = 0;
  int actions_total = 0;  // budgeted actions across all trials
  // Budgeted actions consumed by each trial, in trial order.
  std::vector<int> actions_by_trial;
  int backtracks = 0;
  std::optional<std::string> answer;
  std::string final_url;
  TraceLog trace;
};

// Runs one task to completion or budget exhaustion: plan, explore
// depth-first with anticipatory remedies, backtrack on misalignment, revise
// the plan across trials.
TaskRunResult run_task(const SimWorld& world, const TaskSpec& task,
                       Oracle& oracle, const EngineConfig& config);

}  // namespace introspect
