#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "introspect/baselines.hpp"
#include "introspect/oracle.hpp"
#include "introspect/trace.hpp"
#include "introspect/worldgen.hpp"

namespace introspect {

struct SuiteConfig {
  std::uint64_t seed = 0;
  ErrorInjection injection;
  EngineConfig engine;
  std::vector<StrategyKind> strategies{
      StrategyKind::kIntrospective, StrategyKind::kPlanAct,
      StrategyKind::kPlanActReflexion, StrategyKind::kTreeSearch};
  int threads = 1;  // 0 = hardware concurrency
};

// One task under one strategy, with the ground-truth verdict.
struct TaskOutcome {
  TaskRunResult result;
  bool success = false;  // ground truth, not the agent's own belief
};

struct StrategyMetrics {
  StrategyKind strategy = StrategyKind::kIntrospective;
  int n_tasks = 0;
  int n_success = 0;
  double success_rate = 0.0;
  double mean_actions = 0.0;              // budgeted actions per task, all trials
  double mean_actions_first_trial = 0.0;  // budgeted actions in episode 1
  double mean_actions_last_trial = 0.0;   // budgeted actions in the final episode
  double mean_plan_revisions = 0.0;
  double mean_backtracks = 0.0;
  // Fraction of tasks solved within episode 1, 2, ... max_trials (cumulative,
  // so the sequence is non-decreasing).
  std::vector<double> success_rate_by_episode;
};

struct StrategyOutcomes {
  StrategyKind strategy = StrategyKind::kIntrospective;
  std::vector<TaskOutcome> outcomes;  // index-aligned with the task list
  StrategyMetrics metrics;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  int n_tasks = 0;
  std::vector<StrategyOutcomes> strategies;
};

// Ground-truth scoring, independent of the agent's own completion belief.
bool check_success(const SimWorld& world, const TaskSpec& task,
                   const TaskRunResult& result);

// Per-task seed: every strategy sees the same draws for the same task.
std::uint64_t task_seed(std::uint64_t suite_seed, const std::string& task_id);

StrategyMetrics compute_metrics(StrategyKind strategy,
                                const std::vector<TaskOutcome>& outcomes,
                                int max_trials);

// Runs every task under every configured strategy against scripted decision
// oracles. Deterministic: the report (and every trace) is byte-identical at
// any thread count.
SuiteReport run_suite(const SimWorld& world,
                      const std::vector<TaskSpec>& tasks,
                      const SuiteConfig& config);

Json report_to_json(const SuiteReport& report);
std::string report_to_text(const SuiteReport& report);

}  // namespace introspect
