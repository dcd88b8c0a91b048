#include "introspect/harness.hpp"

#include <atomic>
#include <iomanip>
#include <sstream>
#include <thread>

#include "introspect/rng.hpp"
#include "introspect/simweb.hpp"

namespace introspect {

bool check_success(const SimWorld& world, const TaskSpec& task,
                   const TaskRunResult& result) {
  if (!result.success) return false;
  if (task.kind == TaskKind::kNavigation) {
    return world.canonical(result.final_url) == task.goal_url;
  }
  if (!task.answer_key.has_value() || !result.answer.has_value()) return false;
  std::string key = normalize_text(*task.answer_key);
  return !key.empty() &&
         normalize_text(*result.answer).find(key) != std::string::npos;
}

std::uint64_t task_seed(std::uint64_t suite_seed, const std::string& task_id) {
  return mix_seed(mix_seed(suite_seed, "task"), task_id);
}

StrategyMetrics compute_metrics(StrategyKind strategy,
                                const std::vector<TaskOutcome>& outcomes,
                                int max_trials) {
  StrategyMetrics m;
  m.strategy = strategy;
  m.n_tasks = static_cast<int>(outcomes.size());
  double actions = 0, first = 0, last = 0, revisions = 0, backtracks = 0;
  std::vector<int> success_at(static_cast<std::size_t>(max_trials) + 1, 0);
  for (const TaskOutcome& out : outcomes) {
    if (out.success) {
      m.n_success++;
      int trial = std::min(std::max(out.result.trials_used, 1), max_trials);
      success_at[static_cast<std::size_t>(trial)]++;
    }
    actions += out.result.actions_total;
    if (!out.result.actions_by_trial.empty()) {
      first += out.result.actions_by_trial.front();
      last += out.result.actions_by_trial.back();
    }
    revisions += out.result.plan_revisions;
    backtracks += out.result.backtracks;
  }
  if (m.n_tasks > 0) {
    m.success_rate = static_cast<double>(m.n_success) / m.n_tasks;
    m.mean_actions = actions / m.n_tasks;
    m.mean_actions_first_trial = first / m.n_tasks;
    m.mean_actions_last_trial = last / m.n_tasks;
    m.mean_plan_revisions = revisions / m.n_tasks;
    m.mean_backtracks = backtracks / m.n_tasks;
    int running = 0;
    for (int t = 1; t <= max_trials; ++t) {
      running += success_at[static_cast<std::size_t>(t)];
      m.success_rate_by_episode.push_back(static_cast<double>(running) /
                                          m.n_tasks);
    }
  }
  return m;
}

SuiteReport run_suite(const SimWorld& world,
                      const std::vector<TaskSpec>& tasks,
                      const SuiteConfig& config) {
  SuiteReport report;
  report.seed = config.seed;
  report.n_tasks = static_cast<int>(tasks.size());

  int threads = config.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }

  int max_trials = 1;
  for (const TaskSpec& task : tasks) {
    max_trials = std::max(max_trials, task.budget.max_trials);
  }

  for (StrategyKind strategy : config.strategies) {
    StrategyOutcomes bucket;
    bucket.strategy = strategy;
    bucket.outcomes.resize(tasks.size());

    // Fixed task->slot assignment plus per-task oracles make the outcome
    // vector independent of scheduling order.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) break;
        const TaskSpec& task = tasks[i];
        EngineConfig engine = config.engine;
        engine.rng_seed = task_seed(config.seed, task.task_id);
        std::unique_ptr<Oracle> oracle =
            make_scripted_oracle(world, config.injection);
        TaskOutcome out;
        out.result = run_strategy(world, task, *oracle, strategy, engine);
        out.success = check_success(world, task, out.result);
        bucket.outcomes[i] = std::move(out);
      }
    };
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (std::thread& t : pool) t.join();
    }

    bucket.metrics = compute_metrics(strategy, bucket.outcomes, max_trials);
    report.strategies.push_back(std::move(bucket));
  }
  return report;
}

Json report_to_json(const SuiteReport& report) {
  Json j = Json::object();
  j["seed"] = report.seed;
  j["n_tasks"] = report.n_tasks;
  Json strategies = Json::array();
  for (const StrategyOutcomes& bucket : report.strategies) {
    Json s = Json::object();
    s["strategy"] = std::string(strategy_name(bucket.strategy));
    s["n_tasks"] = bucket.metrics.n_tasks;
    s["n_success"] = bucket.metrics.n_success;
    s["success_rate"] = bucket.metrics.success_rate;
    s["mean_actions"] = bucket.metrics.mean_actions;
    s["mean_actions_first_trial"] = bucket.metrics.mean_actions_first_trial;
    s["mean_actions_last_trial"] = bucket.metrics.mean_actions_last_trial;
    s["mean_plan_revisions"] = bucket.metrics.mean_plan_revisions;
    s["mean_backtracks"] = bucket.metrics.mean_backtracks;
    s["success_rate_by_episode"] = bucket.metrics.success_rate_by_episode;
    Json rows = Json::array();
    for (const TaskOutcome& out : bucket.outcomes) {
      Json row = Json::object();
      row["task_id"] = out.result.task_id;
      row["success"] = out.success;
      row["agent_claimed_success"] = out.result.success;
      row["trials"] = out.result.trials_used;
      row["revisions"] = out.result.plan_revisions;
      row["actions"] = out.result.actions_total;
      row["backtracks"] = out.result.backtracks;
      row["final_url"] = out.result.final_url;
      row["answer"] = out.result.answer.has_value() ? Json(*out.result.answer)
                                                    : Json(nullptr);
      rows.push_back(std::move(row));
    }
    s["tasks"] = std::move(rows);
    strategies.push_back(std::move(s));
  }
  j["strategies"] = std::move(strategies);
  return j;
}

std::string report_to_text(const SuiteReport& report) {
  std::ostringstream out;
  out << "Suite seed " << report.seed << ", " << report.n_tasks
      << " tasks\n\n";
  out << std::left << std::setw(20) << "strategy" << std::right
      << std::setw(10) << "success" << std::setw(14) << "act(ep1)"
      << std::setw(14) << "act(last)" << std::setw(12) << "revisions"
      << std::setw(12) << "backtracks" << "\n";
  out << std::string(82, '-') << "\n";
  out << std::fixed;
  for (const StrategyOutcomes& bucket : report.strategies) {
    const StrategyMetrics& m = bucket.metrics;
    out << std::left << std::setw(20) << strategy_name(bucket.strategy)
        << std::right << std::setw(9) << std::setprecision(1)
        << (m.success_rate * 100.0) << "%" << std::setw(14)
        << std::setprecision(2) << m.mean_actions_first_trial << std::setw(14)
        << std::setprecision(2) << m.mean_actions_last_trial << std::setw(12)
        << std::setprecision(2) << m.mean_plan_revisions << std::setw(12)
        << std::setprecision(2) << m.mean_backtracks << "\n";
  }
  out << "\nCumulative success rate by episode:\n";
  for (const StrategyOutcomes& bucket : report.strategies) {
    out << "  " << std::left << std::setw(20)
        << strategy_name(bucket.strategy) << std::right;
    for (double v : bucket.metrics.success_rate_by_episode) {
      out << " " << std::setprecision(3) << v;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace introspect
