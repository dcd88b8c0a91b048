#include "introspect/baselines.hpp"

#include <stdexcept>

namespace introspect {

std::string_view strategy_name(StrategyKind s) {
  switch (s) {
    case StrategyKind::kIntrospective: return "introspective";
    case StrategyKind::kPlanAct: return "plan_act";
    case StrategyKind::kPlanActReflexion: return "plan_act_reflexion";
    case StrategyKind::kTreeSearch: return "tree_search";
  }
  return "?";
}

StrategyKind strategy_from_name(std::string_view name) {
  if (name == "ar") return StrategyKind::kIntrospective;  // short alias
  for (StrategyKind s : kAllStrategies) {
    if (strategy_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown strategy: " + std::string(name));
}

EngineConfig strategy_config(StrategyKind s, const EngineConfig& base) {
  EngineConfig config = base;
  switch (s) {
    case StrategyKind::kIntrospective:
      config.sample_k = 0;
      break;
    case StrategyKind::kPlanAct:
      config.remedy_budget = 0;
      config.sample_k = 0;
      config.max_trials_override = 1;
      break;
    case StrategyKind::kPlanActReflexion:
      config.remedy_budget = 0;
      config.sample_k = 0;
      break;
    case StrategyKind::kTreeSearch:
      // Same branching allowance as the remedy stack, filled by sampling.
      config.sample_k = base.remedy_budget + 1;
      config.remedy_budget = 0;
      break;
  }
  return config;
}

TaskRunResult run_strategy(const SimWorld& world, const TaskSpec& task,
                           Oracle& oracle, StrategyKind s,
                           const EngineConfig& base) {
  return run_task(world, task, oracle, strategy_config(s, base));
}

}  // namespace introspect
