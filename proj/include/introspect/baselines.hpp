#pragma once

#include <string_view>

#include "introspect/engine.hpp"

namespace introspect {

// The agent variants the benchmark compares. All share the same engine; a
// strategy is a constrained engine configuration.
enum class StrategyKind {
  // Full loop: anticipatory remedies, backtracking, plan revision.
  kIntrospective,
  // Straight-line plan execution, one trial, no remedies.
  kPlanAct,
  // Straight-line execution with episode-level plan revision.
  kPlanActReflexion,
  // DFS over k sampled candidate actions per expansion.
  kTreeSearch,
};

inline constexpr StrategyKind kAllStrategies[] = {
    StrategyKind::kIntrospective, StrategyKind::kPlanAct,
    StrategyKind::kPlanActReflexion, StrategyKind::kTreeSearch};

std::string_view strategy_name(StrategyKind s);
StrategyKind strategy_from_name(std::string_view name);  // throws

// Applies the strategy's constraints to `base` (remedy budget, trial cap,
// sampled expansion) and returns the adjusted configuration.
EngineConfig strategy_config(StrategyKind s, const EngineConfig& base);

// Runs one task under a strategy.
TaskRunResult run_strategy(const SimWorld& world, const TaskSpec& task,
                           Oracle& oracle, StrategyKind s,
                           const EngineConfig& base);

}  // namespace introspect
