#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "introspect/actions.hpp"
#include "introspect/types.hpp"

namespace introspect {

// Read-only view of the live episode handed to every oracle call. Decisions
// must be pure functions of this context (plus the oracle's own config) so
// that replays are exact.
struct OracleContext {
  const TaskSpec* task = nullptr;
  const Plan* plan = nullptr;
  // Frame-local active subtask (1-based). 0 before a plan exists.
  int subtask_index = 0;
  const StateSnapshot* state = nullptr;
  const std::vector<HistoryEntry>* history = nullptr;
  const std::vector<std::string>* notes = nullptr;
  int plan_revision = 0;
  std::uint64_t rng_seed = 0;
};

enum class SubtaskVerdict { kIncomplete, kDone, kNonessential };

// Decision provider for the control loop: planning, acting, anticipatory
// remedies, grounding descriptions, and the three judgments (alignment,
// subtask completion, task completion).
class Oracle {
 public:
  virtual ~Oracle() = default;

  // Subtask descriptions for a fresh plan. `failed_plan_notes` carries one
  // summary line per abandoned plan when this is a revision round.
  virtual std::vector<std::string> gen_plan(
      const OracleContext& ctx,
      const std::vector<std::string>& failed_plan_notes) = 0;

  // Next action for the active subtask.
  virtual AgentAction gen_action(const OracleContext& ctx) = 0;

  // Anticipated fallback actions in case `attempt` goes wrong, most
  // promising first, at most `budget` entries.
  virtual std::vector<AgentAction> gen_remedies(const OracleContext& ctx,
                                                const AgentAction& attempt,
                                                int budget) = 0;

  // Plain-language account of an executed action and its observed effect.
  virtual std::string describe_action(const OracleContext& ctx,
                                      const AgentAction& action,
                                      const StateSnapshot& before,
                                      const StateSnapshot& after) = 0;

  // Did the described step keep the episode on track for the active subtask?
  virtual bool eval_alignment(const OracleContext& ctx,
                              const std::string& description) = 0;

  // Is the active subtask finished (or skippable) given the current state?
  virtual SubtaskVerdict eval_subtask(const OracleContext& ctx) = 0;

  // Is the whole task finished given the current state?
  virtual bool eval_task_complete(const OracleContext& ctx) = 0;

  // Final answer text for info-seeking tasks.
  virtual std::string deliver_answer(const OracleContext& ctx) = 0;

  // Re-resolve an element id after the page re-rolled its ids: `stale` is
  // the snapshot the id came from, `fresh` the current one. Returns the new
  // id, or nullopt when no element matches.
  virtual std::optional<int> map_element(const OracleContext& ctx,
                                         const StateSnapshot& stale,
                                         int stale_element_id,
                                         const StateSnapshot& fresh) = 0;

  // k candidate next actions (duplicates allowed) for sampling-based
  // strategies.
  virtual std::vector<AgentAction> sample_actions(const OracleContext& ctx,
                                                  int k) = 0;
};

// Controlled-imperfection knobs for the scripted oracle. With all
// probabilities at zero the oracle plays the recorded solution perfectly.
struct ErrorInjection {
  // Chance the first attempt at a step picks a wrong (but viable) action.
  double wrong_action_prob = 0.0;
  // Remedy list length cap R.
  int remedy_budget = 1;
  // Force the true action into the remedy list when the attempt is wrong.
  bool remedy_contains_truth = true;
  // Chance a filler (skippable) subtask is inserted before a real step.
  double nonessential_prob = 0.0;
  // Chance an extra sample in sample_actions merely repeats the base pick.
  double sample_homogeneity = 0.5;

  nlohmann::ordered_json to_json() const;
  static ErrorInjection from_json(const nlohmann::ordered_json& j);
};

class SimWorld;

// Ground-truth-driven oracle over a simulated world. All stochastic choices
// are stateless hashes of (seed, task, place, plan revision), so identical
// contexts always produce identical decisions, and a plan revision re-rolls
// them.
std::unique_ptr<Oracle> make_scripted_oracle(const SimWorld& world,
                                             const ErrorInjection& inject);

}  // namespace introspect
