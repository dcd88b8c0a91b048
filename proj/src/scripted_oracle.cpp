#include <algorithm>
#include <cassert>

#include "introspect/oracle.hpp"
#include "introspect/rng.hpp"
#include "introspect/simweb.hpp"

namespace introspect {
namespace {

std::string lowercase(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

// Ground-truth-driven decision maker. Every stochastic choice is a stateless
// hash of (seed, task, place, plan revision): identical contexts repeat the
// exact decision, and a plan revision re-rolls it.
class ScriptedOracle final : public Oracle {
 public:
  ScriptedOracle(const SimWorld& world, const ErrorInjection& inject)
      : world_(&world), inject_(inject) {}

  std::vector<std::string> gen_plan(
      const OracleContext& ctx,
      const std::vector<std::string>& failed_plan_notes) override {
    (void)failed_plan_notes;  // ground truth needs no post-mortem
    std::vector<std::string> out;
    for (int idx : plan_layout(ctx, ctx.plan_revision)) {
      if (idx < 0) {
        out.push_back(
            "Review the current page for anything relevant to the task.");
      } else {
        out.push_back(step_text(ctx.task->solution[idx]));
      }
    }
    return out;
  }

  AgentAction gen_action(const OracleContext& ctx) override {
    const SolutionStep* step = step_for(ctx, ctx.subtask_index);
    if (step == nullptr) {
      // Filler or exhausted cursor; aim at the nearest real step, or at the
      // goal itself when nothing is left.
      std::vector<int> layout = plan_layout(ctx, ctx.plan_revision);
      for (int i = ctx.subtask_index; i < static_cast<int>(layout.size());
           ++i) {
        if (layout[i] >= 0) {
          step = &ctx.task->solution[layout[i]];
          break;
        }
      }
      if (step == nullptr) return AgentAction::go_to(ctx.task->goal_url);
    }
    AgentAction truth = materialize(*step, *ctx.state);
    if (inject_.wrong_action_prob > 0) {
      std::uint64_t h = decision_seed(ctx, "inject");
      if (hash_to_unit(h) < inject_.wrong_action_prob) {
        std::vector<AgentAction> cands = viable_candidates(*ctx.state);
        std::erase(cands, truth);
        if (!cands.empty()) {
          return cands[splitmix64(h) % cands.size()];
        }
      }
    }
    return truth;
  }

  std::vector<AgentAction> gen_remedies(const OracleContext& ctx,
                                        const AgentAction& attempt,
                                        int budget) override {
    std::vector<AgentAction> out;
    if (budget <= 0) return out;
    std::vector<AgentAction> cands = viable_candidates(*ctx.state);
    std::erase(cands, attempt);
    const SolutionStep* step = step_for(ctx, ctx.subtask_index);
    if (inject_.remedy_contains_truth && step != nullptr) {
      AgentAction truth = materialize(*step, *ctx.state);
      if (truth != attempt) {
        std::erase(cands, truth);
        cands.insert(cands.begin(), truth);
      }
    }
    if (static_cast<int>(cands.size()) > budget) cands.resize(budget);
    return cands;
  }

  std::string describe_action(const OracleContext& ctx,
                              const AgentAction& action,
                              const StateSnapshot& before,
                              const StateSnapshot& after) override {
    (void)ctx;
    std::string s = "I executed `" + format_action(action) + "`.";
    if (action.verb == Verb::kNoteDown) {
      s += " I noted down '" + *action.text + "'.";
    } else if (before.url != after.url) {
      s += " The page changed from " + before.url + " to " + after.url + ".";
    } else {
      s += " The page did not change.";
    }
    return s;
  }

  bool eval_alignment(const OracleContext& ctx,
                      const std::string& description) override {
    (void)description;  // ground truth judges the state, not the prose
    const SolutionStep* step = step_for(ctx, ctx.subtask_index);
    if (step == nullptr) return true;
    if (step->verb == Verb::kNoteDown) {
      return !ctx.notes->empty() && ctx.notes->back() == step->text;
    }
    return world_->canonical(ctx.state->url) == step->to_url;
  }

  SubtaskVerdict eval_subtask(const OracleContext& ctx) override {
    std::vector<int> layout = plan_layout(ctx, ctx.plan_revision);
    int tau = ctx.subtask_index;
    if (tau < 1 || tau > static_cast<int>(layout.size())) {
      return SubtaskVerdict::kDone;
    }
    int idx = layout[tau - 1];
    if (idx < 0) return SubtaskVerdict::kNonessential;
    const SolutionStep& step = ctx.task->solution[idx];
    if (step.verb == Verb::kNoteDown) {
      bool noted = std::find(ctx.notes->begin(), ctx.notes->end(),
                             step.text) != ctx.notes->end();
      return noted ? SubtaskVerdict::kDone : SubtaskVerdict::kIncomplete;
    }
    return world_->canonical(ctx.state->url) == step.to_url
               ? SubtaskVerdict::kDone
               : SubtaskVerdict::kIncomplete;
  }

  bool eval_task_complete(const OracleContext& ctx) override {
    if (ctx.task->kind == TaskKind::kNavigation) {
      return world_->canonical(ctx.state->url) == ctx.task->goal_url;
    }
    if (!ctx.task->answer_key.has_value()) return false;
    std::string key = normalize_text(*ctx.task->answer_key);
    for (const std::string& note : *ctx.notes) {
      if (normalize_text(note).find(key) != std::string::npos) return true;
    }
    return false;
  }

  std::string deliver_answer(const OracleContext& ctx) override {
    return ctx.notes->empty() ? std::string() : ctx.notes->back();
  }

  std::optional<int> map_element(const OracleContext& ctx,
                                 const StateSnapshot& stale,
                                 int stale_element_id,
                                 const StateSnapshot& fresh) override {
    (void)ctx;
    const ElementInfo* old_el = stale.find_element(stale_element_id);
    if (old_el == nullptr) return std::nullopt;
    const ElementInfo* match = nullptr;
    for (const ElementInfo& el : fresh.elements) {
      if (el.role == old_el->role && el.label == old_el->label) {
        if (match != nullptr) return std::nullopt;  // ambiguous
        match = &el;
      }
    }
    if (match == nullptr) return std::nullopt;
    return match->element_id;
  }

  std::vector<AgentAction> sample_actions(const OracleContext& ctx,
                                          int k) override {
    std::vector<AgentAction> out;
    if (k <= 0) return out;
    AgentAction base = gen_action(ctx);
    out.push_back(base);
    std::vector<AgentAction> cands = viable_candidates(*ctx.state);
    for (int j = 1; j < k; ++j) {
      std::uint64_t h =
          mix_seed(decision_seed(ctx, "sample"), static_cast<std::uint64_t>(j));
      if (cands.empty() || hash_to_unit(h) < inject_.sample_homogeneity) {
        out.push_back(base);
      } else {
        out.push_back(cands[splitmix64(h) % cands.size()]);
      }
    }
    return out;
  }

 private:
  // Hash root for one decision point: seed, task, place, subtask, revision.
  std::uint64_t decision_seed(const OracleContext& ctx,
                              std::string_view what) const {
    std::uint64_t h = mix_seed(ctx.rng_seed, what);
    h = mix_seed(h, ctx.task->task_id);
    h = mix_seed(h, world_->canonical(ctx.state->url));
    h = mix_seed(h, static_cast<std::uint64_t>(ctx.subtask_index));
    h = mix_seed(h, static_cast<std::uint64_t>(ctx.plan_revision));
    return h;
  }

  // Plan layout for a revision: entry per subtask, either a solution-step
  // index or -1 for an inserted filler.
  std::vector<int> plan_layout(const OracleContext& ctx, int revision) const {
    std::vector<int> layout;
    std::uint64_t h = mix_seed(ctx.rng_seed, "plan_layout");
    h = mix_seed(h, ctx.task->task_id);
    h = mix_seed(h, static_cast<std::uint64_t>(revision));
    for (int i = 0; i < static_cast<int>(ctx.task->solution.size()); ++i) {
      if (inject_.nonessential_prob > 0 &&
          hash_to_unit(mix_seed(h, static_cast<std::uint64_t>(i))) <
              inject_.nonessential_prob) {
        layout.push_back(-1);
      }
      layout.push_back(i);
    }
    return layout;
  }

  const SolutionStep* step_for(const OracleContext& ctx, int tau) const {
    std::vector<int> layout = plan_layout(ctx, ctx.plan_revision);
    if (tau < 1 || tau > static_cast<int>(layout.size())) return nullptr;
    int idx = layout[tau - 1];
    if (idx < 0) return nullptr;
    return &ctx.task->solution[idx];
  }

  // Resolve a label-level step against the live snapshot. Falls back to
  // navigating to the step's own page when the element is missing (we are
  // standing somewhere off-path).
  AgentAction materialize(const SolutionStep& step,
                          const StateSnapshot& state) const {
    switch (step.verb) {
      case Verb::kNoteDown:
        return AgentAction::note(step.text);
      case Verb::kType: {
        const ElementInfo* el = state.find_by_label("textbox", step.label);
        if (el != nullptr) return AgentAction::type_into(el->element_id, step.text);
        break;
      }
      case Verb::kClick: {
        const ElementInfo* el = state.find_by_label("link", step.label);
        if (el == nullptr) el = state.find_by_label("button", step.label);
        if (el != nullptr) return AgentAction::click(el->element_id);
        break;
      }
      default:
        break;
    }
    return AgentAction::go_to(step.from_url);
  }

  // Every action on the current page that provably navigates somewhere:
  // clicks on links/buttons plus valid queries typed into search fields, in
  // row order.
  std::vector<AgentAction> viable_candidates(const StateSnapshot& state) const {
    std::vector<AgentAction> out;
    if (!world_->has_url(state.url)) return out;
    const Page& page = world_->page_at(state.url);
    for (const PageRow& row : page.rows) {
      if (row.kind == RowKind::kLink || row.kind == RowKind::kButton) {
        const ElementInfo* el = state.find_by_label(
            row.kind == RowKind::kLink ? "link" : "button", row.label);
        if (el != nullptr) out.push_back(AgentAction::click(el->element_id));
      } else if (row.kind == RowKind::kField) {
        const ElementInfo* el = state.find_by_label("textbox", row.label);
        if (el != nullptr) {
          for (const auto& [query, target] : row.queries) {
            (void)target;
            out.push_back(AgentAction::type_into(el->element_id, query));
          }
        }
      }
    }
    return out;
  }

  std::string step_text(const SolutionStep& step) const {
    switch (step.verb) {
      case Verb::kClick: {
        std::string kind = "link";
        if (world_->has_url(step.from_url)) {
          for (const PageRow& row : world_->page_at(step.from_url).rows) {
            if (row.kind == RowKind::kButton && row.label == step.label) {
              kind = "button";
              break;
            }
          }
        }
        return "Open the next page by clicking the '" + step.label + "' " +
               kind + ".";
      }
      case Verb::kType:
        return "Search for '" + step.text + "' using the '" + step.label +
               "' box.";
      case Verb::kNoteDown:
        return "Note down the requested detail shown on the page.";
      default:
        return "Perform `" + format_action(AgentAction{step.verb}) + "`.";
    }
  }

  const SimWorld* world_;
  ErrorInjection inject_;
};

}  // namespace

nlohmann::ordered_json ErrorInjection::to_json() const {
  return nlohmann::ordered_json{
      {"wrong_action_prob", wrong_action_prob},
      {"remedy_budget", remedy_budget},
      {"remedy_contains_truth", remedy_contains_truth},
      {"nonessential_prob", nonessential_prob},
      {"sample_homogeneity", sample_homogeneity}};
}

ErrorInjection ErrorInjection::from_json(const nlohmann::ordered_json& j) {
  ErrorInjection e;
  if (j.contains("wrong_action_prob")) {
    e.wrong_action_prob = j.at("wrong_action_prob").get<double>();
  }
  if (j.contains("remedy_budget")) {
    e.remedy_budget = j.at("remedy_budget").get<int>();
  }
  if (j.contains("remedy_contains_truth")) {
    e.remedy_contains_truth = j.at("remedy_contains_truth").get<bool>();
  }
  if (j.contains("nonessential_prob")) {
    e.nonessential_prob = j.at("nonessential_prob").get<double>();
  }
  if (j.contains("sample_homogeneity")) {
    e.sample_homogeneity = j.at("sample_homogeneity").get<double>();
  }
  return e;
}

std::unique_ptr<Oracle> make_scripted_oracle(const SimWorld& world,
                                             const ErrorInjection& inject) {
  return std::make_unique<ScriptedOracle>(world, inject);
}

}  // namespace introspect
