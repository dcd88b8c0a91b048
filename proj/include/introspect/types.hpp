#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "introspect/actions.hpp"

namespace introspect {

struct ActionBudget {
  int max_actions_per_trial = 30;
  int max_trials = 7;
};

enum class TaskKind { kNavigation, kInfoSeeking };

std::string_view task_kind_name(TaskKind k);

// One canonical step of a recorded ground-truth solution (simulator only).
// `action` is a label-level description; element ids are resolved against the
// live snapshot at execution time since ids permute between visits.
struct SolutionStep {
  std::string from_url;   // canonical
  std::string to_url;     // canonical; equal to from_url for note_down
  Verb verb = Verb::kClick;
  std::string label;      // element label for click/type, empty otherwise
  std::string text;       // query for type, payload for note_down
};

struct TaskSpec {
  std::string task_id;
  std::string goal;
  std::string site;
  TaskKind kind = TaskKind::kNavigation;
  std::optional<std::string> answer_key;  // present iff kind == kInfoSeeking
  ActionBudget budget;

  // Ground truth, populated by the world generator.
  std::string start_url;
  std::string goal_url;                    // canonical
  std::vector<std::string> goal_url_aliases;
  std::vector<SolutionStep> solution;
  int depth = 0;  // == solution.size()
};

struct ElementInfo {
  int element_id = 0;
  std::string role;   // "link", "button", "textbox"
  std::string label;

  bool operator==(const ElementInfo&) const = default;
};

struct StateSnapshot {
  std::string state_id;
  std::string url;            // as navigated; may be an alias of the canonical url
  int viewport_top = 0;
  std::string observation;    // rendered accessibility-tree text for the viewport
  std::vector<ElementInfo> elements;  // exactly the elements inside the viewport
  int trial_step = 0;

  const ElementInfo* find_element(int id) const;
  const ElementInfo* find_by_label(std::string_view role, std::string_view label) const;
};

enum class SubtaskStatus { kPending, kActive, kDone, kSkippedNonessential };

std::string_view subtask_status_name(SubtaskStatus s);

struct Subtask {
  int index = 0;  // 1-based
  std::string description;
  SubtaskStatus status = SubtaskStatus::kPending;
  bool nonessential = false;  // planner marked this one skippable
};

// Cursor sentinel values: 0 = before the plan, size()+1 = exhausted.
struct Plan {
  std::vector<Subtask> subtasks;
  int cursor = 0;
  int revision = 0;

  static constexpr int kPrePlanCursor = 0;

  int size() const { return static_cast<int>(subtasks.size()); }
  bool exhausted_at(int cur) const { return cur > size(); }
  const Subtask& at(int index1) const { return subtasks.at(static_cast<std::size_t>(index1 - 1)); }
  Subtask& at(int index1) { return subtasks.at(static_cast<std::size_t>(index1 - 1)); }
};

struct HistoryEntry {
  int step = 0;
  AgentAction action;
  std::string description;  // produced by describe_action
  std::string pre_state;
  std::string post_state;
  std::optional<std::string> note;
};

struct FrameOrigin {
  bool is_remedy = false;
  int remedy_rank = 0;  // 1-based when is_remedy

  static FrameOrigin first_attempt() { return {false, 0}; }
  static FrameOrigin remedy(int r) { return {true, r}; }
  bool operator==(const FrameOrigin&) const = default;
};

// One unit of DFS exploration: where to stand, what to do there, and which
// subtask the action serves. The sentinel root has no pending action and a
// pre-plan cursor.
struct StackFrame {
  std::string state_id;
  std::string url;  // as navigated
  std::optional<AgentAction> pending_action;
  int subtask_cursor = Plan::kPrePlanCursor;
  FrameOrigin origin;
  std::uint64_t frame_id = 0;
  std::uint64_t parent_frame_id = 0;

  bool is_sentinel() const { return !pending_action.has_value(); }
};

}  // namespace introspect
