#include "introspect/types.hpp"

namespace introspect {

std::string_view task_kind_name(TaskKind k) {
  return k == TaskKind::kNavigation ? "navigation" : "info_seeking";
}

std::string_view subtask_status_name(SubtaskStatus s) {
  switch (s) {
    case SubtaskStatus::kPending: return "pending";
    case SubtaskStatus::kActive: return "active";
    case SubtaskStatus::kDone: return "done";
    case SubtaskStatus::kSkippedNonessential: return "skipped_nonessential";
  }
  return "?";
}

const ElementInfo* StateSnapshot::find_element(int id) const {
  for (const auto& e : elements)
    if (e.element_id == id) return &e;
  return nullptr;
}

const ElementInfo* StateSnapshot::find_by_label(std::string_view role,
                                                std::string_view label) const {
  for (const auto& e : elements)
    if (e.role == role && e.label == label) return &e;
  return nullptr;
}

}  // namespace introspect
