#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace introspect {

using Json = nlohmann::ordered_json;

enum class TraceKind {
  kPlanCreated,
  kActionExecuted,
  kRemedyPushed,
  kBacktracked,
  kAlignmentChecked,
  kSubtaskCompleted,
  kTaskCompleted,
  kPlanRevised,
  kBudgetExhausted,
  kAnswerDelivered,
};

std::string_view trace_kind_name(TraceKind k);
TraceKind trace_kind_from_name(std::string_view name);

struct TraceEvent {
  TraceKind kind = TraceKind::kPlanCreated;
  std::uint64_t seq = 0;
  Json payload;
};

// Append-only event log for one task run. seq is dense from 0.
class TraceLog {
 public:
  const TraceEvent& emit(TraceKind kind, Json payload);
  const std::vector<TraceEvent>& events() const { return events_; }
  std::uint64_t next_seq() const { return static_cast<std::uint64_t>(events_.size()); }

  // One JSON object per line, fields exactly kind/seq/payload.
  std::string to_jsonl() const;
  static std::string event_to_json_line(const TraceEvent& e);
  static std::vector<TraceEvent> from_jsonl(std::string_view text);

 private:
  std::vector<TraceEvent> events_;
};

}  // namespace introspect
