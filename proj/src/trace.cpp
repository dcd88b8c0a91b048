#include "introspect/trace.hpp"

#include <array>
#include <stdexcept>

namespace introspect {

namespace {

constexpr std::array<std::string_view, 10> kKindNames = {
    "plan_created",    "action_executed",  "remedy_pushed", "backtracked",
    "alignment_checked", "subtask_completed", "task_completed", "plan_revised",
    "budget_exhausted", "answer_delivered",
};

}  // namespace

std::string_view trace_kind_name(TraceKind k) {
  return kKindNames.at(static_cast<std::size_t>(k));
}

TraceKind trace_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (kKindNames[i] == name) return static_cast<TraceKind>(i);
  throw std::invalid_argument("unknown trace kind: " + std::string(name));
}

const TraceEvent& TraceLog::emit(TraceKind kind, Json payload) {
  TraceEvent e;
  e.kind = kind;
  e.seq = next_seq();
  e.payload = std::move(payload);
  events_.push_back(std::move(e));
  return events_.back();
}

std::string TraceLog::event_to_json_line(const TraceEvent& e) {
  Json j;
  j["kind"] = std::string(trace_kind_name(e.kind));
  j["seq"] = e.seq;
  j["payload"] = e.payload;
  return j.dump();
}

std::string TraceLog::to_jsonl() const {
  std::string out;
  for (const auto& e : events_) {
    out += event_to_json_line(e);
    out += '\n';
  }
  return out;
}

std::vector<TraceEvent> TraceLog::from_jsonl(std::string_view text) {
  std::vector<TraceEvent> events;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    Json j = Json::parse(line);
    TraceEvent e;
    e.kind = trace_kind_from_name(j.at("kind").get<std::string>());
    e.seq = j.at("seq").get<std::uint64_t>();
    e.payload = j.at("payload");
    events.push_back(std::move(e));
  }
  return events;
}

}  // namespace introspect
