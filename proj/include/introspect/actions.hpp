#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace introspect {

// The seven environment verbs plus the terminal answer delivery.
enum class Verb {
  kClick,
  kType,
  kScroll,
  kGoto,
  kGoBack,
  kGoForward,
  kNoteDown,
  kAnswer,
};

enum class ScrollDir { kUp, kDown };

std::string_view verb_name(Verb v);
Verb verb_from_name(std::string_view name);  // throws std::invalid_argument
std::string_view scroll_dir_name(ScrollDir d);

// One agent action. Exactly the fields required by the verb are set:
//   click      -> element_id
//   type       -> element_id, text
//   scroll     -> direction
//   goto       -> url
//   go_back    -> (none)
//   go_forward -> (none)
//   note_down  -> text
//   answer     -> text
struct AgentAction {
  Verb verb = Verb::kClick;
  std::optional<int> element_id;
  std::optional<std::string> text;
  std::optional<ScrollDir> direction;
  std::optional<std::string> url;

  bool operator==(const AgentAction&) const = default;

  static AgentAction click(int id);
  static AgentAction type_into(int id, std::string text);
  static AgentAction scroll(ScrollDir d);
  static AgentAction go_to(std::string url);
  static AgentAction back();
  static AgentAction forward();
  static AgentAction note(std::string text);
  static AgentAction answer(std::string text);

  bool targets_element() const { return verb == Verb::kClick || verb == Verb::kType; }
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Field-presence check for the verb. Free text and urls must be single line.
bool action_is_valid(const AgentAction& a);

// Bracket grammar:
//   click [id]      type [id] [text]     scroll [up|down]     goto [url]
//   go_back         go_forward           note_down [text]     ###Answer: text
// format_action requires a valid action.
std::string format_action(const AgentAction& a);

// Accepts raw oracle output: leading/trailing whitespace is ignored and the
// first line matching the grammar wins. The trailing bracket field of type /
// note_down runs to the last ']' on the line, so the text itself may contain
// brackets. Throws ParseError when no line matches.
AgentAction parse_action(std::string_view raw);

// Single-line variant used by parse_action; no throw.
std::optional<AgentAction> try_parse_action_line(std::string_view line);

}  // namespace introspect
