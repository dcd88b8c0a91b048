#include "introspect/actions.hpp"

#include <cctype>

namespace introspect {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i])))
      return false;
  }
  return true;
}

bool is_single_line(std::string_view s) {
  return s.find('\n') == std::string_view::npos && s.find('\r') == std::string_view::npos;
}

// Reads "[inner]" at the front of s (inner free of ']'), advancing s past it.
std::optional<std::string_view> take_simple_bracket(std::string_view& s) {
  s = trim(s);
  if (s.empty() || s.front() != '[') return std::nullopt;
  auto close = s.find(']');
  if (close == std::string_view::npos) return std::nullopt;
  std::string_view inner = trim(s.substr(1, close - 1));
  s.remove_prefix(close + 1);
  return inner;
}

// Reads the final "[text]" field: everything after the opening '[' up to the
// last ']' of the (already right-trimmed) line. Text may contain brackets.
std::optional<std::string_view> take_tail_bracket(std::string_view s) {
  s = trim(s);
  if (s.empty() || s.front() != '[' || s.back() != ']') return std::nullopt;
  return s.substr(1, s.size() - 2);
}

std::optional<int> parse_id(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  int value = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

std::string_view verb_name(Verb v) {
  switch (v) {
    case Verb::kClick: return "click";
    case Verb::kType: return "type";
    case Verb::kScroll: return "scroll";
    case Verb::kGoto: return "goto";
    case Verb::kGoBack: return "go_back";
    case Verb::kGoForward: return "go_forward";
    case Verb::kNoteDown: return "note_down";
    case Verb::kAnswer: return "answer";
  }
  return "?";
}

Verb verb_from_name(std::string_view name) {
  for (Verb v : {Verb::kClick, Verb::kType, Verb::kScroll, Verb::kGoto,
                 Verb::kGoBack, Verb::kGoForward, Verb::kNoteDown,
                 Verb::kAnswer}) {
    if (verb_name(v) == name) return v;
  }
  throw std::invalid_argument("unknown verb name: " + std::string(name));
}

std::string_view scroll_dir_name(ScrollDir d) {
  return d == ScrollDir::kUp ? "up" : "down";
}

AgentAction AgentAction::click(int id) {
  AgentAction a;
  a.verb = Verb::kClick;
  a.element_id = id;
  return a;
}

AgentAction AgentAction::type_into(int id, std::string text) {
  AgentAction a;
  a.verb = Verb::kType;
  a.element_id = id;
  a.text = std::move(text);
  return a;
}

AgentAction AgentAction::scroll(ScrollDir d) {
  AgentAction a;
  a.verb = Verb::kScroll;
  a.direction = d;
  return a;
}

AgentAction AgentAction::go_to(std::string url) {
  AgentAction a;
  a.verb = Verb::kGoto;
  a.url = std::move(url);
  return a;
}

AgentAction AgentAction::back() {
  AgentAction a;
  a.verb = Verb::kGoBack;
  return a;
}

AgentAction AgentAction::forward() {
  AgentAction a;
  a.verb = Verb::kGoForward;
  return a;
}

AgentAction AgentAction::note(std::string text) {
  AgentAction a;
  a.verb = Verb::kNoteDown;
  a.text = std::move(text);
  return a;
}

AgentAction AgentAction::answer(std::string text) {
  AgentAction a;
  a.verb = Verb::kAnswer;
  a.text = std::move(text);
  return a;
}

bool action_is_valid(const AgentAction& a) {
  const bool id = a.element_id.has_value();
  const bool text = a.text.has_value();
  const bool dir = a.direction.has_value();
  const bool url = a.url.has_value();
  if (text && !is_single_line(*a.text)) return false;
  if (url && (!is_single_line(*a.url) || a.url->empty() || a.url->find(']') != std::string::npos))
    return false;
  switch (a.verb) {
    case Verb::kClick: return id && !text && !dir && !url;
    case Verb::kType: return id && text && !dir && !url;
    case Verb::kScroll: return !id && !text && dir && !url;
    case Verb::kGoto: return !id && !text && !dir && url;
    case Verb::kGoBack:
    case Verb::kGoForward: return !id && !text && !dir && !url;
    case Verb::kNoteDown:
    case Verb::kAnswer: return !id && text && !dir && !url;
  }
  return false;
}

std::string format_action(const AgentAction& a) {
  if (!action_is_valid(a)) throw ParseError("format_action: malformed action");
  switch (a.verb) {
    case Verb::kClick: return "click [" + std::to_string(*a.element_id) + "]";
    case Verb::kType:
      return "type [" + std::to_string(*a.element_id) + "] [" + *a.text + "]";
    case Verb::kScroll: return std::string("scroll [") + std::string(scroll_dir_name(*a.direction)) + "]";
    case Verb::kGoto: return "goto [" + *a.url + "]";
    case Verb::kGoBack: return "go_back";
    case Verb::kGoForward: return "go_forward";
    case Verb::kNoteDown: return "note_down [" + *a.text + "]";
    case Verb::kAnswer: return "###Answer: " + *a.text;
  }
  throw ParseError("format_action: unknown verb");
}

std::optional<AgentAction> try_parse_action_line(std::string_view line) {
  std::string_view s = trim(line);
  if (s.empty()) return std::nullopt;

  if (starts_with_ci(s, "###answer")) {
    s.remove_prefix(9);
    if (!s.empty() && s.front() == ':') s.remove_prefix(1);
    return AgentAction::answer(std::string(trim(s)));
  }

  // Verb token: longest lowercase/underscore run at the front.
  std::size_t verb_end = 0;
  while (verb_end < s.size() &&
         (std::isalpha(static_cast<unsigned char>(s[verb_end])) || s[verb_end] == '_'))
    ++verb_end;
  std::string verb;
  for (char c : s.substr(0, verb_end)) verb.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  std::string_view rest = s.substr(verb_end);

  if (verb == "click") {
    auto inner = take_simple_bracket(rest);
    if (!inner) return std::nullopt;
    auto id = parse_id(*inner);
    if (!id || !trim(rest).empty()) return std::nullopt;
    return AgentAction::click(*id);
  }
  if (verb == "type") {
    auto first = take_simple_bracket(rest);
    if (!first) return std::nullopt;
    auto id = parse_id(*first);
    if (!id) return std::nullopt;
    auto text = take_tail_bracket(rest);
    if (!text) return std::nullopt;
    return AgentAction::type_into(*id, std::string(*text));
  }
  if (verb == "scroll") {
    auto inner = take_simple_bracket(rest);
    if (!inner || !trim(rest).empty()) return std::nullopt;
    if (*inner == "up") return AgentAction::scroll(ScrollDir::kUp);
    if (*inner == "down") return AgentAction::scroll(ScrollDir::kDown);
    return std::nullopt;
  }
  if (verb == "goto") {
    auto inner = take_tail_bracket(rest);
    if (!inner) return std::nullopt;
    std::string url(trim(*inner));
    if (url.empty() || url.find(']') != std::string::npos) return std::nullopt;
    return AgentAction::go_to(std::move(url));
  }
  if (verb == "go_back" && trim(rest).empty()) return AgentAction::back();
  if (verb == "go_forward" && trim(rest).empty()) return AgentAction::forward();
  if (verb == "note_down") {
    auto text = take_tail_bracket(rest);
    if (!text) return std::nullopt;
    return AgentAction::note(std::string(*text));
  }
  return std::nullopt;
}

AgentAction parse_action(std::string_view raw) {
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t eol = raw.find('\n', pos);
    std::string_view line =
        raw.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    if (auto a = try_parse_action_line(line)) return *a;
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  throw ParseError("parse_action: no action grammar matched in: " +
                   std::string(trim(raw).substr(0, 120)));
}

}  // namespace introspect
