#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "introspect/types.hpp"

namespace introspect {

// Text analogue of a 1280x720 screen.
inline constexpr int kViewportRows = 24;

enum class RowKind { kStaticText, kLink, kButton, kField };

std::string_view row_kind_name(RowKind k);
RowKind row_kind_from_name(std::string_view name);

// One viewport line of a page. Links and buttons navigate to `target` when
// clicked. A field records typed text; when the typed text matches one of
// `queries` (case-folded, whitespace-collapsed) the environment navigates to
// the mapped url, mirroring search-with-implicit-ENTER.
struct PageRow {
  RowKind kind = RowKind::kStaticText;
  std::string text;    // static text content
  std::string label;   // element label for link/button/field
  std::string target;  // destination url for link/button
  std::map<std::string, std::string> queries;  // normalized query -> url (field)
};

struct Page {
  std::string url;  // canonical
  std::vector<std::string> aliases;
  std::vector<PageRow> rows;
  std::optional<std::string> goal_payload;

  int interactive_count() const;
};

struct SimWorld {
  std::uint64_t seed = 0;
  std::string site;
  std::string start_url;
  bool id_permute_on_revisit = true;
  std::map<std::string, Page> pages;          // canonical url -> page
  std::map<std::string, std::string> alias_of;  // alias url -> canonical url

  const Page& page_at(const std::string& url) const;  // resolves aliases
  const std::string& canonical(const std::string& url) const;
  bool has_url(const std::string& url) const;

  nlohmann::ordered_json to_json() const;
  static SimWorld from_json(const nlohmann::ordered_json& j);
};

enum class EnvErrorKind { kUnknownElement, kUnknownUrl, kNavUnderflow };

struct EnvError : std::runtime_error {
  EnvErrorKind kind;
  EnvError(EnvErrorKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

// Mutable position of one task run inside an immutable SimWorld. Single owner;
// never shared across runs.
class EnvCursor {
 public:
  EnvCursor(const SimWorld& world, std::string start_url);
  explicit EnvCursor(const SimWorld& world);

  StateSnapshot observe() const;

  // Executes one action and returns the resulting snapshot. Every verb counts
  // one action. Throws EnvError without mutating anything on bad input.
  StateSnapshot execute(const AgentAction& a);

  // New trial: back to the start url with a fresh nav stack and a zeroed
  // action counter. Notes, typed text, and visit counts survive; the world
  // does not forget what happened to it.
  void reset_for_new_trial();

  const std::string& current_url() const { return current_url_; }
  int viewport_top() const { return viewport_top_; }
  int actions_executed() const { return actions_executed_; }
  const std::vector<std::string>& notes() const { return notes_; }
  void add_note(std::string note) { notes_.push_back(std::move(note)); }
  int trial_step() const { return trial_step_; }

  // Stable identity of the current page-state; equal ids mean no backtracking
  // navigation is needed to stand "here" again.
  std::string current_state_id() const;

 private:
  struct RowElement {
    int element_id;
    int row_index;
  };

  const Page& current_page() const;
  // Element ids for the current visit, derived from (seed, url, visit count).
  std::vector<RowElement> current_elements() const;
  void arrive(const std::string& url, bool push_history);
  bool url_visited(const std::string& url) const;

  const SimWorld* world_;
  std::string current_url_;   // as navigated (may be an alias)
  int viewport_top_ = 0;
  std::vector<std::string> back_stack_;
  std::vector<std::string> forward_stack_;
  std::map<std::pair<std::string, int>, std::string> typed_state_;  // (canonical, row) -> text
  std::vector<std::string> notes_;
  std::map<std::string, int> visit_counts_;  // canonical url -> arrivals
  int actions_executed_ = 0;
  int trial_step_ = 0;
  std::uint64_t nav_counter_ = 0;  // increments on every arrival
};

// Case-fold and collapse whitespace; shared by search matching and answer
// scoring.
std::string normalize_text(std::string_view s);

}  // namespace introspect
