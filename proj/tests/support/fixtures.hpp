#pragma once

// Hand-built worlds and tasks for tests: small, fully known layouts so
// expectations can be written against exact urls, labels, and payloads.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "introspect/simweb.hpp"
#include "introspect/types.hpp"

namespace fixtures {

using namespace introspect;

inline PageRow static_row(std::string text) {
  PageRow r;
  r.kind = RowKind::kStaticText;
  r.text = std::move(text);
  return r;
}

inline PageRow link_row(std::string label, std::string target) {
  PageRow r;
  r.kind = RowKind::kLink;
  r.label = std::move(label);
  r.target = std::move(target);
  return r;
}

inline PageRow button_row(std::string label, std::string target) {
  PageRow r;
  r.kind = RowKind::kButton;
  r.label = std::move(label);
  r.target = std::move(target);
  return r;
}

inline PageRow field_row(std::string label,
                         std::map<std::string, std::string> queries) {
  PageRow r;
  r.kind = RowKind::kField;
  r.label = std::move(label);
  r.queries = std::move(queries);
  return r;
}

inline SolutionStep click_step(std::string from, std::string to,
                               std::string label) {
  SolutionStep s;
  s.from_url = std::move(from);
  s.to_url = std::move(to);
  s.verb = Verb::kClick;
  s.label = std::move(label);
  return s;
}

inline SolutionStep type_step(std::string from, std::string to,
                              std::string label, std::string query) {
  SolutionStep s;
  s.from_url = std::move(from);
  s.to_url = std::move(to);
  s.verb = Verb::kType;
  s.label = std::move(label);
  s.text = std::move(query);
  return s;
}

inline SolutionStep note_step(std::string at, std::string payload) {
  SolutionStep s;
  s.from_url = at;
  s.to_url = std::move(at);
  s.verb = Verb::kNoteDown;
  s.text = std::move(payload);
  return s;
}

// Chain: root -> hop1 -> ... -> hopN. Every page also carries `decoys`
// dead-end links so a wrong click has somewhere to go.
inline SimWorld linear_world(int hops, std::uint64_t seed = 11,
                             int decoys = 2) {
  SimWorld w;
  w.seed = seed;
  w.site = "chain";
  w.start_url = "sim://chain/";
  w.id_permute_on_revisit = true;

  auto hop_url = [](int i) {
    return "sim://chain/hop" + std::to_string(i) + "/";
  };

  Page dead;
  dead.url = "sim://chain/dead-end/";
  dead.rows.push_back(static_row("Nothing to see here"));
  w.pages[dead.url] = dead;

  for (int i = 0; i <= hops; ++i) {
    Page p;
    p.url = i == 0 ? w.start_url : hop_url(i);
    p.rows.push_back(static_row(i == 0 ? "Chain home"
                                       : "Hop " + std::to_string(i)));
    if (i < hops) {
      p.rows.push_back(
          link_row("Continue " + std::to_string(i + 1), hop_url(i + 1)));
    } else {
      p.rows.push_back(static_row("Payload: terminus"));
      p.goal_payload = "terminus";
    }
    for (int d = 0; d < decoys; ++d) {
      p.rows.push_back(link_row("Detour " + std::to_string(i) + "-" +
                                    std::to_string(d),
                                dead.url));
    }
    w.pages[p.url] = p;
  }
  return w;
}

inline TaskSpec linear_nav_task(int hops) {
  TaskSpec t;
  t.task_id = "lin" + std::to_string(hops);
  t.goal = "Starting from the home page, open the 'Hop " +
           std::to_string(hops) + "' page.";
  t.site = "chain";
  t.kind = TaskKind::kNavigation;
  t.start_url = "sim://chain/";
  auto hop_url = [](int i) {
    return "sim://chain/hop" + std::to_string(i) + "/";
  };
  std::string at = t.start_url;
  for (int i = 1; i <= hops; ++i) {
    t.solution.push_back(
        click_step(at, hop_url(i), "Continue " + std::to_string(i)));
    at = hop_url(i);
  }
  t.goal_url = at;
  t.depth = static_cast<int>(t.solution.size());
  return t;
}

// An orders listing with three candidate rows; only the last order holds the
// sought item, and its detail page carries the fact to note down. Designed
// for forced wrong first attempts: probing runs #179 -> #175 -> #168.
inline SimWorld three_orders_world(std::uint64_t seed = 21) {
  SimWorld w;
  w.seed = seed;
  w.site = "orders";
  w.start_url = "sim://orders/";
  w.id_permute_on_revisit = true;

  Page root;
  root.url = w.start_url;
  root.rows.push_back(static_row("Order history"));
  root.rows.push_back(link_row("Order #179", "sim://orders/179/"));
  root.rows.push_back(link_row("Order #175", "sim://orders/175/"));
  root.rows.push_back(link_row("Order #168", "sim://orders/168/"));
  w.pages[root.url] = root;

  auto order_page = [&](const std::string& id, const std::string& item,
                        const std::string& color, bool is_goal) {
    Page p;
    p.url = "sim://orders/" + id + "/";
    p.rows.push_back(static_row("Order #" + id));
    p.rows.push_back(static_row("Item: " + item));
    p.rows.push_back(static_row("Color: " + color));
    if (is_goal) p.goal_payload = color;
    w.pages[p.url] = p;
  };
  order_page("179", "Table lamp", "Black", false);
  order_page("175", "Wall clock", "White", false);
  order_page("168", "Picture frame", "Walnut", true);
  return w;
}

inline TaskSpec three_orders_task() {
  TaskSpec t;
  t.task_id = "orders168";
  t.goal = "What color is the picture frame ordered in order #168?";
  t.site = "orders";
  t.kind = TaskKind::kInfoSeeking;
  t.answer_key = "Walnut";
  t.start_url = "sim://orders/";
  t.goal_url = "sim://orders/168/";
  t.solution.push_back(
      click_step(t.start_url, t.goal_url, "Order #168"));
  t.solution.push_back(note_step(t.goal_url, "Walnut"));
  t.depth = static_cast<int>(t.solution.size());
  return t;
}

// Two-page world where the second page is reachable both under its canonical
// url and an alias.
inline SimWorld alias_world(std::uint64_t seed = 31) {
  SimWorld w;
  w.seed = seed;
  w.site = "alias";
  w.start_url = "sim://alias/";
  w.id_permute_on_revisit = true;

  Page root;
  root.url = w.start_url;
  root.rows.push_back(static_row("Alias home"));
  root.rows.push_back(link_row("Canonical route", "sim://alias/target/"));
  root.rows.push_back(link_row("Shortcut route", "sim://alias/p/9"));
  w.pages[root.url] = root;

  Page target;
  target.url = "sim://alias/target/";
  target.aliases.push_back("sim://alias/p/9");
  target.rows.push_back(static_row("The target page"));
  w.pages[target.url] = target;
  w.alias_of["sim://alias/p/9"] = target.url;
  return w;
}

// Single long page (3 viewports tall) with the interesting link far down,
// plus a search field on the first screen.
inline SimWorld tall_world(std::uint64_t seed = 41) {
  SimWorld w;
  w.seed = seed;
  w.site = "tall";
  w.start_url = "sim://tall/";
  w.id_permute_on_revisit = true;

  Page root;
  root.url = w.start_url;
  root.rows.push_back(static_row("Tall page top"));
  root.rows.push_back(field_row(
      "Find things", {{"bottom", "sim://tall/bottom/"}}));
  for (int i = 0; i < 60; ++i) {
    root.rows.push_back(static_row("Filler line " + std::to_string(i)));
  }
  root.rows.push_back(link_row("Buried link", "sim://tall/bottom/"));
  w.pages[root.url] = root;

  Page bottom;
  bottom.url = "sim://tall/bottom/";
  bottom.rows.push_back(static_row("You made it"));
  w.pages[bottom.url] = bottom;
  return w;
}

}  // namespace fixtures
