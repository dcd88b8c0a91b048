#include "introspect/simweb.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "introspect/rng.hpp"

namespace introspect {

namespace {

constexpr std::string_view kRowKindNames[] = {"static_text", "link", "button", "field"};

std::string_view role_for(RowKind k) {
  switch (k) {
    case RowKind::kLink: return "link";
    case RowKind::kButton: return "button";
    case RowKind::kField: return "textbox";
    case RowKind::kStaticText: return "";
  }
  return "";
}

}  // namespace

std::string_view row_kind_name(RowKind k) {
  return kRowKindNames[static_cast<std::size_t>(k)];
}

RowKind row_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < 4; ++i)
    if (kRowKindNames[i] == name) return static_cast<RowKind>(i);
  throw std::invalid_argument("unknown row kind: " + std::string(name));
}

std::string normalize_text(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

int Page::interactive_count() const {
  int n = 0;
  for (const auto& r : rows)
    if (r.kind != RowKind::kStaticText) ++n;
  return n;
}

const std::string& SimWorld::canonical(const std::string& url) const {
  auto it = alias_of.find(url);
  return it == alias_of.end() ? url : it->second;
}

bool SimWorld::has_url(const std::string& url) const {
  return pages.count(url) > 0 || alias_of.count(url) > 0;
}

const Page& SimWorld::page_at(const std::string& url) const {
  auto it = pages.find(canonical(url));
  if (it == pages.end()) throw EnvError(EnvErrorKind::kUnknownUrl, "no page at " + url);
  return it->second;
}

nlohmann::ordered_json SimWorld::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["site"] = site;
  j["start_url"] = start_url;
  j["id_permute_on_revisit"] = id_permute_on_revisit;
  j["viewport_rows"] = kViewportRows;
  auto pages_json = nlohmann::ordered_json::array();
  for (const auto& [url, page] : pages) {
    nlohmann::ordered_json p;
    p["url"] = url;
    if (!page.aliases.empty()) p["aliases"] = page.aliases;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : page.rows) {
      nlohmann::ordered_json row;
      row["kind"] = std::string(row_kind_name(r.kind));
      if (r.kind == RowKind::kStaticText) {
        row["text"] = r.text;
      } else {
        row["label"] = r.label;
        if (!r.target.empty()) row["target"] = r.target;
        if (!r.queries.empty()) row["queries"] = r.queries;
      }
      rows.push_back(std::move(row));
    }
    p["rows"] = std::move(rows);
    if (page.goal_payload) p["goal_payload"] = *page.goal_payload;
    pages_json.push_back(std::move(p));
  }
  j["pages"] = std::move(pages_json);
  return j;
}

SimWorld SimWorld::from_json(const nlohmann::ordered_json& j) {
  SimWorld w;
  w.seed = j.at("seed").get<std::uint64_t>();
  w.site = j.at("site").get<std::string>();
  w.start_url = j.at("start_url").get<std::string>();
  w.id_permute_on_revisit = j.at("id_permute_on_revisit").get<bool>();
  for (const auto& p : j.at("pages")) {
    Page page;
    page.url = p.at("url").get<std::string>();
    if (p.contains("aliases")) page.aliases = p.at("aliases").get<std::vector<std::string>>();
    for (const auto& row : p.at("rows")) {
      PageRow r;
      r.kind = row_kind_from_name(row.at("kind").get<std::string>());
      if (r.kind == RowKind::kStaticText) {
        r.text = row.at("text").get<std::string>();
      } else {
        r.label = row.at("label").get<std::string>();
        if (row.contains("target")) r.target = row.at("target").get<std::string>();
        if (row.contains("queries"))
          r.queries = row.at("queries").get<std::map<std::string, std::string>>();
      }
      page.rows.push_back(std::move(r));
    }
    if (p.contains("goal_payload")) page.goal_payload = p.at("goal_payload").get<std::string>();
    for (const auto& a : page.aliases) w.alias_of[a] = page.url;
    w.pages[page.url] = std::move(page);
  }
  return w;
}

EnvCursor::EnvCursor(const SimWorld& world, std::string start_url) : world_(&world) {
  if (!world.has_url(start_url))
    throw EnvError(EnvErrorKind::kUnknownUrl, "start url off-world: " + start_url);
  arrive(start_url, false);
}

EnvCursor::EnvCursor(const SimWorld& world) : EnvCursor(world, world.start_url) {}

const Page& EnvCursor::current_page() const { return world_->page_at(current_url_); }

std::vector<EnvCursor::RowElement> EnvCursor::current_elements() const {
  const Page& page = current_page();
  const std::string& canon = world_->canonical(current_url_);
  int visit = world_->id_permute_on_revisit ? visit_counts_.at(canon) : 1;
  SeededRng rng(mix_seed(mix_seed(world_->seed, canon), static_cast<std::uint64_t>(visit)));

  int n = page.interactive_count();
  std::vector<RowElement> out;
  if (n == 0) return out;
  // Distinct pseudo-random ids from a universe ~10x the element count, in row
  // order. Stable for a given (seed, url, visit).
  std::set<int> used;
  int universe = 10 * n + 20;
  for (int row = 0; row < static_cast<int>(page.rows.size()); ++row) {
    if (page.rows[static_cast<std::size_t>(row)].kind == RowKind::kStaticText) continue;
    int id;
    do {
      id = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(universe)));
    } while (!used.insert(id).second);
    out.push_back({id, row});
  }
  return out;
}

std::string EnvCursor::current_state_id() const {
  return current_url_ + "#" + std::to_string(viewport_top_);
}

StateSnapshot EnvCursor::observe() const {
  const Page& page = current_page();
  auto elements = current_elements();

  StateSnapshot snap;
  snap.state_id = current_state_id();
  snap.url = current_url_;
  snap.viewport_top = viewport_top_;
  snap.trial_step = trial_step_;

  const std::string& canon = world_->canonical(current_url_);
  int lo = viewport_top_;
  int hi = std::min<int>(viewport_top_ + kViewportRows, static_cast<int>(page.rows.size()));
  std::ostringstream text;
  for (int row = lo; row < hi; ++row) {
    const PageRow& r = page.rows[static_cast<std::size_t>(row)];
    if (r.kind == RowKind::kStaticText) {
      text << "StaticText '" << r.text << "'\n";
      continue;
    }
    int id = 0;
    for (const auto& e : elements)
      if (e.row_index == row) id = e.element_id;
    text << "[" << id << "] " << role_for(r.kind) << " '" << r.label << "'";
    auto typed = typed_state_.find({canon, row});
    if (r.kind == RowKind::kField && typed != typed_state_.end())
      text << " value='" << typed->second << "'";
    text << "\n";
    snap.elements.push_back({id, std::string(role_for(r.kind)), r.label});
  }
  snap.observation = text.str();
  return snap;
}

bool EnvCursor::url_visited(const std::string& url) const {
  return visit_counts_.count(world_->canonical(url)) > 0;
}

void EnvCursor::arrive(const std::string& url, bool push_history) {
  if (push_history) {
    back_stack_.push_back(current_url_);
    forward_stack_.clear();
  }
  current_url_ = url;
  viewport_top_ = 0;
  visit_counts_[world_->canonical(url)] += 1;
  nav_counter_ += 1;
}

void EnvCursor::reset_for_new_trial() {
  back_stack_.clear();
  forward_stack_.clear();
  actions_executed_ = 0;
  trial_step_ = 0;
  arrive(world_->start_url, false);
}

StateSnapshot EnvCursor::execute(const AgentAction& a) {
  if (!action_is_valid(a))
    throw EnvError(EnvErrorKind::kUnknownElement, "malformed action: " + std::string(verb_name(a.verb)));

  const Page& page = current_page();
  const std::string& canon = world_->canonical(current_url_);

  switch (a.verb) {
    case Verb::kClick: {
      StateSnapshot now = observe();
      const ElementInfo* el = now.find_element(*a.element_id);
      if (!el)
        throw EnvError(EnvErrorKind::kUnknownElement,
                       "click: no element [" + std::to_string(*a.element_id) + "] in viewport of " +
                           current_url_);
      // Locate the backing row for the element.
      int row_index = -1;
      for (const auto& re : current_elements())
        if (re.element_id == *a.element_id) row_index = re.row_index;
      const PageRow& row = page.rows[static_cast<std::size_t>(row_index)];
      if (row.kind == RowKind::kLink || row.kind == RowKind::kButton) {
        arrive(row.target, true);
      }
      // Clicking a field just focuses it; no page change.
      break;
    }
    case Verb::kType: {
      StateSnapshot now = observe();
      const ElementInfo* el = now.find_element(*a.element_id);
      if (!el || el->role != "textbox")
        throw EnvError(EnvErrorKind::kUnknownElement,
                       "type: no textbox [" + std::to_string(*a.element_id) + "] in viewport of " +
                           current_url_);
      int row_index = -1;
      for (const auto& re : current_elements())
        if (re.element_id == *a.element_id) row_index = re.row_index;
      const PageRow& row = page.rows[static_cast<std::size_t>(row_index)];
      typed_state_[{canon, row_index}] = *a.text;
      auto hit = row.queries.find(normalize_text(*a.text));
      if (hit != row.queries.end()) arrive(hit->second, true);
      break;
    }
    case Verb::kScroll: {
      int max_top = std::max<int>(0, static_cast<int>(page.rows.size()) - 1);
      int delta = (*a.direction == ScrollDir::kDown) ? kViewportRows : -kViewportRows;
      viewport_top_ = std::clamp(viewport_top_ + delta, 0, max_top);
      break;
    }
    case Verb::kGoto: {
      if (!world_->has_url(*a.url))
        throw EnvError(EnvErrorKind::kUnknownUrl, "goto: off-world url " + *a.url);
      // Closed sandbox: only the site root and previously visited pages.
      if (!url_visited(*a.url) && world_->canonical(*a.url) != world_->canonical(world_->start_url))
        throw EnvError(EnvErrorKind::kUnknownUrl, "goto: url not yet visited " + *a.url);
      arrive(*a.url, true);
      break;
    }
    case Verb::kGoBack: {
      if (back_stack_.empty())
        throw EnvError(EnvErrorKind::kNavUnderflow, "go_back at history root");
      std::string to = back_stack_.back();
      back_stack_.pop_back();
      forward_stack_.push_back(current_url_);
      current_url_ = to;
      viewport_top_ = 0;
      visit_counts_[world_->canonical(to)] += 1;
      nav_counter_ += 1;
      break;
    }
    case Verb::kGoForward: {
      if (forward_stack_.empty())
        throw EnvError(EnvErrorKind::kNavUnderflow, "go_forward with empty forward history");
      std::string to = forward_stack_.back();
      forward_stack_.pop_back();
      back_stack_.push_back(current_url_);
      current_url_ = to;
      viewport_top_ = 0;
      visit_counts_[world_->canonical(to)] += 1;
      nav_counter_ += 1;
      break;
    }
    case Verb::kNoteDown:
      notes_.push_back(*a.text);
      break;
    case Verb::kAnswer:
      break;  // terminal bookkeeping action, page untouched
  }

  actions_executed_ += 1;
  trial_step_ += 1;
  return observe();
}

}  // namespace introspect
