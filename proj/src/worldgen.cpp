#include "introspect/worldgen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "introspect/rng.hpp"

namespace introspect {
namespace {

using nlohmann::ordered_json;

const char* const kAdjectives[] = {
    "Vintage", "Modern",  "Rustic", "Oak",    "Brass",  "Nordic", "Velvet",
    "Coastal", "Urban",   "Walnut", "Amber",  "Ivory",  "Crimson", "Cobalt",
    "Slate",   "Maple",   "Linen",  "Copper", "Marble", "Willow"};
const char* const kNouns[] = {
    "Lamps",  "Desks",   "Chairs",   "Rugs",     "Mirrors",  "Shelves",
    "Clocks", "Vases",   "Frames",   "Sofas",    "Benches",  "Stools",
    "Cabinets", "Planters", "Curtains", "Kettles", "Blankets", "Baskets"};

struct AttrPool {
  const char* attr;
  std::vector<const char*> values;
};

const AttrPool kAttrPools[] = {
    {"Color",
     {"Slate Blue", "Forest Green", "Burnt Orange", "Dusty Rose",
      "Charcoal Gray", "Ivory White", "Deep Teal", "Mustard Yellow"}},
    {"Material",
     {"Solid Oak", "Brushed Steel", "Woven Rattan", "Tempered Glass",
      "Recycled Plastic", "Cast Iron", "Bamboo Veneer", "Genuine Leather"}},
    {"Finish",
     {"Matte Black", "Glossy White", "Satin Nickel", "Antique Bronze",
      "Natural Wood", "Powder Blue"}},
    {"Origin",
     {"Portugal", "Vietnam", "Denmark", "Mexico", "Indonesia", "Canada"}},
    {"Weight", {"2.5 kg", "4.1 kg", "7.8 kg", "12 kg", "0.9 kg"}},
    {"Rating", {"4.2 stars", "3.8 stars", "4.9 stars", "4.5 stars"}},
};

// More children than this would push rows past the viewport, making deep
// links unreachable without scrolling.
constexpr int kMaxChildrenPerNode = 12;

std::string slugify(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c >= 'A' && c <= 'Z') {
      out.push_back(static_cast<char>(c - 'A' + 'a'));
    } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      out.push_back(c);
    } else if (!out.empty() && out.back() != '-') {
      out.push_back('-');
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? "page" : out;
}

std::string lowercase(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

struct GenNode {
  int id = 0;
  int depth = 0;
  int parent = -1;
  std::string topic;
  std::string url;    // canonical
  std::string alias;  // empty if none
  // Edge from the parent that reaches this node.
  Verb edge_verb = Verb::kClick;
  bool edge_is_button = false;
  std::string edge_label;  // clickable label, or the search field's label
  std::string edge_query;  // only for type edges
  std::string fact_attr;
  std::string fact_value;
  std::vector<int> children;
  bool used_as_goal = false;
};

class TreeBuilder {
 public:
  TreeBuilder(std::uint64_t seed, const WorldProfile& profile)
      : rng_(seed), profile_(profile) {
    GenNode root;
    root.id = 0;
    root.depth = 0;
    root.topic = "Onestop";
    root.url = "sim://" + profile.site + "/";
    root.fact_attr = kAttrPools[0].attr;
    root.fact_value = kAttrPools[0].values[0];
    nodes_.push_back(root);
    by_depth_[0].push_back(0);
    url_taken_.insert(root.url);
  }

  std::vector<GenNode>& nodes() { return nodes_; }

  // Hands out a node at the requested depth, growing the tree when the pool
  // at that depth is spent and recycling goal nodes under page pressure.
  int take_goal_node(int depth) {
    if (depth == 0) return 0;
    for (int id : by_depth_[depth]) {
      if (!nodes_[id].used_as_goal) {
        nodes_[id].used_as_goal = true;
        return id;
      }
    }
    if (can_afford(profile_.branching_min)) {
      int parent = expansion_parent(depth - 1);
      expand(parent);
      for (int id : by_depth_[depth]) {
        if (!nodes_[id].used_as_goal) {
          nodes_[id].used_as_goal = true;
          return id;
        }
      }
    }
    // Page budget exhausted: reuse an existing goal node round-robin.
    auto& pool = by_depth_[depth];
    if (pool.empty()) {
      throw std::runtime_error("page budget too small for requested depth " +
                               std::to_string(depth));
    }
    int pick = pool[reuse_cursor_[depth] % pool.size()];
    reuse_cursor_[depth]++;
    return pick;
  }

  // Pads the world with decoy pages up to min_pages.
  void pad_to_min_pages() {
    int guard = 0;
    while (static_cast<int>(nodes_.size()) < profile_.min_pages &&
           can_afford(profile_.branching_min) && guard++ < 10000) {
      expand(expansion_parent(pad_depth_cursor_++ % 3));
    }
  }

 private:
  bool can_afford(int new_children) const {
    return static_cast<int>(nodes_.size()) + new_children <=
           profile_.max_pages;
  }

  // Picks (or creates) a node at `depth` that still has room for children.
  int expansion_parent(int depth) {
    int best = -1;
    for (int id : by_depth_[depth]) {
      int room = kMaxChildrenPerNode - static_cast<int>(nodes_[id].children.size());
      if (room >= profile_.branching_min) {
        if (best < 0 ||
            nodes_[id].children.size() < nodes_[best].children.size()) {
          best = id;
        }
      }
    }
    if (best >= 0) return best;
    if (depth == 0) {
      throw std::runtime_error("site root is saturated; raise max pages");
    }
    int grandparent = expansion_parent(depth - 1);
    expand(grandparent);
    return expansion_parent(depth);
  }

  void expand(int parent_id) {
    int span = profile_.branching_max - profile_.branching_min + 1;
    int b = profile_.branching_min + static_cast<int>(rng_.below(span));
    int room = profile_.max_pages - static_cast<int>(nodes_.size());
    b = std::min(b, std::max(1, room));
    b = std::min(b, kMaxChildrenPerNode -
                        static_cast<int>(nodes_[parent_id].children.size()));
    for (int i = 0; i < b; ++i) add_child(parent_id);
  }

  void add_child(int parent_id) {
    GenNode child;
    child.id = static_cast<int>(nodes_.size());
    child.parent = parent_id;
    child.depth = nodes_[parent_id].depth + 1;
    child.topic = fresh_topic(parent_id);

    std::string url = nodes_[parent_id].url + slugify(child.topic) + "/";
    while (url_taken_.count(url)) {
      url = nodes_[parent_id].url + slugify(child.topic) + "-" +
            std::to_string(child.id) + "/";
    }
    child.url = url;
    url_taken_.insert(url);

    if (rng_.chance(profile_.alias_link_prob)) {
      child.alias =
          "sim://" + profile_.site + "/p/" + std::to_string(child.id);
    }
    if (rng_.chance(profile_.search_hop_prob)) {
      child.edge_verb = Verb::kType;
      child.edge_label = "Search " + nodes_[parent_id].topic;
      child.edge_query = lowercase(child.topic);
    } else {
      child.edge_verb = Verb::kClick;
      child.edge_is_button = rng_.chance(profile_.button_edge_prob);
      child.edge_label =
          child.edge_is_button ? "View " + child.topic : child.topic;
    }

    const AttrPool& pool =
        kAttrPools[rng_.below(std::size(kAttrPools))];
    child.fact_attr = pool.attr;
    child.fact_value = pool.values[rng_.below(pool.values.size())];

    nodes_[parent_id].children.push_back(child.id);
    by_depth_[child.depth].push_back(child.id);
    nodes_.push_back(std::move(child));
  }

  // Topic unique among the parent's children (labels must identify a single
  // element on the parent page).
  std::string fresh_topic(int parent_id) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::string topic =
          std::string(kAdjectives[rng_.below(std::size(kAdjectives))]) + " " +
          kNouns[rng_.below(std::size(kNouns))];
      bool clash = topic == nodes_[parent_id].topic;
      for (int sib : nodes_[parent_id].children) {
        clash = clash || nodes_[sib].topic == topic;
      }
      if (!clash) return topic;
    }
    return "Aisle " + std::to_string(nodes_.size());
  }

  SeededRng rng_;
  const WorldProfile& profile_;
  std::vector<GenNode> nodes_;
  std::map<int, std::vector<int>> by_depth_;
  std::map<int, std::size_t> reuse_cursor_;
  int pad_depth_cursor_ = 0;
  std::set<std::string> url_taken_;
};

// Largest-remainder allocation of n tasks over the weighted depths, so the
// realized histogram tracks the target distribution even for small n.
std::vector<int> allocate_depths(int n, const std::map<int, double>& weights,
                                 SeededRng& rng) {
  double total = 0;
  for (const auto& [d, w] : weights) total += w;
  if (total <= 0 || weights.empty()) {
    throw std::invalid_argument("depth weights must have positive mass");
  }
  struct Slot {
    int depth;
    int count;
    double frac;
  };
  std::vector<Slot> slots;
  int assigned = 0;
  for (const auto& [d, w] : weights) {
    double exact = n * w / total;
    int count = static_cast<int>(std::floor(exact));
    slots.push_back({d, count, exact - count});
    assigned += count;
  }
  std::stable_sort(slots.begin(), slots.end(),
                   [](const Slot& a, const Slot& b) { return a.frac > b.frac; });
  for (int i = 0; assigned < n; ++i) {
    slots[i % slots.size()].count++;
    assigned++;
  }
  std::vector<int> depths;
  for (const auto& s : slots) {
    for (int i = 0; i < s.count; ++i) depths.push_back(s.depth);
  }
  std::sort(depths.begin(), depths.end());
  seeded_shuffle(depths, rng);
  return depths;
}

SimWorld materialize_world(std::uint64_t seed, const WorldProfile& profile,
                           const std::vector<GenNode>& nodes) {
  SimWorld world;
  world.seed = seed;
  world.site = profile.site;
  world.start_url = nodes[0].url;
  world.id_permute_on_revisit = profile.id_permute_on_revisit;
  for (const GenNode& node : nodes) {
    Page page;
    page.url = node.url;
    if (!node.alias.empty()) {
      page.aliases.push_back(node.alias);
      world.alias_of[node.alias] = node.url;
    }
    page.goal_payload = node.fact_value;

    PageRow header;
    header.kind = RowKind::kStaticText;
    header.text = node.id == 0 ? "Welcome to " + node.topic : node.topic;
    page.rows.push_back(header);

    PageRow fact;
    fact.kind = RowKind::kStaticText;
    fact.text = node.fact_attr + ": " + node.fact_value;
    page.rows.push_back(fact);

    // One shared search field serves every type-edge child of this page.
    std::map<std::string, std::string> queries;
    for (int child_id : node.children) {
      const GenNode& child = nodes[child_id];
      if (child.edge_verb == Verb::kType) {
        queries[normalize_text(child.edge_query)] =
            child.alias.empty() ? child.url : child.alias;
      }
    }
    if (!queries.empty()) {
      PageRow field;
      field.kind = RowKind::kField;
      field.label = "Search " + node.topic;
      field.queries = queries;
      page.rows.push_back(field);
    }

    for (int child_id : node.children) {
      const GenNode& child = nodes[child_id];
      if (child.edge_verb != Verb::kClick) continue;
      PageRow row;
      row.kind = child.edge_is_button ? RowKind::kButton : RowKind::kLink;
      row.label = child.edge_label;
      row.target = child.alias.empty() ? child.url : child.alias;
      page.rows.push_back(row);
    }
    world.pages[node.url] = std::move(page);
  }
  return world;
}

std::vector<SolutionStep> path_steps(const std::vector<GenNode>& nodes,
                                     int goal_id) {
  std::vector<int> chain;
  for (int id = goal_id; id != -1; id = nodes[id].parent) chain.push_back(id);
  std::reverse(chain.begin(), chain.end());
  std::vector<SolutionStep> steps;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const GenNode& parent = nodes[chain[i - 1]];
    const GenNode& child = nodes[chain[i]];
    SolutionStep step;
    step.from_url = parent.url;
    step.to_url = child.url;
    step.verb = child.edge_verb;
    step.label = child.edge_verb == Verb::kType ? "Search " + parent.topic
                                                : child.edge_label;
    step.text = child.edge_query;
    steps.push_back(std::move(step));
  }
  return steps;
}

// Replays every recorded solution against a fresh cursor and cross-checks
// recorded depth against true shortest-path distance. Returns false when the
// generated world fails its own ground truth.
bool audit_suite(const GeneratedSuite& suite) {
  // Adjacency over click/type edges, canonical urls.
  std::unordered_map<std::string, std::vector<std::string>> adj;
  for (const auto& [url, page] : suite.world.pages) {
    auto& out = adj[url];
    for (const PageRow& row : page.rows) {
      if (row.kind == RowKind::kLink || row.kind == RowKind::kButton) {
        out.push_back(suite.world.canonical(row.target));
      }
      for (const auto& [_, target] : row.queries) {
        out.push_back(suite.world.canonical(target));
      }
    }
  }
  auto bfs_dist = [&](const std::string& from, const std::string& to) {
    std::unordered_map<std::string, int> dist{{from, 0}};
    std::deque<std::string> queue{from};
    while (!queue.empty()) {
      std::string cur = queue.front();
      queue.pop_front();
      if (cur == to) return dist[cur];
      for (const std::string& next : adj[cur]) {
        if (!dist.count(next)) {
          dist[next] = dist[cur] + 1;
          queue.push_back(next);
        }
      }
    }
    return -1;
  };

  for (const TaskSpec& task : suite.tasks) {
    if (task.depth != static_cast<int>(task.solution.size())) return false;
    int nav_hops = static_cast<int>(task.solution.size());
    if (task.kind == TaskKind::kInfoSeeking) nav_hops -= 1;
    if (bfs_dist(task.start_url, task.goal_url) != nav_hops) return false;

    EnvCursor cursor(suite.world);
    for (const SolutionStep& step : task.solution) {
      StateSnapshot now = cursor.observe();
      if (step.verb == Verb::kNoteDown) {
        cursor.execute(AgentAction::note(step.text));
        continue;
      }
      const ElementInfo* el = step.verb == Verb::kType
                                  ? now.find_by_label("textbox", step.label)
                                  : now.find_by_label("link", step.label);
      if (el == nullptr && step.verb == Verb::kClick) {
        el = now.find_by_label("button", step.label);
      }
      if (el == nullptr) return false;
      if (step.verb == Verb::kClick) {
        cursor.execute(AgentAction::click(el->element_id));
      } else if (step.verb == Verb::kType) {
        cursor.execute(AgentAction::type_into(el->element_id, step.text));
      } else {
        return false;
      }
      if (suite.world.canonical(cursor.current_url()) != step.to_url) {
        return false;
      }
    }
    if (suite.world.canonical(cursor.current_url()) != task.goal_url) {
      return false;
    }
    if (task.kind == TaskKind::kInfoSeeking) {
      if (!task.answer_key.has_value()) return false;
      if (cursor.notes().empty() ||
          cursor.notes().back() != *task.answer_key) {
        return false;
      }
    }
  }
  return true;
}

GeneratedSuite generate_once(std::uint64_t seed, const WorldProfile& profile,
                             int attempt) {
  std::uint64_t run_seed =
      mix_seed(mix_seed(seed, "worldgen"), static_cast<std::uint64_t>(attempt));
  SeededRng rng(run_seed);

  std::vector<int> depths =
      allocate_depths(profile.n_tasks, profile.depth_weights, rng);
  int n_info = static_cast<int>(
      std::llround(profile.info_share * profile.n_tasks));
  std::vector<TaskKind> kinds(profile.n_tasks, TaskKind::kNavigation);
  std::fill(kinds.begin(), kinds.begin() + std::min(n_info, profile.n_tasks),
            TaskKind::kInfoSeeking);
  seeded_shuffle(kinds, rng);

  // Deep tasks first so shallow ones can reuse the trunks they grow.
  std::vector<std::size_t> order(depths.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return depths[a] > depths[b];
  });

  TreeBuilder builder(rng.next(), profile);
  struct Draft {
    std::size_t slot;
    int goal_id;
  };
  std::vector<Draft> drafts;
  for (std::size_t slot : order) {
    int depth = depths[slot];
    int goal_depth =
        kinds[slot] == TaskKind::kInfoSeeking ? depth - 1 : depth;
    drafts.push_back({slot, builder.take_goal_node(goal_depth)});
  }
  builder.pad_to_min_pages();

  const std::vector<GenNode>& nodes = builder.nodes();
  GeneratedSuite suite;
  suite.world = materialize_world(seed, profile, nodes);

  std::vector<TaskSpec> tasks(depths.size());
  for (const Draft& draft : drafts) {
    const GenNode& goal = nodes[draft.goal_id];
    TaskSpec task;
    task.site = profile.site;
    task.kind = kinds[draft.slot];
    task.start_url = suite.world.start_url;
    task.goal_url = goal.url;
    if (!goal.alias.empty()) task.goal_url_aliases.push_back(goal.alias);
    task.solution = path_steps(nodes, draft.goal_id);
    if (task.kind == TaskKind::kNavigation) {
      task.goal = "Starting from the home page, open the '" + goal.topic +
                  "' page.";
    } else {
      SolutionStep note;
      note.from_url = goal.url;
      note.to_url = goal.url;
      note.verb = Verb::kNoteDown;
      note.text = goal.fact_value;
      task.solution.push_back(std::move(note));
      task.answer_key = goal.fact_value;
      task.goal = "What is the " + lowercase(goal.fact_attr) +
                  " listed on the '" + goal.topic + "' page?";
    }
    task.depth = static_cast<int>(task.solution.size());
    tasks[draft.slot] = std::move(task);
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    std::string num = std::to_string(i);
    while (num.size() < 3) num.insert(num.begin(), '0');
    tasks[i].task_id = "t" + num;
  }
  suite.tasks = std::move(tasks);
  return suite;
}

}  // namespace

WorldProfile WorldProfile::defaults() {
  WorldProfile p;
  p.depth_weights = {
      {2, 0.02},  {3, 0.05},   {4, 0.12},  {5, 0.16},  {6, 0.15},
      {7, 0.12},  {8, 0.09},   {9, 0.07},  {10, 0.05}, {11, 0.04},
      {12, 0.03}, {13, 0.025}, {14, 0.02}, {15, 0.015}, {16, 0.012},
      {17, 0.01}, {18, 0.008}, {19, 0.006}, {20, 0.004}};
  return p;
}

ordered_json WorldProfile::to_json() const {
  ordered_json weights = ordered_json::object();
  for (const auto& [d, w] : depth_weights) weights[std::to_string(d)] = w;
  return ordered_json{{"site", site},
                      {"min_pages", min_pages},
                      {"max_pages", max_pages},
                      {"branching_min", branching_min},
                      {"branching_max", branching_max},
                      {"depth_weights", weights},
                      {"info_share", info_share},
                      {"n_tasks", n_tasks},
                      {"search_hop_prob", search_hop_prob},
                      {"button_edge_prob", button_edge_prob},
                      {"alias_link_prob", alias_link_prob},
                      {"id_permute_on_revisit", id_permute_on_revisit}};
}

WorldProfile WorldProfile::from_json(const ordered_json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("world profile must be a JSON object");
  }
  static constexpr std::string_view kKnownKeys[] = {
      "site",          "min_pages",       "max_pages",
      "branching_min", "branching_max",   "depth_weights",
      "info_share",    "n_tasks",         "search_hop_prob",
      "button_edge_prob", "alias_link_prob", "id_permute_on_revisit"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = false;
    for (std::string_view k : kKnownKeys) known = known || k == key;
    if (!known) {
      throw std::invalid_argument("unknown world profile key: " + key);
    }
  }
  WorldProfile p = defaults();
  if (j.contains("site")) p.site = j.at("site").get<std::string>();
  if (j.contains("min_pages")) p.min_pages = j.at("min_pages").get<int>();
  if (j.contains("max_pages")) p.max_pages = j.at("max_pages").get<int>();
  if (j.contains("branching_min")) {
    p.branching_min = j.at("branching_min").get<int>();
  }
  if (j.contains("branching_max")) {
    p.branching_max = j.at("branching_max").get<int>();
  }
  if (j.contains("depth_weights")) {
    p.depth_weights.clear();
    for (const auto& [key, value] : j.at("depth_weights").items()) {
      p.depth_weights[std::stoi(key)] = value.get<double>();
    }
  }
  if (j.contains("info_share")) p.info_share = j.at("info_share").get<double>();
  if (j.contains("n_tasks")) p.n_tasks = j.at("n_tasks").get<int>();
  if (j.contains("search_hop_prob")) {
    p.search_hop_prob = j.at("search_hop_prob").get<double>();
  }
  if (j.contains("button_edge_prob")) {
    p.button_edge_prob = j.at("button_edge_prob").get<double>();
  }
  if (j.contains("alias_link_prob")) {
    p.alias_link_prob = j.at("alias_link_prob").get<double>();
  }
  if (j.contains("id_permute_on_revisit")) {
    p.id_permute_on_revisit = j.at("id_permute_on_revisit").get<bool>();
  }
  return p;
}

GeneratedSuite generate_world(std::uint64_t seed, const WorldProfile& profile) {
  if (profile.n_tasks < 0) {
    throw std::invalid_argument("world profile: n_tasks must be >= 0");
  }
  if (profile.branching_min < 1 ||
      profile.branching_max < profile.branching_min) {
    throw std::invalid_argument(
        "world profile: need 1 <= branching_min <= branching_max");
  }
  if (profile.min_pages < 1 || profile.max_pages < profile.min_pages) {
    throw std::invalid_argument(
        "world profile: need 1 <= min_pages <= max_pages");
  }
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(profile.info_share) || !unit(profile.search_hop_prob) ||
      !unit(profile.button_edge_prob) || !unit(profile.alias_link_prob)) {
    throw std::invalid_argument(
        "world profile: probabilities must lie in [0, 1]");
  }
  if (profile.depth_weights.empty()) {
    throw std::invalid_argument("world profile: depth_weights is empty");
  }
  for (const auto& [depth, weight] : profile.depth_weights) {
    if (depth < 1 || weight < 0.0) {
      throw std::invalid_argument(
          "world profile: depth_weights needs depth >= 1 and weight >= 0");
    }
  }
  std::string last_error = "unknown";
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      GeneratedSuite suite = generate_once(seed, profile, attempt);
      if (audit_suite(suite)) return suite;
      last_error = "ground-truth audit failed";
    } catch (const std::exception& e) {
      last_error = e.what();
    }
  }
  throw std::runtime_error("world generation failed after 8 attempts: " +
                           last_error);
}

std::map<int, int> depth_histogram(const std::vector<TaskSpec>& tasks) {
  std::map<int, int> hist;
  for (const TaskSpec& task : tasks) hist[task.depth]++;
  return hist;
}

ordered_json tasks_to_json(const std::vector<TaskSpec>& tasks) {
  ordered_json arr = ordered_json::array();
  for (const TaskSpec& task : tasks) {
    ordered_json steps = ordered_json::array();
    for (const SolutionStep& step : task.solution) {
      steps.push_back(ordered_json{{"from_url", step.from_url},
                                   {"to_url", step.to_url},
                                   {"verb", std::string(verb_name(step.verb))},
                                   {"label", step.label},
                                   {"text", step.text}});
    }
    arr.push_back(ordered_json{
        {"task_id", task.task_id},
        {"goal", task.goal},
        {"site", task.site},
        {"kind", task_kind_name(task.kind)},
        {"answer_key",
         task.answer_key ? ordered_json(*task.answer_key) : ordered_json()},
        {"max_actions_per_trial", task.budget.max_actions_per_trial},
        {"max_trials", task.budget.max_trials},
        {"start_url", task.start_url},
        {"goal_url", task.goal_url},
        {"goal_url_aliases", task.goal_url_aliases},
        {"solution", steps}});
  }
  return arr;
}

std::vector<TaskSpec> tasks_from_json(const ordered_json& j) {
  std::vector<TaskSpec> tasks;
  for (const auto& t : j) {
    TaskSpec task;
    task.task_id = t.at("task_id").get<std::string>();
    task.goal = t.at("goal").get<std::string>();
    task.site = t.at("site").get<std::string>();
    task.kind = t.at("kind").get<std::string>() == "info_seeking"
                    ? TaskKind::kInfoSeeking
                    : TaskKind::kNavigation;
    if (!t.at("answer_key").is_null()) {
      task.answer_key = t.at("answer_key").get<std::string>();
    }
    task.budget.max_actions_per_trial =
        t.at("max_actions_per_trial").get<int>();
    task.budget.max_trials = t.at("max_trials").get<int>();
    task.start_url = t.at("start_url").get<std::string>();
    task.goal_url = t.at("goal_url").get<std::string>();
    task.goal_url_aliases =
        t.at("goal_url_aliases").get<std::vector<std::string>>();
    for (const auto& s : t.at("solution")) {
      SolutionStep step;
      step.from_url = s.at("from_url").get<std::string>();
      step.to_url = s.at("to_url").get<std::string>();
      step.verb = verb_from_name(s.at("verb").get<std::string>());
      step.label = s.at("label").get<std::string>();
      step.text = s.at("text").get<std::string>();
      task.solution.push_back(std::move(step));
    }
    task.depth = static_cast<int>(task.solution.size());
    tasks.push_back(std::move(task));
  }
  return tasks;
}

}  // namespace introspect
