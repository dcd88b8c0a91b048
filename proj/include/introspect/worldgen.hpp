#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "introspect/simweb.hpp"
#include "introspect/types.hpp"

namespace introspect {

// Knobs for seed-driven world and task-suite generation.
struct WorldProfile {
  std::string site = "onestop";
  int min_pages = 20;
  int max_pages = 5000;
  int branching_min = 2;
  int branching_max = 4;
  // Task depth = number of subtasks = number of solution actions. The default
  // puts the bulk of the mass on 4-9 with a tail out to 20.
  std::map<int, double> depth_weights;
  double info_share = 0.5;
  int n_tasks = 200;
  double search_hop_prob = 0.15;
  double button_edge_prob = 0.2;
  double alias_link_prob = 0.1;
  bool id_permute_on_revisit = true;

  static WorldProfile defaults();

  nlohmann::ordered_json to_json() const;
  static WorldProfile from_json(const nlohmann::ordered_json& j);
};

struct GeneratedSuite {
  SimWorld world;
  std::vector<TaskSpec> tasks;
};

// Builds a deterministic site tree plus tasks whose recorded solution paths
// have exactly the sampled depths. Retries internally until every recorded
// path checks out.
GeneratedSuite generate_world(std::uint64_t seed, const WorldProfile& profile);

// depth -> task count
std::map<int, int> depth_histogram(const std::vector<TaskSpec>& tasks);

// Task suite (de)serialization: tasks.json.
nlohmann::ordered_json tasks_to_json(const std::vector<TaskSpec>& tasks);
std::vector<TaskSpec> tasks_from_json(const nlohmann::ordered_json& j);

}  // namespace introspect
