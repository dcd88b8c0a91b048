// introspect — command-line front end for the agent-loop simulation library.
//
// Subcommands: generate (world + tasks), run (one task), suite (every task
// under every strategy), inspect (summarize a trace file), validate-prompts.
// Exit codes: 0 success, 1 task/suite ran but the task failed, 2 usage or
// configuration problems. Everything is deterministic for fixed seeds.
//
// Talks to the library exclusively through the C interface in introspect.h.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI/CLI.hpp>
#include <nlohmann/json.hpp>

#include "introspect.h"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr int kExitSuccess = 0;
constexpr int kExitTaskFailed = 1;
constexpr int kExitError = 2;

// Wraps library strings so every exit path frees them.
struct CStr {
  char* ptr = nullptr;
  ~CStr() { ia_string_free(ptr); }
  char** out() { return &ptr; }
  std::string str() const { return ptr == nullptr ? std::string() : ptr; }
};

struct WorldHandle {
  ia_world* ptr = nullptr;
  ~WorldHandle() { ia_world_free(ptr); }
};

struct ReportHandle {
  ia_suite_report* ptr = nullptr;
  ~ReportHandle() { ia_suite_report_free(ptr); }
};

int complain(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitError;
}

int complain_last(const std::string& context) {
  return complain(context + ": " + ia_last_error());
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

// Loads world.json + tasks.json from a directory produced by `generate`.
int load_world(const fs::path& dir, WorldHandle& world) {
  std::optional<std::string> world_json = read_file(dir / "world.json");
  std::optional<std::string> tasks_json = read_file(dir / "tasks.json");
  if (!world_json || !tasks_json) {
    return complain("cannot read " + (dir / "world.json").string() + " / " +
                    (dir / "tasks.json").string() +
                    " (run `introspect generate` first?)");
  }
  if (ia_world_from_json(world_json->c_str(), tasks_json->c_str(),
                         &world.ptr) != IA_OK) {
    return complain_last("loading world");
  }
  return kExitSuccess;
}

// Options shared by `run` and `suite`, mirrored 1:1 into config JSON keys.
struct CommonRunFlags {
  std::uint64_t seed = 1;
  int remedy_budget = -1;       // -1 = library default
  int max_actions = -1;
  int max_trials = -1;
  double inject_p = -1.0;
  double nonessential_p = -1.0;
  double homogeneity = -1.0;
};

void add_common_flags(CLI::App* cmd, CommonRunFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Decision seed")->capture_default_str();
  cmd->add_option("--R,--remedies", flags.remedy_budget,
                  "Anticipated remedies pushed per action");
  cmd->add_option("--max-actions", flags.max_actions,
                  "Per-trial action budget override");
  cmd->add_option("--max-trials", flags.max_trials,
                  "Episode (plan revision) cap override");
  cmd->add_option("--inject-p", flags.inject_p,
                  "Probability a first attempt picks a wrong action");
  cmd->add_option("--nonessential-p", flags.nonessential_p,
                  "Probability of filler subtasks in generated plans");
  cmd->add_option("--homogeneity", flags.homogeneity,
                  "Chance extra tree-search samples repeat the base pick");
}

Json config_from_flags(const CommonRunFlags& flags) {
  Json config = Json::object();
  config["seed"] = flags.seed;
  if (flags.remedy_budget >= 0) config["remedy_budget"] = flags.remedy_budget;
  if (flags.max_actions >= 0) config["max_actions"] = flags.max_actions;
  if (flags.max_trials >= 0) config["max_trials"] = flags.max_trials;
  Json injection = Json::object();
  if (flags.inject_p >= 0.0) injection["wrong_action_prob"] = flags.inject_p;
  if (flags.remedy_budget >= 0) injection["remedy_budget"] = flags.remedy_budget;
  if (flags.nonessential_p >= 0.0) {
    injection["nonessential_prob"] = flags.nonessential_p;
  }
  if (flags.homogeneity >= 0.0) {
    injection["sample_homogeneity"] = flags.homogeneity;
  }
  if (!injection.empty()) config["injection"] = std::move(injection);
  return config;
}

int cmd_generate(std::uint64_t seed, const std::string& profile_path,
                 const std::string& out_dir) {
  std::string profile_json;
  if (!profile_path.empty()) {
    std::optional<std::string> content = read_file(profile_path);
    if (!content) return complain("cannot read profile " + profile_path);
    profile_json = *content;
  }

  WorldHandle world;
  if (ia_world_generate(seed, profile_json.c_str(), &world.ptr) != IA_OK) {
    return complain_last("generating world");
  }

  CStr world_json, tasks_json, summary;
  if (ia_world_to_json(world.ptr, world_json.out(), tasks_json.out()) !=
          IA_OK ||
      ia_world_summary(world.ptr, summary.out()) != IA_OK) {
    return complain_last("serializing world");
  }

  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!write_file(dir / "world.json", world_json.str()) ||
      !write_file(dir / "tasks.json", tasks_json.str())) {
    return complain("cannot write world files under " + out_dir);
  }

  Json s = Json::parse(summary.str());
  std::cout << "site '" << s.at("site").get<std::string>() << "', seed "
            << seed << ": " << s.at("pages").get<int>() << " pages, "
            << s.at("tasks").get<int>() << " tasks -> " << out_dir << "\n";
  std::cout << "task depth histogram:\n";
  for (const auto& [depth, count] : s.at("depth_histogram").items()) {
    std::cout << "  depth " << std::setw(2) << depth << ": " << std::setw(4)
              << count.get<int>() << " "
              << std::string(static_cast<std::size_t>(count.get<int>()) / 2,
                             '#')
              << "\n";
  }
  return kExitSuccess;
}

int cmd_run(const std::string& world_dir, const std::string& task_id,
            const std::string& strategy, const std::string& oracle,
            const CommonRunFlags& flags, const std::string& trace_out) {
  if (oracle != "scripted" && oracle != "live") {
    return complain("--oracle must be 'scripted' or 'live'");
  }

  WorldHandle world;
  int rc = load_world(world_dir, world);
  if (rc != kExitSuccess) return rc;

  std::string config = config_from_flags(flags).dump();
  CStr result_json, trace;
  ia_status st;
  if (oracle == "live") {
    st = ia_run_task_live(world.ptr, task_id.c_str(), strategy.c_str(),
                          config.c_str(), result_json.out(), trace.out());
  } else {
    st = ia_run_task(world.ptr, task_id.c_str(), strategy.c_str(),
                     config.c_str(), result_json.out(), trace.out());
  }
  if (st != IA_OK) return complain_last("running task " + task_id);

  if (!trace_out.empty()) {
    fs::path path(trace_out);
    if (path.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(path.parent_path(), ec);
    }
    if (!write_file(path, trace.str())) {
      return complain("cannot write trace to " + trace_out);
    }
  }

  Json r = Json::parse(result_json.str());
  bool success = r.at("success").get<bool>();
  std::cout << "task " << r.at("task_id").get<std::string>() << " ("
            << strategy << "): " << (success ? "SUCCESS" : "FAILURE")
            << "\n  trials " << r.at("trials").get<int>()
            << ", plan revisions " << r.at("plan_revisions").get<int>()
            << ", actions " << r.at("actions").get<int>() << ", backtracks "
            << r.at("backtracks").get<int>() << "\n  final url "
            << r.at("final_url").get<std::string>() << "\n";
  if (!r.at("answer").is_null()) {
    std::cout << "  answer: " << r.at("answer").get<std::string>() << "\n";
  }
  return success ? kExitSuccess : kExitTaskFailed;
}

int cmd_suite(const std::string& world_dir,
              const std::vector<std::string>& strategies, int parallelism,
              const std::string& out_dir, const CommonRunFlags& flags) {
  if (strategies.empty()) return complain("no strategies requested");

  WorldHandle world;
  int rc = load_world(world_dir, world);
  if (rc != kExitSuccess) return rc;

  Json config = config_from_flags(flags);
  config["strategies"] = strategies;
  config["threads"] = parallelism;

  ReportHandle report;
  std::string config_str = config.dump();
  if (ia_run_suite(world.ptr, config_str.c_str(), &report.ptr) != IA_OK) {
    return complain_last("running suite");
  }

  CStr report_json, report_text;
  if (ia_suite_report_json(report.ptr, report_json.out()) != IA_OK ||
      ia_suite_report_text(report.ptr, report_text.out()) != IA_OK) {
    return complain_last("rendering report");
  }

  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!write_file(dir / "report.json", report_json.str()) ||
      !write_file(dir / "report.txt", report_text.str())) {
    return complain("cannot write report files under " + out_dir);
  }

  int n_strategies = ia_suite_strategy_count(report.ptr);
  int n_tasks = ia_world_task_count(world.ptr);
  for (int s = 0; s < n_strategies; ++s) {
    CStr name;
    if (ia_suite_strategy_name(report.ptr, s, name.out()) != IA_OK) {
      return complain_last("reading report");
    }
    fs::path trace_dir = dir / "traces" / name.str();
    fs::create_directories(trace_dir, ec);
    for (int t = 0; t < n_tasks; ++t) {
      CStr task_id, trace;
      if (ia_suite_trace(report.ptr, s, t, task_id.out(), trace.out()) !=
          IA_OK) {
        return complain_last("reading trace");
      }
      fs::path path = trace_dir / ("trace-" + task_id.str() + ".jsonl");
      if (!write_file(path, trace.str())) {
        return complain("cannot write " + path.string());
      }
    }
  }

  std::cout << report_text.str();
  std::cout << "\nwrote " << (dir / "report.json").string() << ", "
            << (dir / "report.txt").string() << ", and "
            << n_strategies * n_tasks << " trace files under "
            << (dir / "traces").string() << "\n";
  return kExitSuccess;
}

int cmd_inspect(const std::string& trace_path) {
  std::optional<std::string> content = read_file(trace_path);
  if (!content) return complain("cannot read " + trace_path);

  std::map<std::string, int> kind_counts;
  int events = 0;
  std::string final_event;
  std::istringstream lines(*content);
  std::string line;
  std::vector<std::string> timeline;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    Json event;
    try {
      event = Json::parse(line);
    } catch (const Json::exception& e) {
      return complain("bad trace line " + std::to_string(events + 1) + ": " +
                      e.what());
    }
    std::string kind = event.at("kind").get<std::string>();
    kind_counts[kind]++;
    events++;
    final_event = kind;
    const Json& p = event.at("payload");
    std::ostringstream row;
    row << "  #" << std::setw(3) << event.at("seq").get<int>() << " " << kind;
    if (kind == "action_executed") {
      CStr text;
      std::string action = p.at("action").dump();
      if (ia_action_format(action.c_str(), text.out()) == IA_OK) {
        row << "  " << text.str();
      } else {
        row << "  " << action;
      }
      row << "  (" << p.at("origin").get<std::string>() << ", step "
          << p.at("step").get<int>() << ")";
    } else if (kind == "alignment_checked") {
      row << "  aligned=" << (p.at("aligned").get<bool>() ? "yes" : "no");
    } else if (kind == "backtracked") {
      row << "  to " << p.at("to_url").get<std::string>();
    } else if (kind == "plan_created" || kind == "plan_revised") {
      row << "  " << p.at("subtasks").size() << " subtasks (trial "
          << p.at("trial").get<int>() << ")";
    } else if (kind == "subtask_completed") {
      row << "  index " << p.at("index").get<int>();
    } else if (kind == "answer_delivered") {
      row << "  \"" << p.at("answer").get<std::string>() << "\"";
    }
    timeline.push_back(row.str());
  }
  if (events == 0) return complain("trace is empty: " + trace_path);

  std::cout << trace_path << ": " << events << " events\n";
  for (const auto& [kind, count] : kind_counts) {
    std::cout << "  " << std::setw(4) << count << "  " << kind << "\n";
  }
  std::cout << "timeline:\n";
  for (const std::string& row : timeline) std::cout << row << "\n";
  std::cout << "final event: " << final_event << "\n";
  return kExitSuccess;
}

int cmd_validate_prompts(const std::string& dir) {
  CStr report;
  ia_status st = ia_prompts_validate(dir.empty() ? nullptr : dir.c_str(),
                                     report.out());
  std::cout << report.str();
  if (st == IA_OK) return kExitSuccess;
  std::cerr << "error: " << ia_last_error() << "\n";
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic web-agent loop: world generation, task runs, "
               "strategy suites, trace inspection"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  // generate
  std::uint64_t gen_seed = 1;
  std::string profile_path, gen_out = ".";
  CLI::App* generate =
      app.add_subcommand("generate", "Generate a world and task suite");
  generate->add_option("--seed", gen_seed, "World seed")
      ->capture_default_str();
  generate->add_option("--profile", profile_path,
                       "World profile JSON file (defaults built in)");
  generate->add_option("--out", gen_out, "Output directory")
      ->capture_default_str();

  // run
  std::string run_world = ".", run_task_id, run_strategy = "introspective";
  std::string run_oracle = "scripted", trace_out;
  CommonRunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Run a single task");
  run->add_option("--world", run_world, "Directory with world.json/tasks.json")
      ->capture_default_str();
  run->add_option("--task", run_task_id, "Task id (e.g. t017)")->required();
  run->add_option("--strategy", run_strategy,
                  "introspective|plan_act|plan_act_reflexion|tree_search")
      ->capture_default_str();
  run->add_option("--oracle", run_oracle, "scripted|live")
      ->capture_default_str();
  add_common_flags(run, run_flags);
  run->add_option("--trace-out", trace_out, "Write the run trace here");

  // suite
  std::string suite_world = ".", suite_out = "suite-out";
  std::vector<std::string> suite_strategies = {
      "introspective", "plan_act", "plan_act_reflexion", "tree_search"};
  int parallelism = 1;
  CommonRunFlags suite_flags;
  CLI::App* suite =
      app.add_subcommand("suite", "Run every task under several strategies");
  suite->add_option("--world", suite_world,
                    "Directory with world.json/tasks.json")
      ->capture_default_str();
  suite
      ->add_option("--strategies", suite_strategies,
                   "Strategies to compare (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  suite->add_option("--parallelism,--threads", parallelism,
                    "Worker threads (0 = hardware)")
      ->capture_default_str();
  suite->add_option("--out", suite_out, "Report directory")
      ->capture_default_str();
  add_common_flags(suite, suite_flags);

  // inspect
  std::string trace_path;
  CLI::App* inspect =
      app.add_subcommand("inspect", "Summarize a trace (.jsonl) file");
  inspect->add_option("trace", trace_path, "Trace file")->required();

  // validate-prompts
  std::string prompts_dir;
  CLI::App* validate = app.add_subcommand(
      "validate-prompts", "Check prompt templates and their placeholders");
  validate->add_option("--dir", prompts_dir,
                       "Template directory (default: embedded copies)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    // CLI11 returns 0 for --help; anything else is a usage error.
    return rc == 0 ? kExitSuccess : kExitError;
  }

  try {
    if (generate->parsed()) {
      return cmd_generate(gen_seed, profile_path, gen_out);
    }
    if (run->parsed()) {
      return cmd_run(run_world, run_task_id, run_strategy, run_oracle,
                     run_flags, trace_out);
    }
    if (suite->parsed()) {
      return cmd_suite(suite_world, suite_strategies, parallelism, suite_out,
                       suite_flags);
    }
    if (inspect->parsed()) return cmd_inspect(trace_path);
    if (validate->parsed()) return cmd_validate_prompts(prompts_dir);
  } catch (const std::exception& e) {
    return complain(e.what());
  }
  return kExitError;
}
