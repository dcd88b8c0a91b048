#include "introspect.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "introspect/actions.hpp"
#include "introspect/baselines.hpp"
#include "introspect/engine.hpp"
#include "introspect/harness.hpp"
#include "introspect/live_oracle.hpp"
#include "introspect/prompts.hpp"
#include "introspect/simweb.hpp"
#include "introspect/trace.hpp"
#include "introspect/worldgen.hpp"

struct ia_world {
  introspect::GeneratedSuite suite;
};

struct ia_suite_report {
  introspect::SuiteReport report;
};

namespace {

using introspect::Json;

thread_local std::string g_last_error;

ia_status fail(ia_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Out-parameter strings are malloc'd so the C side can free them with a
// plain allocator via ia_string_free.
char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ia_status give_string(const std::string& s, char** out) {
  if (out == nullptr) return IA_OK;
  *out = dup_string(s);
  if (*out == nullptr) return fail(IA_ERR_RUNTIME, "out of memory");
  return IA_OK;
}

template <typename Fn>
ia_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    return fail(IA_ERR_PARSE, e.what());
  } catch (const introspect::ParseError& e) {
    return fail(IA_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(IA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(IA_ERR_RUNTIME, e.what());
  }
}

bool is_blank(const char* s) { return s == nullptr || *s == '\0'; }

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

// Options shared by single runs and suites; flat keys mirror CLI flags.
struct RunOptions {
  std::uint64_t seed = 0;
  introspect::ErrorInjection injection;
  introspect::EngineConfig engine;
  std::optional<int> max_actions;
  std::optional<int> max_trials;
  std::vector<introspect::StrategyKind> strategies{
      std::begin(introspect::kAllStrategies),
      std::end(introspect::kAllStrategies)};
  int threads = 1;
};

RunOptions parse_options(const char* config_json, bool suite_keys) {
  RunOptions opt;
  if (is_blank(config_json)) return opt;
  Json j = Json::parse(config_json);
  if (!j.is_object()) {
    throw std::invalid_argument("run config must be a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") {
      opt.seed = value.get<std::uint64_t>();
    } else if (key == "remedy_budget") {
      opt.engine.remedy_budget = value.get<int>();
      if (opt.engine.remedy_budget < 0) {
        throw std::invalid_argument("remedy_budget must be >= 0");
      }
    } else if (key == "count_backtrack_actions") {
      opt.engine.count_backtrack_actions = value.get<bool>();
    } else if (key == "max_actions") {
      if (!value.is_null()) {
        opt.max_actions = value.get<int>();
        if (*opt.max_actions < 1) {
          throw std::invalid_argument("max_actions must be >= 1");
        }
      }
    } else if (key == "max_trials") {
      if (!value.is_null()) {
        opt.max_trials = value.get<int>();
        if (*opt.max_trials < 1) {
          throw std::invalid_argument("max_trials must be >= 1");
        }
      }
    } else if (key == "injection") {
      opt.injection = introspect::ErrorInjection::from_json(value);
    } else if (suite_keys && key == "strategies") {
      opt.strategies.clear();
      for (const auto& name : value) {
        opt.strategies.push_back(
            introspect::strategy_from_name(name.get<std::string>()));
      }
      if (opt.strategies.empty()) {
        throw std::invalid_argument("strategy list is empty");
      }
    } else if (suite_keys && key == "threads") {
      opt.threads = value.get<int>();
      if (opt.threads < 0) {
        throw std::invalid_argument("threads must be >= 0");
      }
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  return opt;
}

introspect::TaskSpec task_with_overrides(const introspect::TaskSpec& task,
                                         const RunOptions& opt) {
  introspect::TaskSpec adjusted = task;
  if (opt.max_actions) adjusted.budget.max_actions_per_trial = *opt.max_actions;
  if (opt.max_trials) adjusted.budget.max_trials = *opt.max_trials;
  return adjusted;
}

const introspect::TaskSpec* find_task(const ia_world* world,
                                      const char* task_id) {
  for (const introspect::TaskSpec& task : world->suite.tasks) {
    if (task.task_id == task_id) return &task;
  }
  return nullptr;
}

Json result_to_json(const introspect::TaskRunResult& r, bool true_success) {
  Json j = Json::object();
  j["task_id"] = r.task_id;
  j["success"] = true_success;
  j["agent_claimed_success"] = r.success;
  j["trials"] = r.trials_used;
  j["plan_revisions"] = r.plan_revisions;
  j["actions"] = r.actions_total;
  j["actions_by_trial"] = r.actions_by_trial;
  j["backtracks"] = r.backtracks;
  j["answer"] = r.answer.has_value() ? Json(*r.answer) : Json(nullptr);
  j["final_url"] = r.final_url;
  return j;
}

// Shared tail of the scripted and live single-task entry points.
ia_status finish_run(const ia_world* world, const introspect::TaskSpec& task,
                     introspect::TaskRunResult result, char** out_result_json,
                     char** out_trace_jsonl) {
  bool true_success =
      introspect::check_success(world->suite.world, task, result);
  ia_status st =
      give_string(pretty(result_to_json(result, true_success)),
                  out_result_json);
  if (st != IA_OK) return st;
  return give_string(result.trace.to_jsonl(), out_trace_jsonl);
}

ia_status run_one(const ia_world* world, const char* task_id,
                  const char* strategy, const char* config_json, bool live,
                  char** out_result_json, char** out_trace_jsonl) {
  if (world == nullptr || is_blank(task_id) || is_blank(strategy)) {
    return fail(IA_ERR_INVALID_ARGUMENT,
                "world, task_id and strategy are required");
  }
  const introspect::TaskSpec* task = find_task(world, task_id);
  if (task == nullptr) {
    return fail(IA_ERR_NOT_FOUND, std::string("unknown task id: ") + task_id);
  }
  introspect::StrategyKind kind;
  try {
    kind = introspect::strategy_from_name(strategy);
  } catch (const std::invalid_argument& e) {
    return fail(IA_ERR_NOT_FOUND, e.what());
  }
  if (live && is_blank(std::getenv("INTROSPECT_API_KEY"))) {
    return fail(IA_ERR_CONFIG,
                "live oracle needs INTROSPECT_API_KEY in the environment");
  }
  return guarded([&]() -> ia_status {
    RunOptions opt = parse_options(config_json, /*suite_keys=*/false);
    introspect::TaskSpec adjusted = task_with_overrides(*task, opt);
    introspect::EngineConfig engine = opt.engine;
    engine.rng_seed = introspect::task_seed(opt.seed, adjusted.task_id);
    std::unique_ptr<introspect::Oracle> oracle;
    if (live) {
      oracle = introspect::make_live_oracle(introspect::LiveConfig::from_env(),
                                            introspect::PromptSet::embedded());
    } else {
      oracle =
          introspect::make_scripted_oracle(world->suite.world, opt.injection);
    }
    introspect::TaskRunResult result = introspect::run_strategy(
        world->suite.world, adjusted, *oracle, kind, engine);
    return finish_run(world, adjusted, std::move(result), out_result_json,
                      out_trace_jsonl);
  });
}

}  // namespace

extern "C" {

const char* ia_version(void) { return "0.1.0"; }

const char* ia_last_error(void) { return g_last_error.c_str(); }

void ia_string_free(char* s) { std::free(s); }

ia_status ia_world_generate(uint64_t seed, const char* profile_json,
                            ia_world** out_world) {
  if (out_world == nullptr) {
    return fail(IA_ERR_INVALID_ARGUMENT, "out_world is required");
  }
  return guarded([&]() -> ia_status {
    introspect::WorldProfile profile = introspect::WorldProfile::defaults();
    if (!is_blank(profile_json)) {
      profile = introspect::WorldProfile::from_json(Json::parse(profile_json));
    }
    auto world = std::make_unique<ia_world>();
    world->suite = introspect::generate_world(seed, profile);
    *out_world = world.release();
    return IA_OK;
  });
}

ia_status ia_world_from_json(const char* world_json, const char* tasks_json,
                             ia_world** out_world) {
  if (out_world == nullptr || is_blank(world_json) || is_blank(tasks_json)) {
    return fail(IA_ERR_INVALID_ARGUMENT,
                "world_json, tasks_json and out_world are required");
  }
  return guarded([&]() -> ia_status {
    auto world = std::make_unique<ia_world>();
    world->suite.world = introspect::SimWorld::from_json(
        Json::parse(world_json));
    world->suite.tasks =
        introspect::tasks_from_json(Json::parse(tasks_json));
    *out_world = world.release();
    return IA_OK;
  });
}

ia_status ia_world_to_json(const ia_world* world, char** out_world_json,
                           char** out_tasks_json) {
  if (world == nullptr) {
    return fail(IA_ERR_INVALID_ARGUMENT, "world is required");
  }
  return guarded([&]() -> ia_status {
    ia_status st =
        give_string(pretty(world->suite.world.to_json()), out_world_json);
    if (st != IA_OK) return st;
    return give_string(pretty(introspect::tasks_to_json(world->suite.tasks)),
                       out_tasks_json);
  });
}

ia_status ia_world_summary(const ia_world* world, char** out_json) {
  if (world == nullptr || out_json == nullptr) {
    return fail(IA_ERR_INVALID_ARGUMENT, "world and out_json are required");
  }
  return guarded([&]() -> ia_status {
    Json j = Json::object();
    j["site"] = world->suite.world.site;
    j["seed"] = world->suite.world.seed;
    j["pages"] = world->suite.world.pages.size();
    j["tasks"] = world->suite.tasks.size();
    Json hist = Json::object();
    for (const auto& [depth, count] :
         introspect::depth_histogram(world->suite.tasks)) {
      hist[std::to_string(depth)] = count;
    }
    j["depth_histogram"] = std::move(hist);
    return give_string(pretty(j), out_json);
  });
}

int ia_world_task_count(const ia_world* world) {
  if (world == nullptr) return -1;
  return static_cast<int>(world->suite.tasks.size());
}

ia_status ia_world_task_id(const ia_world* world, int index,
                           char** out_task_id) {
  if (world == nullptr || out_task_id == nullptr) {
    return fail(IA_ERR_INVALID_ARGUMENT, "world and out_task_id are required");
  }
  if (index < 0 || index >= static_cast<int>(world->suite.tasks.size())) {
    return fail(IA_ERR_NOT_FOUND, "task index out of range");
  }
  return give_string(world->suite.tasks[static_cast<std::size_t>(index)].task_id,
                     out_task_id);
}

void ia_world_free(ia_world* world) { delete world; }

ia_status ia_run_task(const ia_world* world, const char* task_id,
                      const char* strategy, const char* config_json,
                      char** out_result_json, char** out_trace_jsonl) {
  return run_one(world, task_id, strategy, config_json, /*live=*/false,
                 out_result_json, out_trace_jsonl);
}

ia_status ia_run_task_live(const ia_world* world, const char* task_id,
                           const char* strategy, const char* config_json,
                           char** out_result_json, char** out_trace_jsonl) {
  return run_one(world, task_id, strategy, config_json, /*live=*/true,
                 out_result_json, out_trace_jsonl);
}

ia_status ia_run_suite(const ia_world* world, const char* config_json,
                       ia_suite_report** out_report) {
  if (world == nullptr || out_report == nullptr) {
    return fail(IA_ERR_INVALID_ARGUMENT, "world and out_report are required");
  }
  return guarded([&]() -> ia_status {
    RunOptions opt = parse_options(config_json, /*suite_keys=*/true);
    introspect::SuiteConfig config;
    config.seed = opt.seed;
    config.injection = opt.injection;
    config.engine = opt.engine;
    config.strategies = opt.strategies;
    config.threads = opt.threads;
    std::vector<introspect::TaskSpec> tasks;
    tasks.reserve(world->suite.tasks.size());
    for (const introspect::TaskSpec& task : world->suite.tasks) {
      tasks.push_back(task_with_overrides(task, opt));
    }
    auto report = std::make_unique<ia_suite_report>();
    report->report =
        introspect::run_suite(world->suite.world, tasks, config);
    *out_report = report.release();
    return IA_OK;
  });
}

ia_status ia_suite_report_json(const ia_suite_report* report,
                               char** out_json) {
  if (report == nullptr || out_json == nullptr) {
    return fail(IA_ERR_INVALID_ARGUMENT, "report and out_json are required");
  }
  return guarded([&]() -> ia_status {
    return give_string(pretty(introspect::report_to_json(report->report)),
                       out_json);
  });
}

ia_status ia_suite_report_text(const ia_suite_report* report,
                               char** out_text) {
  if (report == nullptr || out_text == nullptr) {
    return fail(IA_ERR_INVALID_ARGUMENT, "report and out_text are required");
  }
  return guarded([&]() -> ia_status {
    return give_string(introspect::report_to_text(report->report), out_text);
  });
}

int ia_suite_strategy_count(const ia_suite_report* report) {
  if (report == nullptr) return -1;
  return static_cast<int>(report->report.strategies.size());
}

ia_status ia_suite_strategy_name(const ia_suite_report* report,
                                 int strategy_index, char** out_name) {
  if (report == nullptr || out_name == nullptr) {
    return fail(IA_ERR_INVALID_ARGUMENT, "report and out_name are required");
  }
  if (strategy_index < 0 ||
      strategy_index >= static_cast<int>(report->report.strategies.size())) {
    return fail(IA_ERR_NOT_FOUND, "strategy index out of range");
  }
  const introspect::StrategyOutcomes& bucket =
      report->report.strategies[static_cast<std::size_t>(strategy_index)];
  return give_string(std::string(introspect::strategy_name(bucket.strategy)),
                     out_name);
}

ia_status ia_suite_trace(const ia_suite_report* report, int strategy_index,
                         int task_index, char** out_task_id,
                         char** out_trace_jsonl) {
  if (report == nullptr) {
    return fail(IA_ERR_INVALID_ARGUMENT, "report is required");
  }
  if (strategy_index < 0 ||
      strategy_index >= static_cast<int>(report->report.strategies.size())) {
    return fail(IA_ERR_NOT_FOUND, "strategy index out of range");
  }
  const introspect::StrategyOutcomes& bucket =
      report->report.strategies[static_cast<std::size_t>(strategy_index)];
  if (task_index < 0 ||
      task_index >= static_cast<int>(bucket.outcomes.size())) {
    return fail(IA_ERR_NOT_FOUND, "task index out of range");
  }
  const introspect::TaskOutcome& out =
      bucket.outcomes[static_cast<std::size_t>(task_index)];
  ia_status st = give_string(out.result.task_id, out_task_id);
  if (st != IA_OK) return st;
  return give_string(out.result.trace.to_jsonl(), out_trace_jsonl);
}

void ia_suite_report_free(ia_suite_report* report) { delete report; }

ia_status ia_prompt_template(const char* kind, char** out_text) {
  if (is_blank(kind) || out_text == nullptr) {
    return fail(IA_ERR_INVALID_ARGUMENT, "kind and out_text are required");
  }
  return guarded([&]() -> ia_status {
    introspect::PromptKind k;
    try {
      k = introspect::prompt_kind_from_name(kind);
    } catch (const std::invalid_argument& e) {
      return fail(IA_ERR_NOT_FOUND, e.what());
    }
    return give_string(introspect::PromptSet::embedded().text(k), out_text);
  });
}

ia_status ia_prompt_render(const char* dir, const char* kind,
                           const char* values_json, char** out_text) {
  if (is_blank(kind) || out_text == nullptr) {
    return fail(IA_ERR_INVALID_ARGUMENT, "kind and out_text are required");
  }
  return guarded([&]() -> ia_status {
    introspect::PromptKind k;
    try {
      k = introspect::prompt_kind_from_name(kind);
    } catch (const std::invalid_argument& e) {
      return fail(IA_ERR_NOT_FOUND, e.what());
    }
    const introspect::PromptSet set =
        is_blank(dir) ? introspect::PromptSet::embedded()
                      : introspect::PromptSet::load_dir(dir);
    std::map<std::string, std::string> values;
    if (!is_blank(values_json)) {
      Json j = Json::parse(values_json);
      if (!j.is_object()) {
        throw std::invalid_argument("values must be a JSON object");
      }
      for (const auto& [key, value] : j.items()) {
        values[key] = value.get<std::string>();
      }
    }
    std::vector<std::string> wanted =
        introspect::PromptSet::scan_placeholders(set.text(k));
    for (const auto& [key, value] : values) {
      (void)value;
      bool used = false;
      for (const std::string& w : wanted) used = used || w == key;
      if (!used) {
        throw std::invalid_argument("value for unknown placeholder: " + key);
      }
    }
    return give_string(set.render(k, values), out_text);
  });
}

ia_status ia_prompts_validate(const char* dir, char** out_report) {
  if (out_report == nullptr) {
    return fail(IA_ERR_INVALID_ARGUMENT, "out_report is required");
  }
  return guarded([&]() -> ia_status {
    introspect::PromptSet set;
    try {
      set = is_blank(dir) ? introspect::PromptSet::embedded()
                          : introspect::PromptSet::load_dir(dir);
    } catch (const std::exception& e) {
      ia_status st = give_string(std::string(e.what()) + "\n", out_report);
      return st != IA_OK ? st : fail(IA_ERR_CONFIG, e.what());
    }
    std::string text;
    for (introspect::PromptKind k : introspect::kAllPromptKinds) {
      text += std::string(introspect::prompt_kind_name(k)) + ": ";
      std::vector<std::string> names =
          introspect::PromptSet::scan_placeholders(set.text(k));
      if (names.empty()) {
        text += "(no placeholders)";
      } else {
        for (std::size_t i = 0; i < names.size(); ++i) {
          if (i > 0) text += ", ";
          text += "{" + names[i] + "}";
        }
      }
      text += "\n";
    }
    std::vector<std::string> problems = set.validate();
    for (const std::string& p : problems) text += "problem: " + p + "\n";
    text += problems.empty() ? "all templates OK\n"
                             : "validation FAILED\n";
    ia_status st = give_string(text, out_report);
    if (st != IA_OK) return st;
    if (!problems.empty()) {
      return fail(IA_ERR_CONFIG, "prompt template validation failed");
    }
    return IA_OK;
  });
}

ia_status ia_action_parse(const char* text, char** out_json) {
  if (text == nullptr || out_json == nullptr) {
    return fail(IA_ERR_INVALID_ARGUMENT, "text and out_json are required");
  }
  return guarded([&]() -> ia_status {
    introspect::AgentAction a = introspect::parse_action(text);
    Json j = Json::object();
    j["verb"] = std::string(introspect::verb_name(a.verb));
    j["element_id"] = a.element_id ? Json(*a.element_id) : Json(nullptr);
    j["text"] = a.text ? Json(*a.text) : Json(nullptr);
    j["direction"] = a.direction
                         ? Json(std::string(
                               introspect::scroll_dir_name(*a.direction)))
                         : Json(nullptr);
    j["url"] = a.url ? Json(*a.url) : Json(nullptr);
    return give_string(pretty(j), out_json);
  });
}

ia_status ia_action_format(const char* action_json, char** out_text) {
  if (is_blank(action_json) || out_text == nullptr) {
    return fail(IA_ERR_INVALID_ARGUMENT,
                "action_json and out_text are required");
  }
  return guarded([&]() -> ia_status {
    Json j = Json::parse(action_json);
    if (!j.is_object() || !j.contains("verb")) {
      throw std::invalid_argument("action object needs a \"verb\" key");
    }
    introspect::AgentAction a;
    a.verb = introspect::verb_from_name(j.at("verb").get<std::string>());
    if (j.contains("element_id") && !j.at("element_id").is_null()) {
      a.element_id = j.at("element_id").get<int>();
    }
    if (j.contains("text") && !j.at("text").is_null()) {
      a.text = j.at("text").get<std::string>();
    }
    if (j.contains("direction") && !j.at("direction").is_null()) {
      std::string d = j.at("direction").get<std::string>();
      if (d == "up") {
        a.direction = introspect::ScrollDir::kUp;
      } else if (d == "down") {
        a.direction = introspect::ScrollDir::kDown;
      } else {
        throw std::invalid_argument("direction must be \"up\" or \"down\"");
      }
    }
    if (j.contains("url") && !j.at("url").is_null()) {
      a.url = j.at("url").get<std::string>();
    }
    if (!introspect::action_is_valid(a)) {
      throw std::invalid_argument(
          "action fields do not match the verb's requirements");
    }
    return give_string(introspect::format_action(a), out_text);
  });
}

}  // extern "C"
