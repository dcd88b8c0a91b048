#include "introspect/live_oracle.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace introspect {
namespace {

using nlohmann::ordered_json;

std::string trim_copy(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Last standalone YES/NO token decides; absence means NO.
bool parse_yes_no(const std::string& text) {
  std::string last;
  std::string word;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    char c = i < text.size() ? text[i] : ' ';
    if (std::isalpha(static_cast<unsigned char>(c))) {
      word.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!word.empty()) {
      if (word == "yes" || word == "no") last = word;
      word.clear();
    }
  }
  return last == "yes";
}

std::vector<std::string> parse_numbered_list(const std::string& text) {
  std::vector<std::string> items;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string line = text.substr(
        pos, eol == std::string::npos ? std::string::npos : eol - pos);
    std::string t = trim_copy(line);
    std::size_t i = 0;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (i > 0 && i < t.size() && (t[i] == '.' || t[i] == ')')) {
      std::string item = trim_copy(t.substr(i + 1));
      if (!item.empty()) items.push_back(std::move(item));
    }
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  return items;
}

class LiveOracle final : public Oracle {
 public:
  LiveOracle(LiveConfig config, const PromptSet& prompts)
      : config_(std::move(config)), prompts_(prompts) {
    split_base_url();
  }

  std::vector<std::string> gen_plan(
      const OracleContext& ctx,
      const std::vector<std::string>& failed_plan_notes) override {
    std::map<std::string, std::string> values;
    values["webarena_root"] = config_.webarena_root;
    values["WEBSITE INTRO"] = config_.website_intro;
    values["INSTRUCTION"] = config_.instruction;
    values["STARTING SCREEN DESCRIPTION"] = obs_text(*ctx.state);
    values["TASK"] = ctx.task->goal;
    values["FAILED PLAN"] = failed_plan_notes.empty()
                                ? std::string("None.")
                                : join_lines(failed_plan_notes);
    values["HISTORY"] = history_text(ctx);
    std::string reply = chat(prompts_.render(PromptKind::kGenPlan, values));
    std::vector<std::string> items = parse_numbered_list(reply);
    if (items.empty()) {
      throw std::runtime_error("plan generation returned no numbered steps: " +
                               reply.substr(0, 200));
    }
    return items;
  }

  AgentAction gen_action(const OracleContext& ctx) override {
    std::string prompt = action_prompt(ctx);
    std::string reply = chat(prompt);
    try {
      return parse_action(reply);
    } catch (const ParseError&) {
      // One fresh sample; temperature usually unsticks the format.
      return parse_action(chat(prompt));
    }
  }

  std::vector<AgentAction> gen_remedies(const OracleContext& ctx,
                                        const AgentAction& attempt,
                                        int budget) override {
    std::vector<AgentAction> out;
    std::string base = action_prompt(ctx);
    std::vector<AgentAction> prior{attempt};
    for (int r = 0; r < budget; ++r) {
      std::map<std::string, std::string> values;
      values["ACTION_PROMPT"] = base;
      std::string lines;
      for (const AgentAction& a : prior) {
        if (!lines.empty()) lines += "\n";
        lines += format_action(a);
      }
      values["PRIOR_ACTIONS"] = lines;
      std::string reply =
          chat(prompts_.render(PromptKind::kGenRemedy, values));
      AgentAction remedy;
      try {
        remedy = parse_action(reply);
      } catch (const ParseError&) {
        break;  // stop collecting rather than fail the whole expansion
      }
      bool dup = remedy == attempt;
      for (const AgentAction& a : out) dup = dup || a == remedy;
      if (!dup) {
        out.push_back(remedy);
        prior.push_back(remedy);
      }
    }
    return out;
  }

  std::string describe_action(const OracleContext& ctx,
                              const AgentAction& action,
                              const StateSnapshot& before,
                              const StateSnapshot& after) override {
    (void)ctx;
    // Remember the transition so the next alignment check can show both
    // screens; the control loop always describes before judging.
    last_before_obs_ = clip(before.observation);
    last_action_text_ = format_action(action);
    std::map<std::string, std::string> values;
    values["ACTION"] = last_action_text_;
    values["OBS1"] = last_before_obs_;
    values["OBS2"] = clip(after.observation);
    return trim_copy(
        chat(prompts_.render(PromptKind::kDescribeAction, values)));
  }

  bool eval_alignment(const OracleContext& ctx,
                      const std::string& description) override {
    (void)description;
    std::map<std::string, std::string> values;
    values["STEP"] = step_text(ctx);
    values["PLAN"] = plan_text(ctx);
    values["ACTION"] = last_action_text_.empty() ? std::string("(none)")
                                                 : last_action_text_;
    values["OBS1"] = last_before_obs_.empty() ? std::string("(not recorded)")
                                              : last_before_obs_;
    values["OBS2"] = obs_text(*ctx.state);
    std::string reply = chat(prompts_.render(PromptKind::kEvalAlign, values));
    return parse_yes_no(reply);
  }

  SubtaskVerdict eval_subtask(const OracleContext& ctx) override {
    std::string reply = chat(completed_prompt(ctx, step_text(ctx)));
    std::string lowered;
    for (char c : reply) {
      lowered.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (lowered.find("non-essential") != std::string::npos ||
        lowered.find("nonessential") != std::string::npos) {
      return SubtaskVerdict::kNonessential;
    }
    return parse_yes_no(reply) ? SubtaskVerdict::kDone
                               : SubtaskVerdict::kIncomplete;
  }

  bool eval_task_complete(const OracleContext& ctx) override {
    return parse_yes_no(chat(completed_prompt(ctx, ctx.task->goal)));
  }

  std::string deliver_answer(const OracleContext& ctx) override {
    std::map<std::string, std::string> values;
    values["TASK"] = ctx.task->goal;
    values["HISTORY"] = history_text(ctx);
    values["NOTES"] = notes_text(ctx);
    values["OBS"] = obs_text(*ctx.state);
    std::string reply =
        chat(prompts_.render(PromptKind::kDeliverAnswer, values));
    try {
      AgentAction parsed = parse_action(reply);
      if (parsed.verb == Verb::kAnswer) return *parsed.text;
    } catch (const ParseError&) {
    }
    return trim_copy(reply);
  }

  std::optional<int> map_element(const OracleContext& ctx,
                                 const StateSnapshot& stale,
                                 int stale_element_id,
                                 const StateSnapshot& fresh) override {
    (void)ctx;
    std::map<std::string, std::string> values;
    values["element_id"] = std::to_string(stale_element_id);
    values["OBS1"] = clip(stale.observation);
    values["OBS2"] = clip(fresh.observation);
    std::string reply =
        chat(prompts_.render(PromptKind::kMapElement, values));
    // First integer in the reply wins.
    for (std::size_t i = 0; i < reply.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(reply[i]))) continue;
      std::size_t j = i;
      long value = 0;
      while (j < reply.size() &&
             std::isdigit(static_cast<unsigned char>(reply[j])) &&
             j - i < 9) {
        value = value * 10 + (reply[j] - '0');
        ++j;
      }
      return static_cast<int>(value);
    }
    return std::nullopt;
  }

  std::vector<AgentAction> sample_actions(const OracleContext& ctx,
                                          int k) override {
    std::vector<AgentAction> out;
    for (int i = 0; i < k; ++i) {
      try {
        out.push_back(gen_action(ctx));
      } catch (const ParseError&) {
        // skip unusable samples
      }
    }
    return out;
  }

 private:
  void split_base_url() {
    const std::string& url = config_.base_url;
    std::size_t scheme = url.find("://");
    if (scheme == std::string::npos) {
      throw std::invalid_argument("base_url needs a scheme: " + url);
    }
    std::size_t path = url.find('/', scheme + 3);
    if (path == std::string::npos) {
      host_ = url;
      prefix_.clear();
    } else {
      host_ = url.substr(0, path);
      prefix_ = url.substr(path);
      while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
    }
    if (host_.rfind("https://", 0) == 0) {
      throw std::invalid_argument(
          "https endpoints are not supported in this build; use an http "
          "endpoint or a local proxy");
    }
  }

  std::string chat(const std::string& prompt) {
    std::string last_error;
    for (int attempt = 0; attempt <= config_.retries; ++attempt) {
      try {
        return chat_once(prompt);
      } catch (const std::exception& e) {
        last_error = e.what();
      }
    }
    throw std::runtime_error("chat completion failed: " + last_error);
  }

  std::string chat_once(const std::string& prompt) {
    httplib::Client client(host_);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_read_timeout(config_.timeout_seconds, 0);
    ordered_json body{
        {"model", config_.model},
        {"messages",
         ordered_json::array({ordered_json{{"role", "user"},
                                           {"content", prompt}}})},
        {"temperature", config_.temperature},
        {"max_tokens", config_.max_tokens}};
    httplib::Headers headers;
    if (!config_.api_key.empty()) {
      headers.emplace("Authorization", "Bearer " + config_.api_key);
    }
    auto res = client.Post(prefix_ + "/v1/chat/completions", headers,
                           body.dump(), "application/json");
    if (!res) {
      throw std::runtime_error("transport error: " +
                               httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw std::runtime_error("endpoint returned status " +
                               std::to_string(res->status) + ": " +
                               res->body.substr(0, 200));
    }
    ordered_json reply = ordered_json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content")
        .get<std::string>();
  }

  std::string clip(const std::string& text) const {
    if (static_cast<int>(text.size()) <= config_.max_obs_chars) return text;
    return text.substr(0, static_cast<std::size_t>(config_.max_obs_chars)) +
           "\n... [view truncated]";
  }

  std::string obs_text(const StateSnapshot& state) const {
    return clip("URL: " + state.url + "\n" + state.observation);
  }

  static std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (const std::string& line : lines) {
      if (!out.empty()) out += "\n";
      out += line;
    }
    return out;
  }

  std::string history_text(const OracleContext& ctx) const {
    if (ctx.history == nullptr || ctx.history->empty()) return "None yet.";
    std::string out;
    for (const HistoryEntry& h : *ctx.history) {
      if (!out.empty()) out += "\n";
      out += std::to_string(h.step) + ". " + h.description;
    }
    return clip(out);
  }

  std::string notes_text(const OracleContext& ctx) const {
    if (ctx.notes == nullptr || ctx.notes->empty()) return "None.";
    std::string out;
    for (const std::string& n : *ctx.notes) {
      if (!out.empty()) out += "\n";
      out += "- " + n;
    }
    return out;
  }

  std::string plan_text(const OracleContext& ctx) const {
    if (ctx.plan == nullptr || ctx.plan->subtasks.empty()) return "(no plan)";
    std::string out;
    for (const Subtask& st : ctx.plan->subtasks) {
      if (!out.empty()) out += "\n";
      out += std::to_string(st.index) + ". " + st.description;
    }
    return out;
  }

  std::string step_text(const OracleContext& ctx) const {
    if (ctx.plan != nullptr && ctx.subtask_index >= 1 &&
        ctx.subtask_index <= ctx.plan->size()) {
      return ctx.plan->at(ctx.subtask_index).description;
    }
    return "(no active step)";
  }

  std::string action_prompt(const OracleContext& ctx) const {
    std::map<std::string, std::string> values;
    values["webarena_root"] = config_.webarena_root;
    values["TASK"] = ctx.task->goal;
    values["PLAN"] = plan_text(ctx);
    values["HISTORY"] = history_text(ctx);
    values["STEP"] = step_text(ctx);
    values["OBS"] = obs_text(*ctx.state);
    values["NOTES"] = notes_text(ctx);
    return prompts_.render(PromptKind::kGenAction, values);
  }

  std::string completed_prompt(const OracleContext& ctx,
                               const std::string& objective) const {
    std::map<std::string, std::string> values;
    values["TASK"] = objective;
    values["PLAN"] = plan_text(ctx);
    values["HISTORY"] = history_text(ctx);
    values["NOTES"] = notes_text(ctx);
    values["OBS"] = obs_text(*ctx.state);
    return prompts_.render(PromptKind::kEvalCompleted, values);
  }

  LiveConfig config_;
  const PromptSet& prompts_;
  std::string host_;
  std::string prefix_;
  std::string last_before_obs_;
  std::string last_action_text_;
};

}  // namespace

LiveConfig LiveConfig::from_env() {
  LiveConfig config;
  const char* key = std::getenv("INTROSPECT_API_KEY");
  if (key == nullptr || *key == '\0') {
    throw std::runtime_error("INTROSPECT_API_KEY is not set");
  }
  config.api_key = key;
  const char* base = std::getenv("INTROSPECT_BASE_URL");
  config.base_url = base != nullptr && *base != '\0'
                        ? base
                        : "http://localhost:8000";
  const char* model = std::getenv("INTROSPECT_MODEL");
  config.model = model != nullptr && *model != '\0' ? model : "gpt-4";
  const char* root = std::getenv("INTROSPECT_WEBARENA_ROOT");
  if (root != nullptr && *root != '\0') config.webarena_root = root;
  return config;
}

std::unique_ptr<Oracle> make_live_oracle(LiveConfig config,
                                         const PromptSet& prompts) {
  return std::make_unique<LiveOracle>(std::move(config), prompts);
}

}  // namespace introspect
