#pragma once

#include <memory>
#include <string>

#include "introspect/oracle.hpp"
#include "introspect/prompts.hpp"

namespace introspect {

// Connection and prompt-context settings for the chat-completion oracle.
struct LiveConfig {
  std::string base_url;  // http(s)://host[:port][/prefix]
  std::string api_key;
  std::string model;
  double temperature = 1.0;
  int max_tokens = 512;
  // Observations longer than this are truncated before prompting, standing
  // in for the summarization step a longer context would not need.
  int max_obs_chars = 6000;
  std::string webarena_root = "http://localhost";
  std::string website_intro =
      "A deterministic practice shopping site used for agent evaluation.";
  std::string instruction =
      "Work through the plan one action at a time and note down anything "
      "needed to answer the task.";
  int retries = 1;  // extra attempts after a failed or unparsable call
  int timeout_seconds = 120;

  // Reads INTROSPECT_API_KEY (required), INTROSPECT_BASE_URL,
  // INTROSPECT_MODEL, and INTROSPECT_WEBARENA_ROOT. Throws when the key is
  // missing.
  static LiveConfig from_env();
};

// Oracle backed by a chat-completion endpoint speaking the familiar
// /v1/chat/completions JSON shape. Decisions come from rendered prompt
// templates; the simulator is never consulted.
std::unique_ptr<Oracle> make_live_oracle(LiveConfig config,
                                         const PromptSet& prompts);

}  // namespace introspect
