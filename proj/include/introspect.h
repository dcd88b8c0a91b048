/* introspect.h — C interface to the introspective-agent simulation library.
 *
 * Everything crosses this boundary as UTF-8 strings (JSON where structured)
 * or opaque handles. Functions return ia_status; on failure the thread-local
 * message from ia_last_error() explains what went wrong. Every char* handed
 * out through an out-parameter is heap-allocated and must be released with
 * ia_string_free().
 */
#ifndef INTROSPECT_H
#define INTROSPECT_H

#include <stdint.h>

#if defined(_WIN32)
#define IA_API __declspec(dllexport)
#else
#define IA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ia_status {
  IA_OK = 0,
  IA_ERR_INVALID_ARGUMENT = 1, /* bad parameter or malformed config */
  IA_ERR_PARSE = 2,            /* unparseable JSON / action text */
  IA_ERR_NOT_FOUND = 3,        /* unknown task id, strategy, prompt kind */
  IA_ERR_CONFIG = 4,           /* missing environment / unusable settings */
  IA_ERR_RUNTIME = 5,          /* internal failure while running */
} ia_status;

/* Library version, e.g. "0.1.0". Static storage; do not free. */
IA_API const char* ia_version(void);

/* Message for the most recent failure on the calling thread ("" if none).
 * Owned by the library; valid until the next failing call on this thread. */
IA_API const char* ia_last_error(void);

/* Releases a string returned via any char** out-parameter. NULL is a no-op. */
IA_API void ia_string_free(char* s);

/* ---------------------------------------------------------------- worlds */

/* A generated site plus its task list. */
typedef struct ia_world ia_world;

/* Generates a world from a profile. profile_json may be NULL or "" for the
 * default profile; otherwise it must be a profile JSON object (unknown keys
 * rejected). */
IA_API ia_status ia_world_generate(uint64_t seed, const char* profile_json,
                                   ia_world** out_world);

/* Reconstructs a world from previously serialized JSON strings. */
IA_API ia_status ia_world_from_json(const char* world_json,
                                    const char* tasks_json,
                                    ia_world** out_world);

/* Serializes the world and task list; both outputs are pretty-printed JSON
 * with a trailing newline, byte-stable for a given world. */
IA_API ia_status ia_world_to_json(const ia_world* world, char** out_world_json,
                                  char** out_tasks_json);

/* Summary JSON: {"site","seed","pages","tasks","depth_histogram":{"4":n,...}} */
IA_API ia_status ia_world_summary(const ia_world* world, char** out_json);

/* Number of tasks; < 0 only if world is NULL. */
IA_API int ia_world_task_count(const ia_world* world);

/* Task id at index (0-based). */
IA_API ia_status ia_world_task_id(const ia_world* world, int index,
                                  char** out_task_id);

IA_API void ia_world_free(ia_world* world);

/* ------------------------------------------------------------- task runs */

/* Runs one task under one strategy against the scripted decision oracle.
 *
 * strategy: "introspective" (alias "ar"), "plan_act", "plan_act_reflexion",
 *           or "tree_search".
 * config_json (NULL/"" for defaults) accepts:
 *   {
 *     "seed": 0,                      // decision seed for this run
 *     "remedy_budget": 1,             // R, anticipated remedies per action
 *     "count_backtrack_actions": true,
 *     "max_actions": 30,              // per-trial action cap override
 *     "max_trials": 7,                // episode cap override
 *     "injection": {                  // scripted-oracle error model
 *       "wrong_action_prob": 0.0,
 *       "remedy_budget": 1,
 *       "remedy_contains_truth": true,
 *       "nonessential_prob": 0.0,
 *       "sample_homogeneity": 0.5
 *     }
 *   }
 * out_result_json: {"task_id","success","trials","plan_revisions","actions",
 *                   "actions_by_trial",backtracks","answer","final_url"}
 * out_trace_jsonl: one JSON event per line (may be NULL if not wanted).
 */
IA_API ia_status ia_run_task(const ia_world* world, const char* task_id,
                             const char* strategy, const char* config_json,
                             char** out_result_json, char** out_trace_jsonl);

/* Same run, but decisions come from a live chat-completion endpoint using
 * the bundled prompt templates. Reads INTROSPECT_API_KEY (required),
 * INTROSPECT_BASE_URL, INTROSPECT_MODEL, INTROSPECT_WEBARENA_ROOT from the
 * environment; returns IA_ERR_CONFIG if the key is missing. */
IA_API ia_status ia_run_task_live(const ia_world* world, const char* task_id,
                                  const char* strategy,
                                  const char* config_json,
                                  char** out_result_json,
                                  char** out_trace_jsonl);

/* ----------------------------------------------------------------- suite */

typedef struct ia_suite_report ia_suite_report;

/* Runs every task under every listed strategy.
 * config_json (NULL/"" for defaults) accepts the ia_run_task keys plus:
 *   "strategies": ["introspective","plan_act","plan_act_reflexion",
 *                  "tree_search"]   // must be non-empty when present
 *   "threads": 1                    // 0 = hardware concurrency
 * The report is byte-identical for a given seed at any thread count. */
IA_API ia_status ia_run_suite(const ia_world* world, const char* config_json,
                              ia_suite_report** out_report);

/* Full report as pretty-printed JSON (trailing newline). */
IA_API ia_status ia_suite_report_json(const ia_suite_report* report,
                                      char** out_json);

/* Table-style text summary. */
IA_API ia_status ia_suite_report_text(const ia_suite_report* report,
                                      char** out_text);

/* Strategy rows in the report; < 0 only if report is NULL. */
IA_API int ia_suite_strategy_count(const ia_suite_report* report);

/* Name of strategy row i. */
IA_API ia_status ia_suite_strategy_name(const ia_suite_report* report,
                                        int strategy_index, char** out_name);

/* Trace for (strategy row, task index), as JSONL, plus the task id. Either
 * out-parameter may be NULL. */
IA_API ia_status ia_suite_trace(const ia_suite_report* report,
                                int strategy_index, int task_index,
                                char** out_task_id, char** out_trace_jsonl);

IA_API void ia_suite_report_free(ia_suite_report* report);

/* --------------------------------------------------------------- prompts */

/* kind: "gen_plan", "gen_action", "gen_remedy", "describe_action",
 *       "eval_align", "eval_completed", "deliver_answer", "map_element". */

/* Raw template text for a prompt kind (embedded copy). */
IA_API ia_status ia_prompt_template(const char* kind, char** out_text);

/* Renders a template: values_json maps placeholder names to strings, e.g.
 * {"TASK":"...", "OBS":"..."}. Every placeholder in the template must be
 * supplied; extras are rejected. dir may be NULL to use the embedded
 * templates or a directory containing <kind>.txt files. */
IA_API ia_status ia_prompt_render(const char* dir, const char* kind,
                                  const char* values_json, char** out_text);

/* Validates a template set (embedded when dir is NULL): every template
 * present, non-empty, and using exactly its expected placeholders.
 * out_report gets a human-readable listing; returns IA_ERR_CONFIG when
 * validation fails (the report then holds the problems). */
IA_API ia_status ia_prompts_validate(const char* dir, char** out_report);

/* --------------------------------------------------------------- actions */

/* Parses agent action text (e.g. "click [7]", "###Answer: blue") into
 * {"verb":..., "element_id":..., "text":..., "url":..., "direction":...}. */
IA_API ia_status ia_action_parse(const char* text, char** out_json);

/* Formats an action JSON object back into its canonical text. */
IA_API ia_status ia_action_format(const char* action_json, char** out_text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* INTROSPECT_H */
