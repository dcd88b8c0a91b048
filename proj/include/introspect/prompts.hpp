#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace introspect {

enum class PromptKind {
  kGenPlan,
  kGenAction,
  kGenRemedy,
  kDescribeAction,
  kEvalAlign,
  kEvalCompleted,
  kDeliverAnswer,
  kMapElement,
};

inline constexpr int kPromptKindCount = 8;
extern const std::array<PromptKind, kPromptKindCount> kAllPromptKinds;

// File stem of the template ("gen_plan" -> prompts/gen_plan.txt).
std::string_view prompt_kind_name(PromptKind k);
PromptKind prompt_kind_from_name(std::string_view name);  // throws

// The eight prompt templates. Placeholders are written {NAME}; names may
// contain spaces but never braces or newlines.
class PromptSet {
 public:
  // Copies compiled into the library at build time.
  static const PromptSet& embedded();
  // Loads <dir>/<name>.txt for every kind; throws when one is missing.
  static PromptSet load_dir(const std::string& dir);

  const std::string& text(PromptKind k) const;
  void set_text(PromptKind k, std::string text);

  // Unique placeholder names in first-appearance order.
  static std::vector<std::string> scan_placeholders(const std::string& tmpl);

  // Single-pass substitution of every {NAME}; braces inside the substituted
  // values are left alone. A placeholder with no value throws
  // std::invalid_argument.
  static std::string render(const std::string& tmpl,
                            const std::map<std::string, std::string>& values);
  std::string render(PromptKind k,
                     const std::map<std::string, std::string>& values) const;

  // The placeholder set each template must carry exactly.
  static const std::vector<std::string>& expected_placeholders(PromptKind k);

  // One message per problem; empty means every template checks out.
  std::vector<std::string> validate() const;

 private:
  std::array<std::string, kPromptKindCount> texts_;
};

}  // namespace introspect
