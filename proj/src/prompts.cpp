#include "introspect/prompts.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace introspect {
namespace {

#include "prompts_embedded.inc"

}  // namespace

const std::array<PromptKind, kPromptKindCount> kAllPromptKinds = {
    PromptKind::kGenPlan,       PromptKind::kGenAction,
    PromptKind::kGenRemedy,     PromptKind::kDescribeAction,
    PromptKind::kEvalAlign,     PromptKind::kEvalCompleted,
    PromptKind::kDeliverAnswer, PromptKind::kMapElement,
};

std::string_view prompt_kind_name(PromptKind k) {
  switch (k) {
    case PromptKind::kGenPlan: return "gen_plan";
    case PromptKind::kGenAction: return "gen_action";
    case PromptKind::kGenRemedy: return "gen_remedy";
    case PromptKind::kDescribeAction: return "describe_action";
    case PromptKind::kEvalAlign: return "eval_align";
    case PromptKind::kEvalCompleted: return "eval_completed";
    case PromptKind::kDeliverAnswer: return "deliver_answer";
    case PromptKind::kMapElement: return "map_element";
  }
  return "?";
}

PromptKind prompt_kind_from_name(std::string_view name) {
  for (PromptKind k : kAllPromptKinds) {
    if (prompt_kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown prompt name: " + std::string(name));
}

const PromptSet& PromptSet::embedded() {
  static const PromptSet set = [] {
    PromptSet s;
    for (const auto& entry : kEmbeddedPrompts) {
      s.set_text(prompt_kind_from_name(entry.name), entry.text);
    }
    return s;
  }();
  return set;
}

PromptSet PromptSet::load_dir(const std::string& dir) {
  PromptSet set;
  for (PromptKind k : kAllPromptKinds) {
    std::string path = dir + "/" + std::string(prompt_kind_name(k)) + ".txt";
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read prompt template: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    set.set_text(k, buf.str());
  }
  return set;
}

const std::string& PromptSet::text(PromptKind k) const {
  return texts_[static_cast<std::size_t>(k)];
}

void PromptSet::set_text(PromptKind k, std::string text) {
  texts_[static_cast<std::size_t>(k)] = std::move(text);
}

namespace {

// Placeholder at tmpl[i]=='{': returns the name end ('}') position, or npos
// when this brace does not open a placeholder.
std::size_t placeholder_close(const std::string& tmpl, std::size_t i) {
  for (std::size_t j = i + 1; j < tmpl.size(); ++j) {
    char c = tmpl[j];
    if (c == '}') return j == i + 1 ? std::string::npos : j;
    if (c == '{' || c == '\n') return std::string::npos;
  }
  return std::string::npos;
}

}  // namespace

std::vector<std::string> PromptSet::scan_placeholders(const std::string& tmpl) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] != '{') continue;
    std::size_t close = placeholder_close(tmpl, i);
    if (close == std::string::npos) continue;
    std::string name = tmpl.substr(i + 1, close - i - 1);
    if (std::find(out.begin(), out.end(), name) == out.end()) {
      out.push_back(std::move(name));
    }
    i = close;
  }
  return out;
}

std::string PromptSet::render(const std::string& tmpl,
                              const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  for (std::size_t i = 0; i < tmpl.size();) {
    if (tmpl[i] != '{') {
      out.push_back(tmpl[i]);
      ++i;
      continue;
    }
    std::size_t close = placeholder_close(tmpl, i);
    if (close == std::string::npos) {
      out.push_back(tmpl[i]);
      ++i;
      continue;
    }
    std::string name = tmpl.substr(i + 1, close - i - 1);
    auto it = values.find(name);
    if (it == values.end()) {
      throw std::invalid_argument("render: no value for placeholder {" + name +
                                  "}");
    }
    out += it->second;
    i = close + 1;
  }
  return out;
}

std::string PromptSet::render(
    PromptKind k, const std::map<std::string, std::string>& values) const {
  return render(text(k), values);
}

const std::vector<std::string>& PromptSet::expected_placeholders(PromptKind k) {
  static const std::array<std::vector<std::string>, kPromptKindCount> kExpected = {{
      // gen_plan
      {"webarena_root", "WEBSITE INTRO", "INSTRUCTION",
       "STARTING SCREEN DESCRIPTION", "TASK", "FAILED PLAN", "HISTORY"},
      // gen_action
      {"webarena_root", "TASK", "PLAN", "HISTORY", "STEP", "OBS", "NOTES"},
      // gen_remedy
      {"ACTION_PROMPT", "PRIOR_ACTIONS"},
      // describe_action
      {"ACTION", "OBS1", "OBS2"},
      // eval_align
      {"STEP", "PLAN", "ACTION", "OBS1", "OBS2"},
      // eval_completed
      {"TASK", "PLAN", "HISTORY", "NOTES", "OBS"},
      // deliver_answer
      {"TASK", "HISTORY", "NOTES", "OBS"},
      // map_element
      {"element_id", "OBS1", "OBS2"},
  }};
  return kExpected[static_cast<std::size_t>(k)];
}

std::vector<std::string> PromptSet::validate() const {
  std::vector<std::string> problems;
  for (PromptKind k : kAllPromptKinds) {
    std::string name(prompt_kind_name(k));
    const std::string& tmpl = text(k);
    if (tmpl.empty()) {
      problems.push_back(name + ": template is empty");
      continue;
    }
    std::set<std::string> found;
    for (const std::string& p : scan_placeholders(tmpl)) found.insert(p);
    for (const std::string& want : expected_placeholders(k)) {
      if (!found.count(want)) {
        problems.push_back(name + ": missing placeholder {" + want + "}");
      }
      found.erase(want);
    }
    for (const std::string& extra : found) {
      problems.push_back(name + ": unexpected placeholder {" + extra + "}");
    }
  }
  return problems;
}

}  // namespace introspect
