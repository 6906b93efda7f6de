#include "clap/prompts.hpp"

#include <algorithm>

#include "clap/error.hpp"
#include "clap/structured.hpp"

namespace clap {

namespace {

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::vector<std::string> read_list(const nlohmann::json& j, const char* key,
                                   const std::string& file) {
  if (!j.contains(key) || !j[key].is_array())
    throw ArgumentError("prompt file " + file + ": missing list '" + key + "'");
  std::vector<std::string> out;
  for (const auto& item : j[key]) {
    if (!item.is_string())
      throw ArgumentError("prompt file " + file + ": non-string entry in '" + key + "'");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

void validate_prompt_set(const PromptSet& ps) {
  if (ps.positive.empty()) throw ArgumentError("prompt set: positive list is empty");
  if (ps.negative.empty()) throw ArgumentError("prompt set: negative list is empty");
  for (const auto& s : ps.positive)
    if (is_blank(s)) throw ArgumentError("prompt set: blank positive prompt");
  for (const auto& s : ps.negative)
    if (is_blank(s)) throw ArgumentError("prompt set: blank negative prompt");
}

PromptSet load_prompt_set(const std::filesystem::path& p) {
  const nlohmann::json j = load_structured_file(p);
  PromptSet ps;
  ps.anatomy = j.value("anatomy", "");
  ps.positive = read_list(j, "positive", p.string());
  ps.negative = read_list(j, "negative", p.string());
  validate_prompt_set(ps);
  return ps;
}

std::string join_prompts(const std::vector<std::string>& prompts) {
  std::string out;
  for (size_t i = 0; i < prompts.size(); ++i) {
    if (i) out += ", ";
    out += prompts[i];
  }
  return out;
}

}  // namespace clap
