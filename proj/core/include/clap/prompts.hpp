#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace clap {

// Named positive/negative prompt lists for one anatomy. Positive prompts
// describe lesions; negative prompts describe healthy tissue and are used
// to attenuate false-positive attention.
struct PromptSet {
  std::string anatomy;
  std::vector<std::string> positive;
  std::vector<std::string> negative;
};

// Throws ArgumentError unless both lists are non-empty with non-blank
// entries after trimming.
void validate_prompt_set(const PromptSet& ps);

// File format (YAML or JSON): {anatomy, positive: [...], negative: [...]}.
PromptSet load_prompt_set(const std::filesystem::path& p);

// Entries joined with ", " into the single text input handed to a backend.
std::string join_prompts(const std::vector<std::string>& prompts);

}  // namespace clap
