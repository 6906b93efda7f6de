#pragma once

#include <filesystem>
#include <json.hpp>

namespace clap {

// Load a YAML or JSON document into a nlohmann::json tree. Files named
// *.json go through the JSON parser; everything else goes through yaml-cpp
// (which accepts JSON as well). Scalars are coerced to bool/int/double when
// they parse as such.
nlohmann::json load_structured_file(const std::filesystem::path& p);

}  // namespace clap
