#include "clap/structured.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>

#include "clap/error.hpp"

namespace clap {

namespace {

nlohmann::json yaml_to_json(const YAML::Node& n) {
  switch (n.Type()) {
    case YAML::NodeType::Null:
      return nullptr;
    case YAML::NodeType::Scalar: {
      // Quoted scalars stay strings; plain scalars get type inference.
      if (n.Tag() == "!") return n.as<std::string>();
      bool b;
      if (YAML::convert<bool>::decode(n, b)) return b;
      long long i;
      if (YAML::convert<long long>::decode(n, i)) return i;
      double d;
      if (YAML::convert<double>::decode(n, d)) return d;
      return n.as<std::string>();
    }
    case YAML::NodeType::Sequence: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& item : n) arr.push_back(yaml_to_json(item));
      return arr;
    }
    case YAML::NodeType::Map: {
      nlohmann::json obj = nlohmann::json::object();
      for (const auto& kv : n) obj[kv.first.as<std::string>()] = yaml_to_json(kv.second);
      return obj;
    }
    default:
      return nullptr;
  }
}

}  // namespace

nlohmann::json load_structured_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("cannot open " + p.string());
  if (p.extension() == ".json") {
    try {
      return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw IoError("JSON parse error in " + p.string() + ": " + e.what());
    }
  }
  try {
    return yaml_to_json(YAML::Load(in));
  } catch (const YAML::Exception& e) {
    throw IoError("YAML parse error in " + p.string() + ": " + e.what());
  }
}

}  // namespace clap
