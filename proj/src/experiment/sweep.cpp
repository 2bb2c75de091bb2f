#include <future>
#include <sstream>

#include <json.hpp>

#include "topowalk/errors.hpp"
#include "topowalk/experiment.hpp"

namespace topowalk {

using nlohmann::json;

namespace {

json parse_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return text;
  }
}

std::string apply_param(const std::string& template_json, const std::string& param,
                        const std::string& value) {
  json root;
  try {
    root = json::parse(template_json);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  const json v = parse_value(value);
  if (param == "R") {
    if (root.value("walk", "") != "continuous_split")
      throw ConfigError("R", "sweeping R = gamma1/gamma2 needs a continuous_split config");
    if (!v.is_number()) throw ConfigError("R", "value '" + value + "' is not a number");
    json& p = root["profile"];
    if (!p.is_object() || !p.contains("gamma2") || !p["gamma2"].is_number())
      throw ConfigError("profile.gamma2", "needed to resolve R");
    p["gamma1"] = v.get<double>() * p["gamma2"].get<double>();
  } else {
    json* node = &root;
    std::stringstream ss(param);
    std::string key;
    std::vector<std::string> keys;
    while (std::getline(ss, key, '.')) keys.push_back(key);
    if (keys.empty()) throw ConfigError(param, "empty parameter path");
    for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
      if (!node->is_object() || !node->contains(keys[i])) throw ConfigError(param, "path not found in template");
      node = &(*node)[keys[i]];
    }
    if (!node->is_object() || !node->contains(keys.back())) throw ConfigError(param, "path not found in template");
    (*node)[keys.back()] = v;
  }
  return root.dump(2);
}

}  // namespace

std::vector<SweepOutcome> run_sweep(const std::string& template_json, const std::string& param,
                                    const std::vector<std::string>& values,
                                    const std::filesystem::path& base_dir) {
  if (values.empty()) throw ConfigError("values", "sweep needs at least one value");
  const ExperimentConfig base = parse_config(template_json);
  const std::filesystem::path root = base_dir.empty() ? resolve_output_dir(base) : base_dir;

  // Resolve every child up front so a bad parameter fails before any run.
  std::vector<ExperimentConfig> children;
  for (const auto& v : values) children.push_back(parse_config(apply_param(template_json, param, v)));

  std::vector<std::future<SweepOutcome>> jobs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] {
      SweepOutcome out;
      out.value = values[i];
      out.output_dir = root / (param + "=" + values[i]);
      try {
        out.summary = run_experiment(children[i], out.output_dir);
        out.ok = true;
      } catch (const std::exception& e) {
        out.error = e.what();
      }
      return out;
    }));
  }
  std::vector<SweepOutcome> results;
  for (auto& j : jobs) results.push_back(j.get());
  return results;
}

}  // namespace topowalk
