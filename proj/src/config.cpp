#include "gscal/config.hpp"

#include <fstream>
#include <set>

namespace gscal {
namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
  }
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

}  // namespace

void RunConfig::validate() const {
  model.validate();
  if (decoherence_depths.empty()) throw ConfigError("decoherence_depths must not be empty");
  for (int m : decoherence_depths) {
    if (m <= 0 || m % 2 != 0) throw ConfigError("decoherence depths must be positive and even");
  }
  if (rpe_max_exponent < 0 || rpe_max_exponent > 20) throw ConfigError("rpe_max_exponent must lie in [0, 20]");
  if (shots.decoherence < 1 || shots.rpe < 1 || shots.readout < 1 || shots.cz < 1) {
    throw ConfigError("shot counts must be at least 1");
  }
  if (!(pstar > 0.0 && pstar < 0.5)) throw ConfigError("pstar must lie in (0, 0.5)");
  if (cz.enabled) {
    if (!model.cz) throw ConfigError("cz.enabled requires model.cz");
    if (cz.phase_max_exponent < 1 || cz.phase_max_exponent > 20) {
      throw ConfigError("cz.phase_max_exponent must lie in [1, 20]");
    }
    if (cz.decay_depths.size() < 4) throw ConfigError("cz.decay_depths needs at least four depths");
    for (int d : cz.decay_depths) {
      if (d < 1) throw ConfigError("cz decay depths must be positive");
    }
  }
}

RunConfig config_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"model", "decoherence_depths", "rpe_max_exponent", "shots", "seed", "output_dir", "pstar", "cz"},
                 "config");
  RunConfig c;
  if (j.contains("model")) {
    try {
      c.model = model_from_json(j.at("model"));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config.model: ") + e.what());
    }
  }
  read(j, "decoherence_depths", c.decoherence_depths, "config");
  read(j, "rpe_max_exponent", c.rpe_max_exponent, "config");
  read(j, "seed", c.seed, "config");
  read(j, "output_dir", c.output_dir, "config");
  read(j, "pstar", c.pstar, "config");
  if (j.contains("shots")) {
    const auto& s = j.at("shots");
    reject_unknown(s, {"decoherence", "rpe", "readout", "cz"}, "config.shots");
    read(s, "decoherence", c.shots.decoherence, "config.shots");
    read(s, "rpe", c.shots.rpe, "config.shots");
    read(s, "readout", c.shots.readout, "config.shots");
    read(s, "cz", c.shots.cz, "config.shots");
  }
  if (j.contains("cz")) {
    const auto& z = j.at("cz");
    reject_unknown(z, {"enabled", "phase_max_exponent", "decay_depths"}, "config.cz");
    read(z, "enabled", c.cz.enabled, "config.cz");
    read(z, "phase_max_exponent", c.cz.phase_max_exponent, "config.cz");
    read(z, "decay_depths", c.cz.decay_depths, "config.cz");
  }
  c.validate();
  return c;
}

nlohmann::json config_to_json(const RunConfig& c) {
  return {
      {"model", model_to_json(c.model)},
      {"decoherence_depths", c.decoherence_depths},
      {"rpe_max_exponent", c.rpe_max_exponent},
      {"shots", {{"decoherence", c.shots.decoherence}, {"rpe", c.shots.rpe}, {"readout", c.shots.readout},
                 {"cz", c.shots.cz}}},
      {"seed", c.seed},
      {"output_dir", c.output_dir},
      {"pstar", c.pstar},
      {"cz", {{"enabled", c.cz.enabled}, {"phase_max_exponent", c.cz.phase_max_exponent},
              {"decay_depths", c.cz.decay_depths}}},
  };
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace gscal
