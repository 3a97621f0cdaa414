#pragma once

#include <cstdint>
#include <stdexcept>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "gscal/model.hpp"

namespace gscal {

struct ShotConfig {
  std::int64_t decoherence = 30;
  std::int64_t rpe = 30;
  std::int64_t readout = 300;
  std::int64_t cz = 10000;
};

struct CzRunConfig {
  bool enabled = false;
  int phase_max_exponent = 4;
  std::vector<int> decay_depths = {4, 8, 16, 32, 48, 64, 96};
};

// Defaults reproduce the single-qubit experiment: m = 20, 40, ..., 120,
// phase estimation to depth 8, 30 shots per circuit and 300 readout shots.
struct RunConfig {
  GatesetModel model{0.06, 0.01, 0.002, 0.02, 0.08, 0.05, std::nullopt};
  std::vector<int> decoherence_depths = {20, 40, 60, 80, 100, 120};
  int rpe_max_exponent = 3;
  ShotConfig shots;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  double pstar = 0.05;
  CzRunConfig cz;

  // Throws ConfigError on any invariant violation.
  void validate() const;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Every field is optional and falls back to the default above; unknown fields
// are rejected.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace gscal
