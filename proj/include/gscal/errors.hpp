#pragma once

#include <stdexcept>
#include <string>

namespace gscal {

struct UnitarityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A probability fell outside [-1e-9, 1 + 1e-9]: the model or circuit was built wrong.
struct ProbabilityError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ModelError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CircuitError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DatasetError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Decay data too flat to pin down the rate.
struct IdentifiabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gscal
