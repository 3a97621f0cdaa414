#pragma once

#include <cstdint>

#include "json.hpp"
#include "gscal/dataset.hpp"
#include "gscal/model.hpp"

namespace gscal {

class LikelihoodProblem;

inline constexpr double kViolationThreshold = 0.05;

struct AbsDevMoments {
  double mu = 0.0;     // E|p_hat - p|
  double sigma = 0.0;  // sd |p_hat - p|
};

// Mean and standard deviation of |X/n - p| for X ~ Binomial(n, p), via De
// Moivre's closed form evaluated in log space. Throws std::invalid_argument
// for n < 1 or p outside [0, 1].
AbsDevMoments absdev_moments(std::int64_t n, double p);

struct ViolationReport {
  double delta_hat = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
  double k_hat = 0.0;  // +inf when sigma = 0 and delta_hat != mu
  double bound = 1.0;  // min(1, 1 / k_hat^2)
  bool rejected = false;
  std::size_t circuits = 0;
};

ViolationReport make_violation_report(double delta_hat, double mu, double sigma, std::size_t circuits = 0);
ViolationReport model_violation(const GatesetModel& model, const Dataset& d);
ViolationReport model_violation(const GatesetModel& model, const LikelihoodProblem& problem);

// 1 / (1 + L). Throws std::invalid_argument for L < 1.
double discrimination_error(double l_ratio);

// bound > eps. Throws std::invalid_argument unless 0 < eps < 1.
bool confidence_region_member(const GatesetModel& model, const Dataset& d, double eps);

// k_hat is null when infinite.
nlohmann::json violation_to_json(const ViolationReport& r);

}  // namespace gscal
