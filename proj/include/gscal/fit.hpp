#pragma once

#include <span>
#include <vector>

namespace gscal {

struct DecayPoint {
  double depth = 0.0;
  double value = 0.0;
  double sigma = 1.0;  // standard error of `value`; weights are 1/sigma^2
};

// value(m) ~ amplitude * rate^m + offset
struct FitResult {
  double amplitude = 0.0;
  double rate = 0.0;
  double offset = 0.0;
  double amplitude_se = 0.0;
  double rate_se = 0.0;
  double offset_se = 0.0;
  double rss = 0.0;        // unweighted residual sum of squares
  double chi2 = 0.0;       // weighted
  int iterations = 0;

  double predict(double depth) const;
};

struct FitOptions {
  int max_iterations = 200;
  double step_tolerance = 1e-10;
  // Flat-data guard: the signal range must exceed this many mean standard errors.
  double min_range_in_se = 3.0;
  // When false the offset is pinned at 0 and only A and the rate are fitted.
  bool free_offset = true;
};

// Weighted Levenberg-Marquardt fit of A * rate^m + b with
// exp(-10 / min depth) <= rate <= 1.
// Starts from the better of a log-linear regression on detrended points and
// a coarse scan over the rate with A, b solved linearly.
//
// Throws std::invalid_argument for fewer than 4 distinct positive depths or
// nonpositive sigmas, IdentifiabilityError for flat data and
// NonConvergenceError when the iteration cap is reached.
FitResult fit_exponential(std::span<const DecayPoint> points, const FitOptions& opts = {});

}  // namespace gscal
