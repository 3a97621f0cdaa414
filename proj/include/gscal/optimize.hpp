#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gscal {

struct NelderMeadOptions {
  int max_evaluations = 6000;
  // Stop when the spread of simplex values falls below this...
  double f_tolerance = 1e-10;
  // ...and every vertex is within this of the best one (per coordinate).
  double x_tolerance = 1e-9;
  // Fresh simplexes built around the best point after the first run.
  int restarts = 1;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

// Box-constrained Nelder-Mead minimization: every trial point is projected
// onto [lower, upper] before evaluation. `step` sets the initial simplex edge
// per coordinate (flipped inward at an upper bound).
NelderMeadResult minimize_nelder_mead(const Objective& f, std::vector<double> x0, std::vector<double> step,
                                      const std::vector<double>& lower, const std::vector<double>& upper,
                                      const NelderMeadOptions& opts = {});

}  // namespace gscal
