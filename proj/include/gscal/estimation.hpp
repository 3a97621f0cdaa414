#pragma once

#include <optional>
#include <vector>

#include "gscal/dataset.hpp"
#include "gscal/fit.hpp"
#include "gscal/protocols.hpp"
#include "gscal/rpe.hpp"

namespace gscal {

// S = Pr(+1 outcome | +1 prep) + Pr(-1 outcome | -1 prep) - 1, where the
// decoherence circuits report outcome 0 for the +1 eigenvalue.
double pauli_signal(const CountRecord& plus, const CountRecord& minus);

// Signal at depth m for basis kind (DecoherenceX or DecoherenceZ), with its
// binomial standard error. Throws DatasetError when a sign record is missing.
DecayPoint pauli_signal_point(const Dataset& d, FamilyKind basis, int m);

// All depths for which both sign records exist, ascending.
std::vector<DecayPoint> pauli_signal_series(const Dataset& d, FamilyKind basis);

struct DecoherenceParams {
  double p_z = 0.0;
  double p_x = 0.0;
  bool p_x_clamped = false;  // rate_z / (1 - p_z) exceeded 1
};

// p_z = 1 - sqrt(rate_x), p_x = 1 - sqrt(rate_z / (1 - p_z)).
// Throws std::domain_error for rates outside (0, 1].
DecoherenceParams decoherence_params(double rate_x, double rate_z);

struct DecoherenceEstimate {
  FitResult fit_x;
  FitResult fit_z;
  DecoherenceParams params;
};

DecoherenceEstimate estimate_decoherence(const Dataset& d, const FitOptions& opts = {});

struct RpeResult {
  double epsilon = 0.0;
  double theta = 0.0;
  double epsilon_half_width = 0.0;
  double theta_half_width = 0.0;
  PhaseEstimate amplitude;  // per-gate rotation angle
  PhaseEstimate axis;       // per-echo-block rotation angle
};

// Uses depths 1, 2, ..., 2^K (K inferred from the dataset when not given).
// Throws DatasetError when a required record is missing.
RpeResult rpe_extract(const Dataset& d, std::optional<int> max_depth_exponent = std::nullopt,
                      const RpeOptions& opts = {});

struct ReadoutEstimate {
  double r_01 = 0.0;
  double r_10 = 0.0;
};

ReadoutEstimate readout_extract(const Dataset& d);

struct CzEstimate {
  double alpha = 0.0;
  double beta = 0.0;
  double alpha_half_width = 0.0;
  double beta_half_width = 0.0;
  PhaseEstimate alpha_phase;
  PhaseEstimate beta_minus_alpha_phase;
  FitResult bell_fit;
  FitResult plus_fit;
  // Per-CZ sums recovered from the decay rates: rate = (1 - 2 sum)^2.
  double sum_iz_zi = 0.0;
  double sum_iz_zi_se = 0.0;
  double sum_zi_zz = 0.0;
  double sum_zi_zz_se = 0.0;
  // No decay detected: the series stayed at full success within its errors,
  // so the sum is reported as 0 with a zero standard error and no fit.
  bool bell_flat = false;
  bool plus_flat = false;
};

CzEstimate cz_extract(const Dataset& d, const RpeOptions& rpe_opts = {}, const FitOptions& fit_opts = {});

}  // namespace gscal
