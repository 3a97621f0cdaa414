#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace gscal {

// Estimates of cos(L x) and sin(L x) at repetition depth L.
struct QuadratureSample {
  int depth = 1;
  double cos_value = 0.0;
  double sin_value = 0.0;
  double shots = 1.0;
};

struct PhaseEstimate {
  double angle = 0.0;       // per-repetition angle x
  double half_width = 0.0;  // pi / (2 L) at the last depth used
  int last_depth = 0;
  bool aborted = false;     // stopped early: quadrature amplitude below the floor
};

struct RpeOptions {
  // Abort when sqrt(cos^2 + sin^2) at a depth falls below this.
  double amplitude_floor = 0.15;
};

// Robust phase estimation by depth doubling. Samples must be sorted by
// strictly increasing depth, each a multiple of the previous. The first depth
// L0 gives x in (-pi/L0, pi/L0]; each later depth L picks, among the L
// branches (atan2(s, c) + 2 pi j) / L, the one closest to the running
// estimate.
//
// `correct`, when set, maps (sample, current estimate if any) to corrected
// (cos, sin) before the arctangent; used when a quadrature is read through a
// gate that depends on the unknown angle.
using QuadratureCorrection = std::function<std::pair<double, double>(const QuadratureSample&, std::optional<double>)>;

PhaseEstimate robust_phase_estimate(std::span<const QuadratureSample> samples, const RpeOptions& opts = {},
                                    const QuadratureCorrection& correct = {});

// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace gscal
