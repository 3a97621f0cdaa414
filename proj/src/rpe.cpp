#include "gscal/rpe.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace gscal {

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(a + std::numbers::pi, two_pi);
  if (w <= 0) w += two_pi;
  return w - std::numbers::pi;
}

PhaseEstimate robust_phase_estimate(std::span<const QuadratureSample> samples, const RpeOptions& opts,
                                    const QuadratureCorrection& correct) {
  if (samples.empty()) throw std::invalid_argument("robust_phase_estimate: no samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].depth < 1) throw std::invalid_argument("robust_phase_estimate: depth must be >= 1");
    if (i > 0 && (samples[i].depth <= samples[i - 1].depth || samples[i].depth % samples[i - 1].depth != 0)) {
      throw std::invalid_argument("robust_phase_estimate: depths must increase by integer factors");
    }
  }
  constexpr double pi = std::numbers::pi;
  PhaseEstimate est;
  bool have = false;
  for (const auto& s : samples) {
    const double L = s.depth;
    double c = s.cos_value;
    double sn = s.sin_value;
    // Fixed-point passes let a correction use the estimate from this depth.
    const int passes = correct ? 3 : 1;
    double candidate = est.angle;
    for (int pass = 0; pass < passes; ++pass) {
      if (correct) std::tie(c, sn) = correct(s, have || pass > 0 ? std::optional<double>(candidate) : std::nullopt);
      if (std::hypot(c, sn) < opts.amplitude_floor) break;
      const double base = std::atan2(sn, c);
      if (!have) {
        candidate = base / L;
      } else {
        // Branch closest to the running estimate.
        const double j = std::round((est.angle * L - base) / (2.0 * pi));
        candidate = (base + 2.0 * pi * j) / L;
      }
    }
    if (std::hypot(c, sn) < opts.amplitude_floor) {
      est.aborted = true;
      break;
    }
    est.angle = candidate;
    est.last_depth = s.depth;
    have = true;
  }
  if (!have) {
    // Nothing usable: the angle is unconstrained on the first branch.
    est.angle = 0.0;
    est.half_width = pi / samples.front().depth;
    est.last_depth = 0;
    est.aborted = true;
    return est;
  }
  est.half_width = pi / (2.0 * est.last_depth);
  return est;
}

}  // namespace gscal
