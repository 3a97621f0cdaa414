#include "gscal/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "gscal/errors.hpp"

namespace gscal {
namespace {

constexpr double kPi = std::numbers::pi;

// Smoothed frequency for variance estimates so that 0/n or n/n keep a
// nonzero weight.
double smoothed(const CountRecord& r) { return (r.zeros + 0.5) / (double(r.shots) + 1.0); }

double binomial_var(const CountRecord& r) {
  const double p = smoothed(r);
  return p * (1.0 - p) / double(r.shots);
}

double quadrature(const CountRecord& r) { return 2.0 * r.frequency() - 1.0; }

std::map<int, std::vector<const CountRecord*>> by_depth(const Dataset& d, FamilyKind kind) {
  std::map<int, std::vector<const CountRecord*>> out;
  const std::string prefix = std::string(family_name(kind)) + "/";
  for (const auto& r : d.records()) {
    if (r.circuit_id.rfind(prefix, 0) != 0) continue;
    const CircuitFamily f = resolve_circuit(r.circuit_id);
    out[f.index].push_back(&r);
  }
  return out;
}

int infer_exponent(const Dataset& d, FamilyKind kind, const char* tag_a, const char* tag_b, int first_k) {
  int k = first_k;
  while (d.contains(make_circuit_id(kind, 1 << k, tag_a)) && d.contains(make_circuit_id(kind, 1 << k, tag_b))) ++k;
  return k - 1;
}

}  // namespace

double pauli_signal(const CountRecord& plus, const CountRecord& minus) {
  return plus.frequency() + (1.0 - minus.frequency()) - 1.0;
}

DecayPoint pauli_signal_point(const Dataset& d, FamilyKind basis, int m) {
  if (basis != FamilyKind::DecoherenceX && basis != FamilyKind::DecoherenceZ) {
    throw std::invalid_argument("pauli_signal_point: basis must be a decoherence family");
  }
  const CountRecord& plus = d.at(make_circuit_id(basis, m, "+"));
  const CountRecord& minus = d.at(make_circuit_id(basis, m, "-"));
  return {double(m), pauli_signal(plus, minus), std::sqrt(binomial_var(plus) + binomial_var(minus))};
}

std::vector<DecayPoint> pauli_signal_series(const Dataset& d, FamilyKind basis) {
  std::vector<DecayPoint> out;
  for (const auto& [m, recs] : by_depth(d, basis)) {
    if (d.contains(make_circuit_id(basis, m, "+")) && d.contains(make_circuit_id(basis, m, "-"))) {
      out.push_back(pauli_signal_point(d, basis, m));
    }
  }
  return out;
}

DecoherenceParams decoherence_params(double rate_x, double rate_z) {
  if (!(rate_x > 0.0 && rate_x <= 1.0) || !(rate_z > 0.0 && rate_z <= 1.0)) {
    throw std::domain_error("decay rates must lie in (0, 1]");
  }
  DecoherenceParams out;
  out.p_z = 1.0 - std::sqrt(rate_x);
  const double ratio = rate_z / (1.0 - out.p_z);
  if (ratio > 1.0) {
    out.p_x = 0.0;
    out.p_x_clamped = true;
  } else {
    out.p_x = 1.0 - std::sqrt(ratio);
  }
  return out;
}

DecoherenceEstimate estimate_decoherence(const Dataset& d, const FitOptions& opts) {
  const auto xs = pauli_signal_series(d, FamilyKind::DecoherenceX);
  const auto zs = pauli_signal_series(d, FamilyKind::DecoherenceZ);
  DecoherenceEstimate out;
  out.fit_x = fit_exponential(xs, opts);
  out.fit_z = fit_exponential(zs, opts);
  out.params = decoherence_params(out.fit_x.rate, out.fit_z.rate);
  return out;
}

RpeResult rpe_extract(const Dataset& d, std::optional<int> max_depth_exponent, const RpeOptions& opts) {
  const int k_amp = max_depth_exponent.value_or(infer_exponent(d, FamilyKind::RpeAmplitude, "cos", "sin", 0));
  const int k_axis = max_depth_exponent.value_or(infer_exponent(d, FamilyKind::RpeAxis, "cos", "sin", 0));
  if (k_amp < 0 || k_axis < 0) throw DatasetError("dataset lacks depth-1 phase-estimation circuits");

  auto samples = [&](FamilyKind kind, int kmax) {
    std::vector<QuadratureSample> s;
    for (int k = 0; k <= kmax; ++k) {
      const int depth = 1 << k;
      const CountRecord& c = d.at(make_circuit_id(kind, depth, "cos"));
      const CountRecord& sn = d.at(make_circuit_id(kind, depth, "sin"));
      s.push_back({depth, quadrature(c), quadrature(sn), double(std::min(c.shots, sn.shots))});
    }
    return s;
  };

  RpeResult out;
  // The sine circuit reads sin(L phi - delta) with delta = phi - pi/2 from its
  // final X90; undo that with the running estimate of phi.
  const auto amp_samples = samples(FamilyKind::RpeAmplitude, k_amp);
  const QuadratureCorrection derotate = [](const QuadratureSample& s, std::optional<double> phi) {
    const double delta = phi ? *phi - kPi / 2 : 0.0;
    const double cd = std::cos(delta);
    if (std::fabs(cd) < 0.2) return std::make_pair(s.cos_value, s.sin_value);
    return std::make_pair(s.cos_value, (s.sin_value + s.cos_value * std::sin(delta)) / cd);
  };
  out.amplitude = robust_phase_estimate(amp_samples, opts, derotate);
  out.epsilon = 2.0 * out.amplitude.angle / kPi - 1.0;
  out.epsilon_half_width = 2.0 * out.amplitude.half_width / kPi;

  // Each echo block is R_{n'}(psi) R_n(psi) with psi = (1 + eps) pi, a rotation
  // by Omega with sin(Omega / 4) = sin(psi / 2) sin(theta).
  out.axis = robust_phase_estimate(samples(FamilyKind::RpeAxis, k_axis), opts);
  const double s = std::sin((1.0 + out.epsilon) * kPi / 2.0);
  const double ratio = std::clamp(std::sin(out.axis.angle / 4.0) / s, -1.0, 1.0);
  out.theta = std::asin(ratio);
  out.theta_half_width = out.axis.half_width / (4.0 * std::fabs(s));
  return out;
}

ReadoutEstimate readout_extract(const Dataset& d) {
  const CountRecord& zero = d.at(make_circuit_id(FamilyKind::ReadoutZero, 0, "0"));
  const CountRecord& pi = d.at(make_circuit_id(FamilyKind::ReadoutPi, 2, "0"));
  return {1.0 - zero.frequency(), pi.frequency()};
}

CzEstimate cz_extract(const Dataset& d, const RpeOptions& rpe_opts, const FitOptions& fit_opts) {
  int kmax = 1;
  while (d.contains(make_circuit_id(FamilyKind::CzPhaseA, 1 << (kmax + 1), "0"))) ++kmax;
  std::vector<QuadratureSample> alpha_s, delta_s;
  for (int k = 1; k <= kmax; ++k) {
    const int depth = 1 << k;
    const CountRecord& a = d.at(make_circuit_id(FamilyKind::CzPhaseA, depth, "0"));
    const CountRecord& b = d.at(make_circuit_id(FamilyKind::CzPhaseB, depth, "0"));
    const CountRecord& bc = d.at(make_circuit_id(FamilyKind::CzBeta, depth, "cos"));
    const CountRecord& bs = d.at(make_circuit_id(FamilyKind::CzBeta, depth, "sin"));
    // Pr(0) = (1 + cos(L a)) / 2 without the Z90 and (1 - sin(L a)) / 2 with it.
    alpha_s.push_back({depth, quadrature(a), -quadrature(b), double(std::min(a.shots, b.shots))});
    delta_s.push_back({depth, quadrature(bc), -quadrature(bs), double(std::min(bc.shots, bs.shots))});
  }

  CzEstimate out;
  out.alpha_phase = robust_phase_estimate(alpha_s, rpe_opts);
  // With the control in |1> the target picks up pi + beta - alpha per CZ; the
  // depths are even, so the pi drops out.
  out.beta_minus_alpha_phase = robust_phase_estimate(delta_s, rpe_opts);
  out.alpha = out.alpha_phase.angle;
  out.alpha_half_width = out.alpha_phase.half_width;
  out.beta = out.beta_minus_alpha_phase.angle + out.alpha;
  out.beta_half_width = out.beta_minus_alpha_phase.half_width + out.alpha_half_width;

  auto series = [&](FamilyKind kind) {
    std::vector<DecayPoint> pts;
    for (const auto& [depth, recs] : by_depth(d, kind)) {
      const CountRecord& r = *recs.front();
      pts.push_back({double(depth), r.frequency(), std::sqrt(binomial_var(r))});
    }
    return pts;
  };
  const auto bell = series(FamilyKind::CzDecayBell);
  const auto plus = series(FamilyKind::CzDecayPlus);
  // Each unit of depth adds two CZs, each damping by (1 - 2 sum).
  auto to_sum = [&](const std::vector<DecayPoint>& pts, FitResult& fit, double& sum, double& se, bool& flat) {
    try {
      fit = fit_exponential(pts, fit_opts);
    } catch (const IdentifiabilityError&) {
      const bool at_one = std::all_of(pts.begin(), pts.end(), [](const DecayPoint& p) {
        return p.value >= 1.0 - 3.0 * p.sigma;
      });
      if (!at_one) throw;
      flat = true;
      sum = 0.0;
      se = 0.0;
      return;
    }
    const double root = std::sqrt(fit.rate);
    sum = 0.5 * (1.0 - root);
    se = fit.rate_se / (4.0 * root);
  };
  to_sum(bell, out.bell_fit, out.sum_iz_zi, out.sum_iz_zi_se, out.bell_flat);
  to_sum(plus, out.plus_fit, out.sum_zi_zz, out.sum_zi_zz_se, out.plus_flat);
  return out;
}

}  // namespace gscal
