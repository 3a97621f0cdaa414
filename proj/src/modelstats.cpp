#include "gscal/modelstats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gscal/kernels.hpp"
#include "gscal/likelihood.hpp"

namespace gscal {

AbsDevMoments absdev_moments(std::int64_t n, double p) {
  if (n < 1) throw std::invalid_argument("absdev_moments: n must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("absdev_moments: p must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return {0.0, 0.0};
  const double nd = double(n);
  const double f = std::floor(nd * p);
  const double j = f + 1.0;
  if (j > nd) return {0.0, 0.0};
  // E|X - np| = 2 (1-p)^(n-f) p^(f+1) (f+1) C(n, f+1)
  const double log_c = std::lgamma(nd + 1.0) - std::lgamma(j + 1.0) - std::lgamma(nd - j + 1.0);
  const double log_mad = std::log(2.0) + (nd - f) * std::log1p(-p) + j * std::log(p) + std::log(j) + log_c;
  AbsDevMoments m;
  m.mu = std::exp(log_mad) / nd;
  m.sigma = std::sqrt(std::max(0.0, p * (1.0 - p) / nd - m.mu * m.mu));
  return m;
}

ViolationReport make_violation_report(double delta_hat, double mu, double sigma, std::size_t circuits) {
  ViolationReport r;
  r.delta_hat = delta_hat;
  r.mu = mu;
  r.sigma = sigma;
  r.circuits = circuits;
  const double dev = std::fabs(delta_hat - mu);
  if (sigma > 0.0) {
    r.k_hat = dev / sigma;
  } else {
    r.k_hat = dev > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  r.bound = r.k_hat > 1.0 ? 1.0 / (r.k_hat * r.k_hat) : 1.0;
  r.rejected = r.bound < kViolationThreshold;
  return r;
}

ViolationReport model_violation(const GatesetModel& model, const LikelihoodProblem& problem) {
  const auto p = problem.probabilities(model);
  const auto& n = problem.shots();
  const auto& k = problem.zeros();
  std::vector<double> freq(p.size()), prob(p.size());
  double mu = 0.0, var = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    prob[i] = std::clamp(p[i], 0.0, 1.0);
    freq[i] = k[i] / n[i];
    const auto m = absdev_moments(std::int64_t(n[i]), prob[i]);
    mu += m.mu;
    var += m.sigma * m.sigma;
  }
  const double delta = kernels::active().abs_diff_sum(freq.data(), prob.data(), p.size());
  return make_violation_report(delta, mu, std::sqrt(var), p.size());
}

ViolationReport model_violation(const GatesetModel& model, const Dataset& d) {
  return model_violation(model, LikelihoodProblem(d));
}

double discrimination_error(double l_ratio) {
  if (!(l_ratio >= 1.0)) throw std::invalid_argument("likelihood ratio must be at least 1");
  return 1.0 / (1.0 + l_ratio);
}

bool confidence_region_member(const GatesetModel& model, const Dataset& d, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  return model_violation(model, d).bound > eps;
}

nlohmann::json violation_to_json(const ViolationReport& r) {
  nlohmann::json j = {
      {"delta_hat", r.delta_hat}, {"mu", r.mu},           {"sigma", r.sigma},
      {"bound", r.bound},         {"rejected", r.rejected}, {"circuits", r.circuits},
  };
  j["k_hat"] = std::isfinite(r.k_hat) ? nlohmann::json(r.k_hat) : nlohmann::json(nullptr);
  return j;
}

}  // namespace gscal
