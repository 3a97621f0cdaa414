#include "gscal/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gscal/errors.hpp"
#include "gscal/kernels.hpp"

namespace gscal {

LikelihoodProblem::LikelihoodProblem(const Dataset& d) {
  ids_.reserve(d.size());
  circuits_.reserve(d.size());
  for (const auto& r : d.records()) {
    const CircuitFamily f = resolve_circuit(r.circuit_id);
    ids_.push_back(r.circuit_id);
    circuits_.push_back(compile(f.circuit));
    shots_.push_back(double(r.shots));
    zeros_.push_back(r.zeros);
    needs_cz_ = needs_cz_ || f.circuit.qubit_count > 1;
  }
}

std::vector<double> LikelihoodProblem::probabilities(const GatesetModel& model) const {
  if (needs_cz_ && !model.cz) throw ModelError("dataset has two-qubit circuits but the model has no CZ");
  const CircuitSimulator sim(model);
  std::vector<double> p(circuits_.size());
  for (std::size_t i = 0; i < circuits_.size(); ++i) p[i] = sim.probability(circuits_[i]);
  return p;
}

double LikelihoodProblem::log_likelihood(const GatesetModel& model) const {
  const auto p = probabilities(model);
  std::vector<double> logp(p.size()), log1mp(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = std::clamp(p[i], kLikelihoodProbabilityFloor, 1.0 - kLikelihoodProbabilityFloor);
    logp[i] = std::log(q);
    log1mp[i] = std::log1p(-q);
  }
  return kernels::active().binomial_loglik(zeros_.data(), shots_.data(), logp.data(), log1mp.data(), p.size());
}

double log_likelihood(const GatesetModel& model, const Dataset& d) {
  return LikelihoodProblem(d).log_likelihood(model);
}

MleResult maximize_likelihood(const GatesetModel& init, const LikelihoodProblem& problem,
                              const NelderMeadOptions& opts) {
  std::vector<double> x0, step, lower, upper;
  for (Param p : kAllParams) {
    const auto b = estimation_bounds(p);
    const double v = get_param(init, p);
    if (v < b.lower || v > b.upper) {
      throw std::invalid_argument("initial model outside the estimation bounds for " + std::string(param_name(p)));
    }
    x0.push_back(v);
    lower.push_back(b.lower);
    upper.push_back(b.upper);
    const bool angle = p == Param::Epsilon || p == Param::Theta;
    step.push_back(angle ? 0.02 : std::max(0.01, 0.2 * std::fabs(v)));
  }

  auto with = [&](std::span<const double> x) {
    GatesetModel m = init;
    for (std::size_t i = 0; i < kAllParams.size(); ++i) set_param(m, kAllParams[i], x[i]);
    return m;
  };
  const Objective f = [&](std::span<const double> x) {
    try {
      return -problem.log_likelihood(with(x));
    } catch (const ModelError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  MleResult out;
  out.initial_log_likelihood = problem.log_likelihood(init);
  const auto nm = minimize_nelder_mead(f, x0, step, lower, upper, opts);
  out.evaluations = nm.evaluations;
  out.converged = nm.converged;
  if (-nm.value > out.initial_log_likelihood) {
    out.model = with(nm.x);
    out.log_likelihood = -nm.value;
  } else {
    out.model = init;
    out.log_likelihood = out.initial_log_likelihood;
  }
  for (Param p : kAllParams) {
    const auto b = estimation_bounds(p);
    const double v = get_param(out.model, p);
    if (v - b.lower < 1e-9 || b.upper - v < 1e-9) out.at_bound.push_back(p);
  }
  return out;
}

MleResult maximize_likelihood(const GatesetModel& init, const Dataset& d, const NelderMeadOptions& opts) {
  return maximize_likelihood(init, LikelihoodProblem(d), opts);
}

double profile_threshold_drop(double pstar) {
  if (!(pstar > 0.0 && pstar < 0.5)) throw std::invalid_argument("p* must lie in (0, 0.5)");
  return std::log(1.0 / pstar - 1.0);
}

LikelihoodProfile likelihood_profile(const GatesetModel& model, const LikelihoodProblem& problem, Param param,
                                     std::vector<double> grid, double pstar) {
  if (grid.size() < 2) throw std::invalid_argument("profile grid needs at least two points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("profile grid must be strictly increasing");
  }
  const double center = get_param(model, param);
  if (center < grid.front() || center > grid.back()) {
    throw std::invalid_argument("profile grid does not span the model value of " + std::string(param_name(param)));
  }

  LikelihoodProfile out;
  out.param = param;
  out.pstar = pstar;
  out.center = center;
  out.grid = std::move(grid);
  out.log_likelihood.reserve(out.grid.size());
  for (double v : out.grid) {
    GatesetModel m = model;
    set_param(m, param, v);
    out.log_likelihood.push_back(problem.log_likelihood(m));
  }
  const auto best = std::max_element(out.log_likelihood.begin(), out.log_likelihood.end());
  const std::size_t imax = std::size_t(best - out.log_likelihood.begin());
  out.max_log_likelihood = std::max(*best, problem.log_likelihood(model));
  out.threshold = out.max_log_likelihood - profile_threshold_drop(pstar);

  const auto& g = out.grid;
  const auto& ll = out.log_likelihood;
  auto crossing = [&](std::size_t in, std::size_t outside) {
    const double t = (ll[in] - out.threshold) / (ll[in] - ll[outside]);
    return g[in] + t * (g[outside] - g[in]);
  };
  if (ll[imax] < out.threshold) {
    // Only possible when the peak falls between grid points; keep the bracket.
    out.lower = g[imax == 0 ? 0 : imax - 1];
    out.upper = g[std::min(imax + 1, g.size() - 1)];
    return out;
  }
  std::size_t lo = imax;
  while (lo > 0 && ll[lo - 1] >= out.threshold) --lo;
  std::size_t hi = imax;
  while (hi + 1 < g.size() && ll[hi + 1] >= out.threshold) ++hi;
  out.lower_truncated = lo == 0;
  out.upper_truncated = hi + 1 == g.size();
  out.lower = out.lower_truncated ? g.front() : crossing(lo, lo - 1);
  out.upper = out.upper_truncated ? g.back() : crossing(hi, hi + 1);
  return out;
}

LikelihoodProfile likelihood_profile(const GatesetModel& model, const Dataset& d, Param param,
                                     std::vector<double> grid, double pstar) {
  return likelihood_profile(model, LikelihoodProblem(d), param, std::move(grid), pstar);
}

double slice_standard_error(const GatesetModel& model, const LikelihoodProblem& problem, Param param) {
  const auto b = estimation_bounds(param);
  const double v = get_param(model, param);
  const double h = std::max(1e-4, 1e-3 * std::fabs(v));
  // Three points inside the box; shift the stencil away from a bound.
  double x0 = v - h, x1 = v, x2 = v + h;
  if (x0 < b.lower) { x0 = v; x1 = v + h; x2 = v + 2 * h; }
  if (x2 > b.upper) { x0 = v - 2 * h; x1 = v - h; x2 = v; }
  auto at = [&](double x) {
    GatesetModel m = model;
    set_param(m, param, x);
    return problem.log_likelihood(m);
  };
  const double f0 = at(x0), f1 = at(x1), f2 = at(x2);
  const double second = 2.0 * ((f2 - f1) / (x2 - x1) - (f1 - f0) / (x1 - x0)) / (x2 - x0);
  if (!(second < 0.0)) return 0.0;
  return 1.0 / std::sqrt(-second);
}

std::vector<double> default_profile_grid(Param param, double center, double se, int points) {
  if (points < 2) throw std::invalid_argument("profile grid needs at least two points");
  const auto b = estimation_bounds(param);
  const double w = std::max(5.0 * se, 0.01);
  const double lo = std::max(b.lower, center - w);
  const double hi = std::min(b.upper, center + w);
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[std::size_t(i)] = lo + (hi - lo) * i / (points - 1);
  g.back() = hi;
  return g;
}

nlohmann::json profile_to_json(const LikelihoodProfile& p) {
  return {
      {"param", param_name(p.param)},
      {"pstar", p.pstar},
      {"center", p.center},
      {"grid", p.grid},
      {"log_likelihood", p.log_likelihood},
      {"max_log_likelihood", p.max_log_likelihood},
      {"threshold", p.threshold},
      {"interval", {{"lower", p.lower}, {"upper", p.upper}}},
      {"truncated", {{"lower", p.lower_truncated}, {"upper", p.upper_truncated}}},
  };
}

std::string profile_to_csv(const LikelihoodProfile& p) {
  std::ostringstream os;
  os.precision(17);
  os << "param_value,log_likelihood,above_threshold\n";
  for (std::size_t i = 0; i < p.grid.size(); ++i)
    os << p.grid[i] << ',' << p.log_likelihood[i] << ',' << (p.above_threshold(i) ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace gscal
