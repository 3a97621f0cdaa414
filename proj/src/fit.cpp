#include "gscal/fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>

#include "gscal/errors.hpp"

namespace gscal {
namespace {

// Faster decays than rate^min_depth = e^-10 are not resolvable from the data.
double min_rate(std::span<const DecayPoint> pts) {
  double d = pts.front().depth;
  for (const auto& pt : pts) d = std::min(d, pt.depth);
  return std::max(1e-9, std::exp(-10.0 / d));
}

struct Params {
  double a;
  double rate;
  double b;
};

double weighted_cost(std::span<const DecayPoint> pts, const Params& p) {
  double c = 0.0;
  for (const auto& pt : pts) {
    const double r = (pt.value - (p.a * std::pow(p.rate, pt.depth) + p.b)) / pt.sigma;
    c += r * r;
  }
  return c;
}

// With the rate fixed the model is linear in (A, b).
Params solve_linear(std::span<const DecayPoint> pts, double rate, bool free_b) {
  double s00 = 0, s01 = 0, s11 = 0, t0 = 0, t1 = 0;
  for (const auto& pt : pts) {
    const double w = 1.0 / (pt.sigma * pt.sigma);
    const double f = std::pow(rate, pt.depth);
    s00 += w * f * f;
    s01 += w * f;
    s11 += w;
    t0 += w * f * pt.value;
    t1 += w * pt.value;
  }
  if (!free_b) return {s00 > 0 ? t0 / s00 : 0.0, rate, 0.0};
  const double det = s00 * s11 - s01 * s01;
  if (std::fabs(det) < 1e-300) return {0.0, rate, t1 / s11};
  return {(t0 * s11 - s01 * t1) / det, rate, (s00 * t1 - s01 * t0) / det};
}

std::optional<Params> log_linear_start(std::span<const DecayPoint> pts, bool free_b) {
  auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                      [](const auto& x, const auto& y) { return x.value < y.value; });
  const double span = hi->value - lo->value;
  // Decreasing data sits above the offset, increasing data below it.
  const auto first = std::min_element(pts.begin(), pts.end(),
                                      [](const auto& x, const auto& y) { return x.depth < y.depth; });
  const auto last = std::max_element(pts.begin(), pts.end(),
                                     [](const auto& x, const auto& y) { return x.depth < y.depth; });
  const double sign = first->value >= last->value ? 1.0 : -1.0;
  const double b0 = !free_b ? 0.0 : sign > 0 ? lo->value - 0.05 * span : hi->value + 0.05 * span;
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& pt : pts) {
    const double y = sign * (pt.value - b0);
    if (y <= 0) continue;
    const double w = 1.0;
    const double ly = std::log(y);
    sw += w;
    sx += w * pt.depth;
    sy += w * ly;
    sxx += w * pt.depth * pt.depth;
    sxy += w * pt.depth * ly;
  }
  const double det = sw * sxx - sx * sx;
  if (sw < 2 || std::fabs(det) < 1e-300) return std::nullopt;
  const double slope = (sw * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / sw;
  const double rate = std::clamp(std::exp(slope), min_rate(pts), 1.0);
  return Params{sign * std::exp(intercept), rate, b0};
}

Params scan_start(std::span<const DecayPoint> pts, bool free_b) {
  double max_depth = 1.0;
  for (const auto& pt : pts) max_depth = std::max(max_depth, pt.depth);
  // Grid over decay lengths from 0.1 to 10^4 times the largest depth; position t
  // in [0, 400] maps to a rate.
  auto rate_at = [&](double t) { return std::exp(-1.0 / (max_depth * std::pow(10.0, -1.0 + 5.0 * t / 400.0))); };
  auto cost_at = [&](double t) { return weighted_cost(pts, solve_linear(pts, rate_at(t), free_b)); };
  int best_i = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 400; ++i) {
    const double c = cost_at(i);
    if (c < best_cost) {
      best_cost = c;
      best_i = i;
    }
  }
  // Golden-section refinement of the projected cost between the neighbours.
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = std::max(0, best_i - 1), hi = std::min(400, best_i + 1);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = cost_at(x1), f2 = cost_at(x2);
  for (int it = 0; it < 120 && hi - lo > 1e-13; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = cost_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = cost_at(x2);
    }
  }
  const double t = f1 < f2 ? x1 : x2;
  const Params refined = solve_linear(pts, rate_at(t), free_b);
  return weighted_cost(pts, refined) < best_cost ? refined : solve_linear(pts, rate_at(best_i), free_b);
}

}  // namespace

double FitResult::predict(double depth) const { return amplitude * std::pow(rate, depth) + offset; }

FitResult fit_exponential(std::span<const DecayPoint> points, const FitOptions& opts) {
  std::set<double> depths;
  double mean_se = 0.0;
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -vmin;
  for (const auto& pt : points) {
    if (!(pt.depth > 0)) throw std::invalid_argument("fit_exponential: depths must be positive");
    if (!(pt.sigma > 0)) throw std::invalid_argument("fit_exponential: sigmas must be positive");
    depths.insert(pt.depth);
    mean_se += pt.sigma;
    vmin = std::min(vmin, pt.value);
    vmax = std::max(vmax, pt.value);
  }
  if (depths.size() < 4) throw std::invalid_argument("fit_exponential: need at least 4 distinct depths");
  mean_se /= double(points.size());
  if (vmax - vmin < opts.min_range_in_se * mean_se) {
    throw IdentifiabilityError("decay signal is flat within statistical error; rate is not identifiable");
  }

  const bool free_b = opts.free_offset;
  const double rate_floor = min_rate(points);
  Params p = scan_start(points, free_b);
  if (auto ll = log_linear_start(points, free_b)) {
    if (weighted_cost(points, *ll) < weighted_cost(points, p)) p = *ll;
  }

  const std::size_t n = points.size();
  double m0 = points.front().depth;
  for (const auto& pt : points) m0 = std::min(m0, pt.depth);
  Eigen::MatrixXd jac(n, 3);
  Eigen::VectorXd res(n);
  // The steps work in c = A * rate^m0, the amplitude at the shortest depth,
  // which the data pin down far better than A itself when the rate is small.
  // With `natural` set the columns are for (A, rate, b) instead.
  auto linearize = [&](const Params& q, bool natural = false) {
    const double c = q.a * std::pow(q.rate, m0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& pt = points[i];
      const double w = 1.0 / pt.sigma;
      const double f = std::pow(q.rate, pt.depth);
      if (natural) {
        jac(Eigen::Index(i), 0) = w * f;
        jac(Eigen::Index(i), 1) = w * q.a * pt.depth * std::pow(q.rate, pt.depth - 1.0);
      } else {
        const double e = pt.depth - m0;
        jac(Eigen::Index(i), 0) = w * std::pow(q.rate, e);
        jac(Eigen::Index(i), 1) = e > 0 ? w * c * e * std::pow(q.rate, e - 1.0) : 0.0;
      }
      jac(Eigen::Index(i), 2) = free_b ? w : 0.0;
      res(Eigen::Index(i)) = w * (pt.value - (q.a * f + q.b));
    }
  };

  double cost = weighted_cost(points, p);
  double lambda = 1e-6;
  int iter = 0;
  bool converged = false;
  for (; iter < opts.max_iterations; ++iter) {
    linearize(p);
    // Near rate = 1 the three columns are close to collinear; solve the damped
    // problem as an augmented least-squares system instead of forming J^T J.
    const Eigen::Vector3d col_norm = jac.colwise().norm().transpose();
    bool stepped = false;
    for (int attempt = 0; attempt < 30; ++attempt) {
      Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(Eigen::Index(n) + 3, 3);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(Eigen::Index(n) + 3);
      aug.topRows(Eigen::Index(n)) = jac;
      rhs.head(Eigen::Index(n)) = res;
      for (int k = 0; k < 3; ++k) aug(Eigen::Index(n) + k, k) = std::sqrt(lambda) * std::max(col_norm(k), 1e-150);
      const Eigen::Vector3d delta = aug.colPivHouseholderQr().solve(rhs);
      const double raw_rate = p.rate + delta(1);
      const double c = p.a * std::pow(p.rate, m0) + delta(0);
      const double rate = std::clamp(raw_rate, rate_floor, 1.0);
      Params trial{c / std::pow(rate, m0), rate, p.b + delta(2)};
      // On a rate bound, A and b are simply the linear solution there.
      if (trial.rate != raw_rate) trial = solve_linear(points, trial.rate, free_b);
      const double trial_cost = weighted_cost(points, trial);
      if (trial_cost <= cost) {
        // c and b are measured relative to their size; the rate is O(1).
        const double c_old = p.a * std::pow(p.rate, m0), c_new = trial.a * std::pow(trial.rate, m0);
        const double step = std::max({std::fabs(c_new - c_old) / std::max(1.0, std::fabs(c_old)),
                                      std::fabs(trial.rate - p.rate),
                                      std::fabs(trial.b - p.b) / std::max(1.0, std::fabs(p.b))});
        p = trial;
        cost = trial_cost;
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        if (step < opts.step_tolerance) converged = true;
        break;
      }
      lambda *= 10.0;
    }
    // No downhill step at any damping: already at the minimum to precision.
    if (!stepped || converged) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NonConvergenceError("exponential fit did not converge within the iteration cap");

  FitResult out;
  out.amplitude = p.a;
  out.rate = p.rate;
  out.offset = p.b;
  out.iterations = iter + 1;
  out.chi2 = cost;
  for (const auto& pt : points) {
    const double r = pt.value - (p.a * std::pow(p.rate, pt.depth) + p.b);
    out.rss += r * r;
  }
  linearize(p, true);
  Eigen::Matrix3d jtj = jac.transpose() * jac;
  if (!free_b) jtj(2, 2) = 1.0;
  Eigen::FullPivLU<Eigen::Matrix3d> lu(jtj);
  if (lu.isInvertible()) {
    const Eigen::Matrix3d cov = lu.inverse();
    out.amplitude_se = std::sqrt(std::max(cov(0, 0), 0.0));
    out.rate_se = std::sqrt(std::max(cov(1, 1), 0.0));
    out.offset_se = free_b ? std::sqrt(std::max(cov(2, 2), 0.0)) : 0.0;
  } else {
    out.amplitude_se = out.rate_se = out.offset_se = std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace gscal
