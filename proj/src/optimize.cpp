#include "gscal/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gscal {
namespace {

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;
};

void project(std::vector<double>& p, const std::vector<double>& lo, const std::vector<double>& hi) {
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(p[i], lo[i], hi[i]);
}

}  // namespace

NelderMeadResult minimize_nelder_mead(const Objective& f, std::vector<double> x0, std::vector<double> step,
                                      const std::vector<double>& lower, const std::vector<double>& upper,
                                      const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  if (n == 0 || step.size() != n || lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("minimize_nelder_mead: dimension mismatch");
  }
  project(x0, lower, upper);

  int evals = 0;
  auto eval = [&](std::vector<double>& p) {
    project(p, lower, upper);
    ++evals;
    const double v = f(p);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  NelderMeadResult best{x0, eval(x0), 0, false};

  for (int run = 0; run <= opts.restarts; ++run) {
    Simplex s;
    s.x.push_back(best.x);
    s.f.push_back(best.value);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> v = best.x;
      double h = step[i];
      if (v[i] + h > upper[i]) h = -h;
      v[i] += h;
      s.f.push_back(eval(v));
      s.x.push_back(std::move(v));
    }

    std::vector<std::size_t> order(n + 1);
    bool converged = false;
    while (evals < opts.max_evaluations) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
      const std::size_t ib = order.front(), iw = order.back(), isw = order[n - 1];

      double xspread = 0.0;
      for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = 0; i < n; ++i) xspread = std::max(xspread, std::fabs(s.x[j][i] - s.x[ib][i]));
      if (std::fabs(s.f[iw] - s.f[ib]) <= opts.f_tolerance && xspread <= opts.x_tolerance) {
        converged = true;
        break;
      }

      std::vector<double> centroid(n, 0.0);
      for (std::size_t j = 0; j <= n; ++j) {
        if (j == iw) continue;
        for (std::size_t i = 0; i < n; ++i) centroid[i] += s.x[j][i] / double(n);
      }
      auto along = [&](double t) {
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (s.x[iw][i] - centroid[i]);
        return p;
      };

      std::vector<double> xr = along(-1.0);
      const double fr = eval(xr);
      if (fr < s.f[ib]) {
        std::vector<double> xe = along(-2.0);
        const double fe = eval(xe);
        if (fe < fr) {
          s.x[iw] = std::move(xe);
          s.f[iw] = fe;
        } else {
          s.x[iw] = std::move(xr);
          s.f[iw] = fr;
        }
        continue;
      }
      if (fr < s.f[isw]) {
        s.x[iw] = std::move(xr);
        s.f[iw] = fr;
        continue;
      }
      const bool outside = fr < s.f[iw];
      std::vector<double> xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : s.f[iw])) {
        s.x[iw] = std::move(xc);
        s.f[iw] = fc;
        continue;
      }
      // Shrink toward the best vertex.
      for (std::size_t j = 0; j <= n; ++j) {
        if (j == ib) continue;
        for (std::size_t i = 0; i < n; ++i) s.x[j][i] = s.x[ib][i] + 0.5 * (s.x[j][i] - s.x[ib][i]);
        s.f[j] = eval(s.x[j]);
      }
    }

    const auto ib = std::size_t(std::min_element(s.f.begin(), s.f.end()) - s.f.begin());
    if (s.f[ib] <= best.value) {
      best.x = s.x[ib];
      best.value = s.f[ib];
    }
    best.converged = converged;
    if (evals >= opts.max_evaluations) break;
    // Restart steps shrink with the problem scale already found.
    for (std::size_t i = 0; i < n; ++i) step[i] *= 0.5;
  }
  best.evaluations = evals;
  return best;
}

}  // namespace gscal
