// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "gscal/circuit.hpp"
#include "gscal/pipeline.hpp"
#include "gscal/protocols.hpp"
#include "../oracle.hpp"

using namespace gscal;

namespace {

const GatesetModel kBaseline{0.06, 0.01, 0.002, 0.02, 0.08, 0.05, std::nullopt};

std::map<int, std::pair<bool, std::string>> results;

void report(int n, bool ok, const std::string& detail) { results[n] = {ok, detail}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... v) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, v...);
  return buf;
}

std::vector<PlannedCircuit> plan_of(const std::vector<CircuitFamily>& fs, std::int64_t shots) {
  std::vector<PlannedCircuit> plan;
  for (const auto& f : fs) plan.push_back({f, shots});
  return plan;
}

// Criteria 1 and 8 share the 50-seed baseline sweep.
void baseline_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  std::map<Param, int> covered;
  int runs = 0, mle_ok = 0;
  double increase_sum = 0.0, increase_min = 1e300, increase_max = -1e300;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    RunConfig c;
    c.model = kBaseline;
    c.seed = seed;
    const auto r = characterize(simulate(c));
    if (!r.mle) continue;
    ++runs;
    for (const auto& p : r.profiles) covered[p.param] += p.contains(get_param(kBaseline, p.param)) ? 1 : 0;
    const double inc = r.mle->log_likelihood - r.mle->initial_log_likelihood;
    // initial_log_likelihood is the independent-estimate model's.
    if (r.mle->log_likelihood >= r.mle->initial_log_likelihood - 1e-9) ++mle_ok;
    increase_sum += inc;
    increase_min = std::min(increase_min, inc);
    increase_max = std::max(increase_max, inc);
  }
  const double elapsed = seconds_since(t0);
  bool ok = runs == 50 && elapsed < 120.0;
  std::string detail = fmt("%d/50 seeds characterized, %.1f s; coverage", runs, elapsed);
  for (Param p : kAllParams) {
    ok = ok && covered[p] >= 40;
    detail += fmt(" %s %d/50", std::string(param_name(p)).c_str(), covered[p]);
  }
  report(1, ok, detail + " (floor 40/50)");

  const bool exact = 1.0 / (1.0 + 19.0) == 0.05 && discrimination_error(19) == 0.05;
  report(8, exact && mle_ok == runs && runs == 50,
         fmt("discrimination_error(19) = %.17g; MLE >= independent log-likelihood on %d/%d seeds; "
             "increase mean %.2f, range [%.2f, %.2f]",
             discrimination_error(19), mle_ok, runs, increase_sum / std::max(runs, 1), increase_min, increase_max));
}

void high_statistics() {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig c;
  c.model = kBaseline;
  c.model.theta = 0.0;
  c.shots = {100000, 100000, 100000, 1};
  c.seed = 2024;
  const auto e = independent_estimates(simulate(c));
  const double elapsed = seconds_since(t0);
  if (!e.decoherence) {
    report(2, false, "no decoherence estimate");
    return;
  }
  const double dz = e.decoherence->params.p_z - 0.02, dx = e.decoherence->params.p_x - 0.002;
  report(2, std::fabs(dz) <= 5e-4 && std::fabs(dx) <= 5e-4 && elapsed < 60.0,
         fmt("p_z - 0.02 = %+.2e, p_x - 0.002 = %+.2e (limit 5e-4), %.2f s", dz, dx, elapsed));
}

double rate(const GatesetModel& m, FamilyKind kind, const std::vector<int>& depths = {20, 40, 60, 80, 100, 120}) {
  const auto e = estimate_decoherence(expected_dataset(m, plan_of(decoherence_circuits(depths), 1000)));
  return kind == FamilyKind::DecoherenceX ? e.fit_x.rate : e.fit_z.rate;
}

double spam_shift(GatesetModel m) {
  m.r_01 = m.r_10 = 0.0;
  const double rx0 = rate(m, FamilyKind::DecoherenceX), rz0 = rate(m, FamilyKind::DecoherenceZ);
  double worst = 0.0;
  for (double r01 : {0.0, 0.08, 0.2})
    for (double r10 : {0.0, 0.08, 0.2}) {
      m.r_01 = r01;
      m.r_10 = r10;
      worst = std::max({worst, std::fabs(rate(m, FamilyKind::DecoherenceX) - rx0),
                        std::fabs(rate(m, FamilyKind::DecoherenceZ) - rz0)});
    }
  return worst;
}

void spam_robustness() {
  // Decoherence channels with exact Pauli eigenvalues; the coherent errors
  // of the full model make the signal only approximately exponential.
  const double worst = spam_shift(GatesetModel{0.0, 0.0, 0.002, 0.02, 0.0, 0.0, std::nullopt});
  const double coherent = spam_shift(kBaseline);
  report(3, worst <= 1e-8,
         fmt("max |rate - rate(r=0)| over 9 readout settings = %.2e (limit 1e-8); "
             "with eps = 0.06, theta = 0.01 also present: %.2e",
             worst, coherent));
}

void pulse_area() {
  GatesetModel m{0.0, 0.0, 0.002, 0.02, 0.0, 0.0, std::nullopt};
  auto slopes = [&](const std::vector<int>& depths, const std::vector<double>& eps, std::vector<double>& dev) {
    m.epsilon = 0.0;
    const double base = rate(m, FamilyKind::DecoherenceZ, depths);
    dev.clear();
    for (double e : eps) {
      m.epsilon = e;
      dev.push_back(std::fabs(rate(m, FamilyKind::DecoherenceZ, depths) - base));
    }
    // Least-squares slope of log dev against log eps.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const double x = std::log(eps[i]), y = std::log(dev[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  std::vector<double> dev, dev_short, dev_small;
  const double s = slopes({20, 40, 60, 80, 100, 120}, {0.02, 0.04, 0.08}, dev);
  const double s_short = slopes({2, 4, 6, 8, 10, 12}, {0.02, 0.04, 0.08}, dev_short);
  const double s_small = slopes({20, 40, 60, 80, 100, 120}, {0.001, 0.002, 0.004}, dev_small);
  m.epsilon = 0.0;
  const double x_shift = std::fabs(rate(GatesetModel{0.08, 0.0, 0.002, 0.02, 0.0, 0.0, std::nullopt},
                                        FamilyKind::DecoherenceX) - rate(m, FamilyKind::DecoherenceX));
  report(4, std::fabs(s - 2.0) <= 0.2,
         fmt("Z rate shift at eps 0.02/0.04/0.08 = %.2e/%.2e/%.2e, log-log slope %.2f (want 2 +- 0.2); "
             "m = 2..12 slope %.2f; eps 0.001..0.004 slope %.2f; X rate shift at eps 0.08 %.1e",
             dev[0], dev[1], dev[2], s, s_short, s_small, x_shift));
}

void eigenvalues() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 0.05);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    GatesetModel m;
    m.p_x = u(rng);
    m.p_z = u(rng);
    const auto x = x90_ptm(m);
    const auto z = zrot_ptm(std::numbers::pi);
    auto half = PauliTransferMatrix::identity(1);
    for (int depth = 1; depth <= 200; ++depth) {
      half = x * half;
      const auto n = z * half * z * half;
      const double fx = std::pow(1 - m.p_z, 2 * depth);
      const double fyz = std::pow((1 - m.p_x) * (1 - m.p_x - m.p_z), depth);
      const double scale[4] = {1.0, fx, fyz, fyz};
      for (std::size_t i = 1; i < 4; ++i) worst = std::max(worst, std::fabs(n(i, i) - scale[i]) / scale[i]);
    }
  }
  report(5, worst <= 1e-12, fmt("max relative error over 100 (p_x, p_z) pairs, m = 1..200: %.2e", worst));
}

void moments() {
  double worst = 0.0;
  for (int n = 1; n <= 12; ++n)
    for (int i = 0; i <= 20; ++i) {
      const double p = i * 0.05;
      const auto [mad, sq] = oracle::binomial_absdev(n, p);
      const auto m = absdev_moments(n, p);
      worst = std::max({worst, std::fabs(m.mu - mad), std::fabs(m.sigma - std::sqrt(std::max(0.0, sq - mad * mad)))});
    }
  report(6, worst <= 1e-12, fmt("max deviation from enumeration, n <= 12: %.2e", worst));
}

void chebyshev() {
  std::vector<int> depths;
  for (int m = 2; m <= 100; m += 2) depths.push_back(m);
  const auto plan = plan_of(decoherence_circuits(depths), 30);
  int rejected = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed)
    rejected += model_violation(kBaseline, simulate_dataset(kBaseline, plan, seed)).k_hat >= 4.4722 ? 1 : 0;
  report(7, rejected <= 25, fmt("k >= 4.4722 in %d/500 seeds (%zu circuits x 30 shots; limit 25)", rejected, plan.size()));
}

void cz() {
  GatesetModel m;
  m.cz = CzParams{0.03, -0.05, 0.004, 0.006, 0.002};
  auto fs = cz_phase_circuits(4);
  const auto decay = cz_decay_circuits({4, 8, 16, 32, 48, 64, 96});
  fs.insert(fs.end(), decay.begin(), decay.end());
  const auto e = cz_extract(simulate_dataset(m, plan_of(fs, 100000), 77));
  const double tol = std::numbers::pi / 32;
  const bool ok = std::fabs(e.alpha - 0.03) <= tol && std::fabs(e.beta + 0.05) <= tol &&
                  std::fabs(e.sum_iz_zi - 0.010) <= 2 * e.sum_iz_zi_se &&
                  std::fabs(e.sum_zi_zz - 0.008) <= 2 * e.sum_zi_zz_se;
  report(9, ok,
         fmt("alpha %.4f, beta %.4f (tolerance %.4f); p_IZ+p_ZI %.5f +- %.5f (true 0.010); "
             "p_ZI+p_ZZ %.5f +- %.5f (true 0.008)",
             e.alpha, e.beta, tol, e.sum_iz_zi, e.sum_iz_zi_se, e.sum_zi_zz, e.sum_zi_zz_se));
}

}  // namespace

int main() {
  baseline_sweep();
  high_statistics();
  spam_robustness();
  pulse_area();
  eigenvalues();
  moments();
  chebyshev();
  cz();
  int failures = 0;
  for (const auto& [n, r] : results) {
    std::printf("criterion %d: %s  %s\n", n, r.first ? "PASS" : "FAIL", r.second.c_str());
    failures += r.first ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failures, results.size());
  return failures;
}
