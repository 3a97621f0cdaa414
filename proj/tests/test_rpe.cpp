#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "gscal/rpe.hpp"

using namespace gscal;
using std::numbers::pi;

namespace {

std::vector<QuadratureSample> exact(double x, int kmax, double amplitude = 1.0) {
  std::vector<QuadratureSample> s;
  for (int k = 0; k <= kmax; ++k) {
    const int depth = 1 << k;
    s.push_back({depth, amplitude * std::cos(depth * x), amplitude * std::sin(depth * x), 1000});
  }
  return s;
}

}  // namespace

TEST_CASE("exact quadratures give the angle") {
  for (double x : {0.0, 0.3, -1.2, 2.9, pi / 2 * 1.06}) {
    const auto e = robust_phase_estimate(exact(x, 5));
    CHECK(e.angle == doctest::Approx(wrap_angle(x)).epsilon(1e-12));
    CHECK(e.half_width == doctest::Approx(pi / 64));
    CHECK_FALSE(e.aborted);
  }
}

TEST_CASE("bounded errors in the quadratures stay inside the final half-width") {
  const double x = 1.234;
  auto s = exact(x, 6);
  for (std::size_t i = 0; i < s.size(); ++i) {
    // Rotate each quadrature pair by a small angle error.
    const double err = (i % 2 ? 0.25 : -0.25);
    const double a = s[i].depth * x + err;
    s[i].cos_value = std::cos(a);
    s[i].sin_value = std::sin(a);
  }
  const auto e = robust_phase_estimate(s);
  CHECK(std::fabs(e.angle - x) <= e.half_width);
}

TEST_CASE("small amplitude aborts at the last consistent depth") {
  auto s = exact(0.4, 4);
  s[3].cos_value *= 0.05;
  s[3].sin_value *= 0.05;
  const auto e = robust_phase_estimate(s);
  CHECK(e.aborted);
  CHECK(e.last_depth == 4);
  CHECK(e.half_width == doctest::Approx(pi / 8));
  CHECK(std::fabs(e.angle - 0.4) < e.half_width);
}

TEST_CASE("correction callback sees no estimate first, then the running one") {
  std::vector<bool> seen;
  const QuadratureCorrection corr = [&](const QuadratureSample& s, std::optional<double> cur) {
    seen.push_back(cur.has_value());
    return std::make_pair(s.cos_value, s.sin_value);
  };
  robust_phase_estimate(exact(0.5, 2), {}, corr);
  REQUIRE_FALSE(seen.empty());
  CHECK_FALSE(seen.front());
  CHECK(seen.back());
}

TEST_CASE("bad depth sequences") {
  std::vector<QuadratureSample> s = {{2, 1, 0, 1}, {3, 1, 0, 1}};
  CHECK_THROWS_AS(robust_phase_estimate(s), std::invalid_argument);
  CHECK_THROWS_AS(robust_phase_estimate(std::vector<QuadratureSample>{}), std::invalid_argument);
  CHECK(wrap_angle(3 * pi) == doctest::Approx(pi));
  CHECK(wrap_angle(-pi) == doctest::Approx(pi));
}
