#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gscal/circuit.hpp"
#include "gscal/errors.hpp"
#include "oracle.hpp"

using namespace gscal;
using std::numbers::pi;

namespace {

Circuit one_qubit(std::vector<Gate> gates) { return Circuit{1, std::move(gates), {}}; }

GatesetModel random_model(std::mt19937_64& rng, bool with_cz) {
  std::uniform_real_distribution<double> small(0.0, 0.05), angle(-0.2, 0.2);
  GatesetModel m{angle(rng), angle(rng), small(rng), small(rng), small(rng), small(rng), std::nullopt};
  if (with_cz) m.cz = CzParams{angle(rng), angle(rng), small(rng), small(rng), small(rng)};
  return m;
}

}  // namespace

TEST_CASE("compiled preparations and measurements give the intended basis on ideal gates") {
  const GatesetModel ideal;
  // Every (prep, measurement) pair against the ideal-projection oracle.
  for (auto prep : {Gate::prep_z(+1), Gate::prep_z(-1), Gate::prep_x(+1), Gate::prep_x(-1)}) {
    for (auto meas : {Gate::meas_z(), Gate::meas_x()}) {
      const Circuit c = one_qubit({prep, meas});
      const double want = oracle::probability(ideal, c);
      CHECK(circuit_probability(ideal, c) == doctest::Approx(want).epsilon(1e-12));
      CHECK((want < 1e-12 || want > 1 - 1e-12 || std::fabs(want - 0.5) < 1e-12));
    }
  }
  CHECK(circuit_probability(ideal, one_qubit({Gate::prep_x(+1), Gate::meas_x()})) == doctest::Approx(1.0));
  CHECK(circuit_probability(ideal, one_qubit({Gate::prep_x(-1), Gate::meas_x()})) == doctest::Approx(0.0));
  CHECK(circuit_probability(ideal, one_qubit({Gate::prep_z(-1), Gate::meas_z()})) == doctest::Approx(0.0));
}

TEST_CASE("compiled Hadamard and X act as H and X up to phase") {
  const GatesetModel ideal;
  std::vector<Gate> g = {Gate::prep_z(+1)};
  append_hadamard(g, 0);
  g.push_back(Gate::meas_x());
  CHECK(circuit_probability(ideal, one_qubit(g)) == doctest::Approx(1.0));
  g = {Gate::prep_x(+1)};
  append_hadamard(g, 0);
  g.push_back(Gate::meas_z());
  CHECK(circuit_probability(ideal, one_qubit(g)) == doctest::Approx(1.0));
  g = {Gate::prep_z(+1)};
  append_x180(g, 0);
  g.push_back(Gate::meas_z());
  CHECK(circuit_probability(ideal, one_qubit(g)) == doctest::Approx(0.0));
}

TEST_CASE("compilation output uses only the native gates") {
  const Circuit c = compile(one_qubit({Gate::prep_x(-1), Gate::x90(), Gate::meas_x()}));
  for (const auto& g : c.gates) {
    CHECK(g.kind != GateKind::PrepX);
    CHECK(g.kind != GateKind::MeasX);
    if (g.kind == GateKind::PrepZ) CHECK(g.sign == +1);
  }
  CHECK(compile(c) == c);
}

TEST_CASE("PTM simulator agrees with the density-matrix oracle on random noisy circuits") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> pick(0, 2), len(0, 12);
  std::uniform_real_distribution<double> phi(-pi, pi);
  for (int rep = 0; rep < 60; ++rep) {
    const bool two = rep % 2 == 1;
    const auto model = random_model(rng, two);
    Circuit c{two ? 2 : 1, {}, {}};
    const int nq = c.qubit_count;
    for (int q = 0; q < nq; ++q) c.gates.push_back(Gate::prep_z(+1, q));
    for (int i = 0, n = len(rng); i < n; ++i) {
      const int q = nq == 1 ? 0 : i % 2;
      switch (pick(rng)) {
        case 0: c.gates.push_back(Gate::x90(q)); break;
        case 1: c.gates.push_back(Gate::zrot(phi(rng), q)); break;
        default: c.gates.push_back(two ? Gate::cz() : Gate::x90(q)); break;
      }
    }
    for (int q = 0; q < nq; ++q) c.gates.push_back(Gate::meas_z(q));
    if (two && rep % 4 == 1) c.observed = {1};
    CAPTURE(rep);
    CHECK(circuit_probability(model, c) == doctest::Approx(oracle::probability(model, c)).epsilon(1e-12));
    if (two) {
      const auto joint = joint_outcome_probabilities(model, c);
      double total = 0.0;
      for (double p : joint) total += p;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      if (c.observed.empty()) CHECK(joint[0] == doctest::Approx(circuit_probability(model, c)).epsilon(1e-12));
    }
  }
}

TEST_CASE("decoherence echo with m = 1 matches the closed form") {
  GatesetModel m;
  m.p_x = 0.002;
  m.p_z = 0.02;
  const Circuit c = one_qubit({Gate::prep_z(+1), Gate::x90(), Gate::zrot(pi), Gate::x90(), Gate::zrot(pi),
                               Gate::meas_z()});
  CHECK(circuit_probability(m, c) == doctest::Approx(0.988022).epsilon(1e-12));
  GatesetModel r;
  r.r_01 = 0.08;
  CHECK(circuit_probability(r, c) == doctest::Approx(0.92).epsilon(1e-12));
}

TEST_CASE("trivial circuits") {
  CHECK(circuit_probability(GatesetModel{}, one_qubit({Gate::prep_z(), Gate::meas_z()})) == 1.0);
}

TEST_CASE("malformed circuits are rejected") {
  const GatesetModel m;
  CHECK_THROWS_AS(circuit_probability(m, one_qubit({Gate::x90(), Gate::meas_z()})), CircuitError);
  CHECK_THROWS_AS(circuit_probability(m, one_qubit({Gate::prep_z(), Gate::x90()})), CircuitError);
  CHECK_THROWS_AS(circuit_probability(m, one_qubit({Gate::prep_z(), Gate::meas_z(), Gate::x90()})), CircuitError);
  CHECK_THROWS_AS(circuit_probability(m, one_qubit({Gate::prep_z(), Gate::cz(), Gate::meas_z()})), CircuitError);
  CHECK_THROWS_AS(circuit_probability(m, one_qubit({Gate::prep_z(), Gate::x90(1), Gate::meas_z()})), CircuitError);
  Circuit two{2, {Gate::prep_z(+1, 0), Gate::prep_z(+1, 1), Gate::cz(), Gate::meas_z(0), Gate::meas_z(1)}, {}};
  CHECK_THROWS_AS(circuit_probability(m, two), ModelError);
}
