#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "gscal/circuit.hpp"
#include "gscal/errors.hpp"
#include "gscal/protocols.hpp"

using namespace gscal;
using std::numbers::pi;

namespace {

GatesetModel ideal_with_cz() {
  GatesetModel m;
  m.cz = CzParams{};
  return m;
}

// Pauli expectation of the decoherence circuit channel applied to the P
// eigenstate, read off the PTM directly: (X90^m Z180)^2.
double echo_eigenvalue(const GatesetModel& m, int pauli, int depth) {
  const auto x = x90_ptm(m);
  const auto z = zrot_ptm(pi);
  auto acc = PauliTransferMatrix::identity(1);
  for (int half = 0; half < 2; ++half) {
    for (int i = 0; i < depth; ++i) acc = x * acc;
    acc = z * acc;
  }
  return acc(std::size_t(pauli), std::size_t(pauli));
}

}  // namespace

TEST_CASE("decoherence circuit layout") {
  const auto fs = decoherence_circuits({2});
  REQUIRE(fs.size() == 4);
  const auto& zp = *std::find_if(fs.begin(), fs.end(), [](const auto& f) { return f.id == "DecoherenceZ/2/+"; });
  const std::vector<Gate> want = {Gate::prep_z(+1), Gate::x90(),      Gate::x90(),     Gate::zrot(pi),
                                  Gate::x90(),      Gate::x90(),      Gate::zrot(pi),  Gate::meas_z()};
  CHECK(zp.circuit.gates == want);
  CHECK(decoherence_circuits({20, 40, 60, 80, 100, 120}).size() == 24);
  CHECK(decoherence_circuits({}).empty());
  CHECK_THROWS_AS(decoherence_circuits({3}), std::invalid_argument);
  CHECK_THROWS_AS(decoherence_circuits({0}), std::invalid_argument);
}

TEST_CASE("echo eigenvalues match the closed forms for every depth") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 0.05);
  for (int rep = 0; rep < 20; ++rep) {
    GatesetModel m;
    m.p_x = u(rng);
    m.p_z = u(rng);
    for (int depth : {1, 2, 7, 20, 51, 120, 200}) {
      const double yz = std::pow(1 - m.p_x, depth) * std::pow(1 - m.p_x - m.p_z, depth);
      CHECK(echo_eigenvalue(m, 1, depth) == doctest::Approx(std::pow(1 - m.p_z, 2 * depth)).epsilon(1e-12));
      CHECK(echo_eigenvalue(m, 2, depth) == doctest::Approx(yz).epsilon(1e-12));
      CHECK(echo_eigenvalue(m, 3, depth) == doctest::Approx(yz).epsilon(1e-12));
    }
  }
}

TEST_CASE("phase-estimation circuits") {
  const auto fs = rpe_circuits(3);
  CHECK(fs.size() == 16);
  std::set<int> depths;
  for (const auto& f : fs) depths.insert(f.index);
  CHECK(depths == std::set<int>{1, 2, 4, 8});
  const auto k0 = rpe_circuits(0);
  const auto& cos1 = *std::find_if(k0.begin(), k0.end(), [](const auto& f) { return f.id == "RpeAmplitude/1/cos"; });
  CHECK(cos1.circuit.gates == std::vector<Gate>{Gate::prep_z(), Gate::x90(), Gate::meas_z()});
  const GatesetModel ideal;
  CHECK(circuit_probability(ideal, resolve_circuit("RpeAmplitude/2/cos").circuit) == doctest::Approx(0.0));
  CHECK(circuit_probability(ideal, resolve_circuit("RpeAmplitude/1/cos").circuit) == doctest::Approx(0.5));
}

TEST_CASE("phase-estimation quadratures read cos and sin of the accumulated angle") {
  GatesetModel m;
  m.epsilon = 0.07;
  const double phi = (1 + m.epsilon) * pi / 2;
  for (int depth : {1, 2, 4, 8}) {
    const double c = 2 * circuit_probability(m, resolve_circuit(make_circuit_id(FamilyKind::RpeAmplitude, depth, "cos")).circuit) - 1;
    const double s = 2 * circuit_probability(m, resolve_circuit(make_circuit_id(FamilyKind::RpeAmplitude, depth, "sin")).circuit) - 1;
    CHECK(c == doctest::Approx(std::cos(depth * phi)).epsilon(1e-12));
    CHECK(s == doctest::Approx(std::sin(depth * phi - (phi - pi / 2))).epsilon(1e-12));
  }
}

TEST_CASE("readout circuits") {
  const auto fs = readout_circuits();
  REQUIRE(fs.size() == 2);
  GatesetModel m;
  CHECK(circuit_probability(m, fs[0].circuit) == doctest::Approx(1.0));
  m.r_01 = 0.08;
  CHECK(circuit_probability(m, fs[0].circuit) == doctest::Approx(0.92));
  m = {};
  m.r_10 = 0.05;
  CHECK(circuit_probability(m, fs[1].circuit) == doctest::Approx(0.05));
  CHECK(fs[1].circuit.gates == std::vector<Gate>{Gate::prep_z(), Gate::x90(), Gate::x90(), Gate::meas_z()});
}

TEST_CASE("CZ phase circuits") {
  CHECK_THROWS_AS(cz_phase_circuits(0), std::invalid_argument);
  const auto fs = cz_phase_circuits(3);
  CHECK(fs.size() == 12);
  const auto ideal = ideal_with_cz();
  for (const auto& f : fs) {
    if (f.kind == FamilyKind::CzPhaseA) CHECK(circuit_probability(ideal, f.circuit) == doctest::Approx(1.0));
  }
  GatesetModel m;
  m.cz = CzParams{0.05, 0, 0, 0, 0};
  const auto a2 = resolve_circuit("CzPhaseA/2/0");
  CHECK(a2.circuit.observed == std::vector<int>{1});
  CHECK(circuit_probability(m, a2.circuit) == doctest::Approx(std::pow(std::cos(0.05), 2)).epsilon(1e-12));
  const double pb = circuit_probability(m, resolve_circuit("CzPhaseB/2/0").circuit);
  CHECK(1 - 2 * pb == doctest::Approx(std::sin(0.1)).epsilon(1e-12));
  m.cz = CzParams{0.03, -0.05, 0, 0, 0};
  for (int depth : {2, 4, 8}) {
    const double c = 2 * circuit_probability(m, resolve_circuit(make_circuit_id(FamilyKind::CzBeta, depth, "cos")).circuit) - 1;
    const double s = 1 - 2 * circuit_probability(m, resolve_circuit(make_circuit_id(FamilyKind::CzBeta, depth, "sin")).circuit);
    CHECK(c == doctest::Approx(std::cos(depth * (-0.08))).epsilon(1e-12));
    CHECK(s == doctest::Approx(std::sin(depth * (-0.08))).epsilon(1e-12));
  }
}

TEST_CASE("CZ decay circuits") {
  const auto ideal = ideal_with_cz();
  for (const auto& f : cz_decay_circuits({1, 3, 10})) {
    CHECK(circuit_probability(ideal, f.circuit) == doctest::Approx(1.0));
    CHECK(f.circuit.observed_qubits().size() == 2);
  }
  // Coherent CZ phases are echoed away in the Plus circuit.
  GatesetModel coherent;
  coherent.cz = CzParams{0.07, -0.04, 0, 0, 0};
  auto prob = [](const GatesetModel& m, FamilyKind k, int d) {
    return circuit_probability(m, resolve_circuit(make_circuit_id(k, d, "0")).circuit);
  };
  CHECK(prob(coherent, FamilyKind::CzDecayPlus, 5) == doctest::Approx(1.0));

  // Per unit depth the success decays by (1 - 2 s)^2 with s the pair sum. The
  // Bell preparation's own CZs shift the offset, so compare differences there.
  GatesetModel m;
  m.cz = CzParams{0, 0, 0.004, 0.006, 0.002};
  for (int d : {1, 4, 16}) {
    const double plus = prob(m, FamilyKind::CzDecayPlus, d);
    CHECK(plus == doctest::Approx(0.5 + 0.5 * std::pow(1 - 2 * 0.008, 2 * d)).epsilon(1e-12));
    const double b0 = prob(m, FamilyKind::CzDecayBell, d), b1 = prob(m, FamilyKind::CzDecayBell, d + 1),
                 b2 = prob(m, FamilyKind::CzDecayBell, d + 2);
    const double ratio = (b2 - b1) / (b1 - b0);
    CHECK(ratio == doctest::Approx(std::pow(1 - 2 * 0.010, 2)).epsilon(1e-12));
  }
}

TEST_CASE("every generated circuit is well formed, round trips by id, and is deterministic when ideal") {
  std::vector<CircuitFamily> all = decoherence_circuits({2, 4});
  for (const auto& more : {rpe_circuits(2), readout_circuits(), cz_phase_circuits(2), cz_decay_circuits({1, 2})})
    all.insert(all.end(), more.begin(), more.end());
  const auto ideal = ideal_with_cz();
  std::set<std::string> ids;
  for (const auto& f : all) {
    CAPTURE(f.id);
    CHECK_NOTHROW(f.circuit.validate());
    CHECK(ids.insert(f.id).second);
    const auto again = resolve_circuit(f.id);
    CHECK(again.circuit == f.circuit);
    CHECK(again.id == f.id);
    const double p = circuit_probability(ideal, f.circuit);
    const bool quadrature = f.kind == FamilyKind::RpeAmplitude || f.kind == FamilyKind::RpeAxis ||
                            f.kind == FamilyKind::CzPhaseB || (f.kind == FamilyKind::CzBeta && f.tag == "sin");
    if (!quadrature) CHECK((p < 1e-12 || p > 1 - 1e-12));
    const auto j = family_to_json(f);
    CHECK(j["id"] == f.id);
    CHECK(j["gates"].size() == f.circuit.gates.size());
  }
  CHECK_THROWS_AS(resolve_circuit("Nope/1/0"), CircuitError);
  CHECK_THROWS_AS(resolve_circuit("DecoherenceX/3/+"), CircuitError);
  CHECK_THROWS_AS(resolve_circuit("DecoherenceX/2/x"), CircuitError);
  CHECK_THROWS_AS(resolve_circuit("RpeAmplitude/3/cos"), CircuitError);
}

TEST_CASE("pulse-area error moves the echo signal only at second order") {
  auto signal = [](double eps, FamilyKind kind, int depth) {
    GatesetModel m{eps, 0.0, 0.002, 0.02, 0.0, 0.0, std::nullopt};
    double plus = 0, minus = 0;
    for (const auto& f : decoherence_circuits({depth})) {
      if (f.kind != kind) continue;
      const double p0 = circuit_probability(m, f.circuit);
      (f.id.back() == '+' ? plus : minus) = p0;
    }
    return plus - minus;
  };
  for (auto kind : {FamilyKind::DecoherenceX, FamilyKind::DecoherenceZ})
    for (int depth : {2, 4}) {
      const double s0 = signal(0.0, kind, depth);
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int n = 0;
      for (double eps = 0.01; eps < 0.1001; eps += 0.01, ++n) {
        const double x = std::log(eps), y = std::log(std::fabs(signal(eps, kind, depth) - s0));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      CAPTURE(depth);
      CHECK(std::fabs(slope - 2.0) < 0.1);
    }
}
