#include "gscal/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gscal/errors.hpp"
#include "gscal/kernels.hpp"

namespace gscal {
namespace {

constexpr double kPi = std::numbers::pi;

void rotate_pair(double& x, double& y, double c, double s) {
  const double nx = c * x - s * y;
  const double ny = s * x + c * y;
  x = nx;
  y = ny;
}

void apply_zrot(std::vector<double>& v, int qubit_count, int q, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  if (qubit_count == 1) {
    rotate_pair(v[1], v[2], c, s);
    return;
  }
  if (q == 0) {
    for (std::size_t b = 0; b < 4; ++b) rotate_pair(v[4 + b], v[8 + b], c, s);
  } else {
    for (std::size_t a = 0; a < 4; ++a) rotate_pair(v[4 * a + 1], v[4 * a + 2], c, s);
  }
}

}  // namespace

void Circuit::validate() const {
  if (qubit_count != 1 && qubit_count != 2) throw CircuitError("circuits act on 1 or 2 qubits");
  const std::size_t q = std::size_t(qubit_count);
  if (gates.size() < 2 * q) throw CircuitError("circuit needs a prep and a measurement per qubit");
  std::vector<bool> prepped(q, false), measured(q, false);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    if (g.qubit < 0 || g.qubit >= qubit_count) throw CircuitError("gate qubit index out of range");
    const bool head = i < q;
    const bool tail = i >= gates.size() - q;
    if (g.is_prep()) {
      if (!head) throw CircuitError("preparation must come first");
      if (prepped[g.qubit]) throw CircuitError("qubit prepared twice");
      if (g.sign != 1 && g.sign != -1) throw CircuitError("preparation sign must be +1 or -1");
      prepped[g.qubit] = true;
    } else if (g.is_meas()) {
      if (!tail) throw CircuitError("measurement must come last");
      if (measured[g.qubit]) throw CircuitError("qubit measured twice");
      measured[g.qubit] = true;
    } else {
      if (head || tail) throw CircuitError("circuit must start with preps and end with measurements");
      if (g.kind == GateKind::CZ && qubit_count != 2) throw CircuitError("CZ needs two qubits");
      if (g.kind == GateKind::Zrot && !std::isfinite(g.angle)) throw CircuitError("non-finite Zrot angle");
    }
  }
  for (int o : observed)
    if (o < 0 || o >= qubit_count) throw CircuitError("observed qubit out of range");
}

std::vector<int> Circuit::observed_qubits() const {
  if (!observed.empty()) return observed;
  std::vector<int> all(static_cast<std::size_t>(qubit_count));
  for (int i = 0; i < qubit_count; ++i) all[std::size_t(i)] = i;
  return all;
}

Circuit compile(const Circuit& c) {
  c.validate();
  const std::size_t q = std::size_t(c.qubit_count);
  Circuit out;
  out.qubit_count = c.qubit_count;
  out.observed = c.observed;
  std::vector<Gate> prep_tail;
  for (std::size_t i = 0; i < q; ++i) {
    const Gate& g = c.gates[i];
    out.gates.push_back(Gate::prep_z(+1, g.qubit));
    if (g.kind == GateKind::PrepZ && g.sign == -1) {
      prep_tail.push_back(Gate::x90(g.qubit));
      prep_tail.push_back(Gate::x90(g.qubit));
    } else if (g.kind == GateKind::PrepX) {
      prep_tail.push_back(Gate::x90(g.qubit));
      prep_tail.push_back(Gate::zrot(g.sign * kPi / 2, g.qubit));
    }
  }
  out.gates.insert(out.gates.end(), prep_tail.begin(), prep_tail.end());
  out.gates.insert(out.gates.end(), c.gates.begin() + std::ptrdiff_t(q),
                   c.gates.end() - std::ptrdiff_t(q));
  std::vector<Gate> meas;
  for (std::size_t i = c.gates.size() - q; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    if (g.kind == GateKind::MeasX) {
      out.gates.push_back(Gate::zrot(kPi / 2, g.qubit));
      out.gates.push_back(Gate::x90(g.qubit));
    }
    meas.push_back(Gate::meas_z(g.qubit));
  }
  out.gates.insert(out.gates.end(), meas.begin(), meas.end());
  return out;
}

void append_hadamard(std::vector<Gate>& gates, int q) {
  gates.push_back(Gate::zrot(kPi / 2, q));
  gates.push_back(Gate::x90(q));
  gates.push_back(Gate::zrot(kPi / 2, q));
}

void append_x180(std::vector<Gate>& gates, int q) {
  gates.push_back(Gate::x90(q));
  gates.push_back(Gate::x90(q));
}

CircuitSimulator::CircuitSimulator(const GatesetModel& model)
    : model_(model),
      x90_(x90_ptm(model)),
      x90_q0_(kron(x90_, PauliTransferMatrix::identity(1))),
      x90_q1_(kron(PauliTransferMatrix::identity(1), x90_)),
      povm_(readout_povm(model)) {
  if (model.cz) cz_ = cz_ptm(model);
}

void CircuitSimulator::evolve(const Circuit& compiled, std::vector<double>& state) const {
  const int nq = compiled.qubit_count;
  const PauliVector ground = ground_state(nq);
  state.assign(ground.coeffs().begin(), ground.coeffs().end());
  std::vector<double> scratch(state.size());
  auto apply = [&](const PauliTransferMatrix& m) {
    m.apply_into(state.data(), scratch.data());
    state.swap(scratch);
  };
  for (const Gate& g : compiled.gates) {
    switch (g.kind) {
      case GateKind::X90:
        if (nq == 1) {
          apply(x90_);
        } else {
          apply(g.qubit == 0 ? x90_q0_ : x90_q1_);
        }
        break;
      case GateKind::Zrot:
        apply_zrot(state, nq, g.qubit, g.angle);
        break;
      case GateKind::CZ:
        if (!cz_) throw ModelError("circuit uses CZ but the model has no CZ parameters");
        apply(*cz_);
        break;
      case GateKind::PrepZ:
      case GateKind::MeasZ:
        if (g.kind == GateKind::PrepZ && g.sign != 1) throw CircuitError("circuit is not compiled");
        break;
      case GateKind::PrepX:
      case GateKind::MeasX:
        throw CircuitError("circuit is not compiled");
    }
  }
}

double CircuitSimulator::probability(const Circuit& compiled) const {
  std::vector<double> state;
  evolve(compiled, state);
  const int nq = compiled.qubit_count;
  std::vector<bool> obs(std::size_t(nq), false);
  for (int q : compiled.observed_qubits()) obs[std::size_t(q)] = true;
  const PauliVector id = identity_effect(1);
  PauliVector effect = obs[0] ? povm_.effect_zero : id;
  if (nq == 2) effect = kron(effect, obs[1] ? povm_.effect_zero : id);
  return clamp_probability(kernels::active().dot(effect.data(), state.data(), state.size()));
}

std::vector<double> CircuitSimulator::joint_probabilities(const Circuit& compiled) const {
  std::vector<double> state;
  evolve(compiled, state);
  const int nq = compiled.qubit_count;
  const std::size_t outcomes = std::size_t(1) << nq;
  std::vector<double> probs(outcomes);
  for (std::size_t idx = 0; idx < outcomes; ++idx) {
    auto eff = [&](int q) {
      const bool one = (idx >> (nq - 1 - q)) & 1U;
      return one ? povm_.effect_one : povm_.effect_zero;
    };
    const PauliVector effect = nq == 1 ? eff(0) : kron(eff(0), eff(1));
    probs[idx] = clamp_probability(kernels::active().dot(effect.data(), state.data(), state.size()));
  }
  return probs;
}

double circuit_probability(const GatesetModel& model, const Circuit& circuit) {
  return CircuitSimulator(model).probability(compile(circuit));
}

std::vector<double> joint_outcome_probabilities(const GatesetModel& model, const Circuit& circuit) {
  return CircuitSimulator(model).joint_probabilities(compile(circuit));
}

nlohmann::json gate_to_json(const Gate& g) {
  switch (g.kind) {
    case GateKind::X90:
      return {{"gate", "X90"}, {"qubit", g.qubit}};
    case GateKind::Zrot:
      return {{"gate", "Zrot"}, {"qubit", g.qubit}, {"angle", g.angle}};
    case GateKind::CZ:
      return {{"gate", "CZ"}, {"qubits", {0, 1}}};
    case GateKind::PrepZ:
      return {{"gate", "PrepZ"}, {"qubit", g.qubit}, {"sign", g.sign}};
    case GateKind::PrepX:
      return {{"gate", "PrepX"}, {"qubit", g.qubit}, {"sign", g.sign}};
    case GateKind::MeasZ:
      return {{"gate", "MeasZ"}, {"qubit", g.qubit}};
    case GateKind::MeasX:
      return {{"gate", "MeasX"}, {"qubit", g.qubit}};
  }
  return {};
}

nlohmann::json circuit_gates_to_json(const Circuit& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Gate& g : c.gates) arr.push_back(gate_to_json(g));
  return arr;
}

}  // namespace gscal
