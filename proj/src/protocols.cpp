#include "gscal/protocols.hpp"

#include <array>
#include <charconv>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gscal/errors.hpp"

namespace gscal {
namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<std::pair<FamilyKind, std::string_view>, 11> kNames{{
    {FamilyKind::DecoherenceX, "DecoherenceX"},
    {FamilyKind::DecoherenceZ, "DecoherenceZ"},
    {FamilyKind::RpeAmplitude, "RpeAmplitude"},
    {FamilyKind::RpeAxis, "RpeAxis"},
    {FamilyKind::ReadoutZero, "ReadoutZero"},
    {FamilyKind::ReadoutPi, "ReadoutPi"},
    {FamilyKind::CzPhaseA, "CzPhaseA"},
    {FamilyKind::CzPhaseB, "CzPhaseB"},
    {FamilyKind::CzBeta, "CzBeta"},
    {FamilyKind::CzDecayBell, "CzDecayBell"},
    {FamilyKind::CzDecayPlus, "CzDecayPlus"},
}};

CircuitFamily make(FamilyKind kind, int index, std::string tag, Circuit c) {
  c.validate();
  std::string id = make_circuit_id(kind, index, tag);
  return CircuitFamily{kind, index, std::move(tag), std::move(c), std::move(id)};
}

Circuit one_qubit(Gate prep, const std::vector<Gate>& body, Gate meas) {
  Circuit c;
  c.qubit_count = 1;
  c.gates.push_back(prep);
  c.gates.insert(c.gates.end(), body.begin(), body.end());
  c.gates.push_back(meas);
  return c;
}

Circuit two_qubit(int control_sign, const std::vector<Gate>& body, std::vector<int> observed) {
  Circuit c;
  c.qubit_count = 2;
  c.gates.push_back(Gate::prep_z(control_sign, 0));
  c.gates.push_back(Gate::prep_z(+1, 1));
  c.gates.insert(c.gates.end(), body.begin(), body.end());
  c.gates.push_back(Gate::meas_z(0));
  c.gates.push_back(Gate::meas_z(1));
  c.observed = std::move(observed);
  return c;
}

CircuitFamily decoherence_one(FamilyKind kind, int m, int sign) {
  std::vector<Gate> body;
  for (int half = 0; half < 2; ++half) {
    for (int i = 0; i < m; ++i) body.push_back(Gate::x90());
    body.push_back(Gate::zrot(kPi));
  }
  const bool x_basis = kind == FamilyKind::DecoherenceX;
  const Gate prep = x_basis ? Gate::prep_x(sign) : Gate::prep_z(sign);
  const Gate meas = x_basis ? Gate::meas_x() : Gate::meas_z();
  return make(kind, m, sign > 0 ? "+" : "-", one_qubit(prep, body, meas));
}

CircuitFamily rpe_one(FamilyKind kind, int depth, bool sine) {
  std::vector<Gate> body;
  Gate meas = Gate::meas_z();
  if (kind == FamilyKind::RpeAmplitude) {
    for (int i = 0; i < depth; ++i) body.push_back(Gate::x90());
    if (sine) {
      body.push_back(Gate::zrot(kPi));
      body.push_back(Gate::x90());
    }
  } else {
    for (int i = 0; i < depth; ++i) {
      for (int half = 0; half < 2; ++half) {
        body.push_back(Gate::x90());
        body.push_back(Gate::x90());
        body.push_back(Gate::zrot(kPi));
      }
    }
    if (sine) meas = Gate::meas_x();
  }
  return make(kind, depth, sine ? "sin" : "cos", one_qubit(Gate::prep_z(), body, meas));
}

CircuitFamily readout_one(FamilyKind kind) {
  std::vector<Gate> body;
  if (kind == FamilyKind::ReadoutPi) append_x180(body, 0);
  return make(kind, kind == FamilyKind::ReadoutPi ? 2 : 0, "0", one_qubit(Gate::prep_z(), body, Gate::meas_z()));
}

CircuitFamily cz_phase_one(FamilyKind kind, int depth, bool sine) {
  const bool beta = kind == FamilyKind::CzBeta;
  const bool shifted = kind == FamilyKind::CzPhaseB || (beta && sine);
  std::vector<Gate> body;
  append_hadamard(body, 1);
  if (shifted) body.push_back(Gate::zrot(kPi / 2, 1));
  for (int i = 0; i < depth; ++i) body.push_back(Gate::cz());
  append_hadamard(body, 1);
  const std::string tag = beta ? (sine ? "sin" : "cos") : "0";
  return make(kind, depth, tag, two_qubit(beta ? -1 : +1, body, {1}));
}

void append_cnot(std::vector<Gate>& body) {
  append_hadamard(body, 1);
  body.push_back(Gate::cz());
  append_hadamard(body, 1);
}

CircuitFamily cz_decay_one(FamilyKind kind, int depth) {
  std::vector<Gate> body;
  const bool bell = kind == FamilyKind::CzDecayBell;
  append_hadamard(body, 0);
  if (bell) append_cnot(body);
  for (int i = 0; i < depth; ++i) body.push_back(Gate::cz());
  append_x180(body, 0);
  if (bell) append_x180(body, 1);
  for (int i = 0; i < depth; ++i) body.push_back(Gate::cz());
  if (bell) append_cnot(body);
  append_hadamard(body, 0);
  return make(kind, depth, "0", two_qubit(+1, body, {}));
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw CircuitError("bad integer '" + std::string(s) + "' in circuit id");
  }
  return v;
}

}  // namespace

std::string_view family_name(FamilyKind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return name;
  return "?";
}

FamilyKind family_from_name(std::string_view name) {
  for (const auto& [kind, n] : kNames)
    if (n == name) return kind;
  throw CircuitError("unknown circuit family '" + std::string(name) + "'");
}

std::string make_circuit_id(FamilyKind kind, int index, std::string_view tag) {
  return std::string(family_name(kind)) + "/" + std::to_string(index) + "/" + std::string(tag);
}

std::vector<CircuitFamily> decoherence_circuits(const std::vector<int>& ms) {
  for (int m : ms) {
    if (m <= 0 || m % 2 != 0) {
      throw std::invalid_argument("decoherence depths must be positive even integers, got " +
                                  std::to_string(m));
    }
  }
  std::vector<CircuitFamily> out;
  for (FamilyKind kind : {FamilyKind::DecoherenceX, FamilyKind::DecoherenceZ})
    for (int m : ms)
      for (int s : {+1, -1}) out.push_back(decoherence_one(kind, m, s));
  return out;
}

std::vector<CircuitFamily> rpe_circuits(int max_depth_exponent) {
  if (max_depth_exponent < 0) throw std::invalid_argument("RPE exponent must be >= 0");
  std::vector<CircuitFamily> out;
  for (int k = 0; k <= max_depth_exponent; ++k) {
    const int depth = 1 << k;
    for (FamilyKind kind : {FamilyKind::RpeAmplitude, FamilyKind::RpeAxis})
      for (bool sine : {false, true}) out.push_back(rpe_one(kind, depth, sine));
  }
  return out;
}

std::vector<CircuitFamily> readout_circuits() {
  return {readout_one(FamilyKind::ReadoutZero), readout_one(FamilyKind::ReadoutPi)};
}

std::vector<CircuitFamily> cz_phase_circuits(int max_depth_exponent) {
  if (max_depth_exponent < 1) throw std::invalid_argument("CZ phase exponent must be >= 1");
  std::vector<CircuitFamily> out;
  for (int k = 1; k <= max_depth_exponent; ++k) {
    const int depth = 1 << k;
    out.push_back(cz_phase_one(FamilyKind::CzPhaseA, depth, false));
    out.push_back(cz_phase_one(FamilyKind::CzPhaseB, depth, true));
    out.push_back(cz_phase_one(FamilyKind::CzBeta, depth, false));
    out.push_back(cz_phase_one(FamilyKind::CzBeta, depth, true));
  }
  return out;
}

std::vector<CircuitFamily> cz_decay_circuits(const std::vector<int>& depths) {
  for (int d : depths)
    if (d <= 0) throw std::invalid_argument("CZ decay depths must be positive");
  std::vector<CircuitFamily> out;
  for (FamilyKind kind : {FamilyKind::CzDecayBell, FamilyKind::CzDecayPlus})
    for (int d : depths) out.push_back(cz_decay_one(kind, d));
  return out;
}

CircuitFamily resolve_circuit(std::string_view id) {
  const auto a = id.find('/');
  const auto b = a == std::string_view::npos ? a : id.find('/', a + 1);
  if (a == std::string_view::npos || b == std::string_view::npos) {
    throw CircuitError("malformed circuit id '" + std::string(id) + "'");
  }
  const FamilyKind kind = family_from_name(id.substr(0, a));
  const int index = parse_int(id.substr(a + 1, b - a - 1));
  const std::string_view tag = id.substr(b + 1);
  auto bad = [&]() { return CircuitError("invalid parameters in circuit id '" + std::string(id) + "'"); };

  CircuitFamily f;
  switch (kind) {
    case FamilyKind::DecoherenceX:
    case FamilyKind::DecoherenceZ:
      if (index <= 0 || index % 2 != 0 || (tag != "+" && tag != "-")) throw bad();
      f = decoherence_one(kind, index, tag == "+" ? +1 : -1);
      break;
    case FamilyKind::RpeAmplitude:
    case FamilyKind::RpeAxis:
      if (index <= 0 || (index & (index - 1)) != 0 || (tag != "cos" && tag != "sin")) throw bad();
      f = rpe_one(kind, index, tag == "sin");
      break;
    case FamilyKind::ReadoutZero:
    case FamilyKind::ReadoutPi:
      f = readout_one(kind);
      if (tag != "0" || index != f.index) throw bad();
      break;
    case FamilyKind::CzPhaseA:
    case FamilyKind::CzPhaseB:
      if (index < 2 || (index & (index - 1)) != 0 || tag != "0") throw bad();
      f = cz_phase_one(kind, index, kind == FamilyKind::CzPhaseB);
      break;
    case FamilyKind::CzBeta:
      if (index < 2 || (index & (index - 1)) != 0 || (tag != "cos" && tag != "sin")) throw bad();
      f = cz_phase_one(kind, index, tag == "sin");
      break;
    case FamilyKind::CzDecayBell:
    case FamilyKind::CzDecayPlus:
      if (index <= 0 || tag != "0") throw bad();
      f = cz_decay_one(kind, index);
      break;
  }
  return f;
}

nlohmann::json family_to_json(const CircuitFamily& f) {
  return {{"id", f.id},
          {"kind", std::string(family_name(f.kind))},
          {"params", {{"index", f.index}, {"tag", f.tag}}},
          {"qubits", f.circuit.qubit_count},
          {"observed", f.circuit.observed_qubits()},
          {"gates", circuit_gates_to_json(f.circuit)}};
}

nlohmann::json families_to_json(const std::vector<CircuitFamily>& fs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : fs) arr.push_back(family_to_json(f));
  return arr;
}

}  // namespace gscal
