#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "gscal/model.hpp"
#include "gscal/ptm.hpp"

namespace gscal {

enum class GateKind { X90, Zrot, CZ, PrepZ, PrepX, MeasZ, MeasX };

struct Gate {
  GateKind kind = GateKind::X90;
  int qubit = 0;       // CZ always acts on qubits 0 and 1
  double angle = 0.0;  // Zrot only
  int sign = +1;       // PrepZ / PrepX eigenvalue

  static Gate x90(int q = 0) { return {GateKind::X90, q, 0.0, +1}; }
  static Gate zrot(double phi, int q = 0) { return {GateKind::Zrot, q, phi, +1}; }
  static Gate cz() { return {GateKind::CZ, 0, 0.0, +1}; }
  static Gate prep_z(int s = +1, int q = 0) { return {GateKind::PrepZ, q, 0.0, s}; }
  static Gate prep_x(int s = +1, int q = 0) { return {GateKind::PrepX, q, 0.0, s}; }
  static Gate meas_z(int q = 0) { return {GateKind::MeasZ, q, 0.0, +1}; }
  static Gate meas_x(int q = 0) { return {GateKind::MeasX, q, 0.0, +1}; }

  bool is_prep() const { return kind == GateKind::PrepZ || kind == GateKind::PrepX; }
  bool is_meas() const { return kind == GateKind::MeasZ || kind == GateKind::MeasX; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

// One prep per qubit at the front, one measurement per qubit at the back.
// The circuit's binary outcome "0" is the event that every qubit listed in
// `observed` reads 0 (empty means all qubits).
struct Circuit {
  int qubit_count = 1;
  std::vector<Gate> gates;
  std::vector<int> observed;

  // Throws CircuitError if malformed.
  void validate() const;
  std::vector<int> observed_qubits() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

// Lowers PrepZ(-1), PrepX(s) and MeasX into PrepZ(+1) / MeasZ plus X90 and
// Zrot gates from the gateset itself:
//   PrepZ(-1) -> PrepZ(+1), X90, X90
//   PrepX(s)  -> PrepZ(+1), X90, Zrot(s * pi/2)
//   MeasX     -> Zrot(pi/2), X90, MeasZ
// Outcome 0 of a compiled MeasX corresponds to the +1 eigenstate of X.
Circuit compile(const Circuit& c);

// Appends a Hadamard (up to global phase) as Zrot(pi/2), X90, Zrot(pi/2).
void append_hadamard(std::vector<Gate>& gates, int q);
// X on qubit q as X90, X90.
void append_x180(std::vector<Gate>& gates, int q);

// Caches the channels of one model so many circuits can be evaluated cheaply.
class CircuitSimulator {
 public:
  explicit CircuitSimulator(const GatesetModel& model);

  const GatesetModel& model() const { return model_; }

  // Pr(outcome 0), i.e. every observed qubit reads 0.
  double probability(const Circuit& compiled) const;
  // Joint distribution over all measured qubits; index bit (qubit_count-1-q)
  // holds qubit q's result, so index 0 = all zeros and for two qubits
  // index 1 = qubit 1 reads 1.
  std::vector<double> joint_probabilities(const Circuit& compiled) const;

 private:
  void evolve(const Circuit& compiled, std::vector<double>& state) const;

  GatesetModel model_;
  PauliTransferMatrix x90_;
  PauliTransferMatrix x90_q0_;
  PauliTransferMatrix x90_q1_;
  std::optional<PauliTransferMatrix> cz_;
  Povm povm_;
};

// Exact outcome-0 probability of `circuit` (compiled internally).
double circuit_probability(const GatesetModel& model, const Circuit& circuit);
std::vector<double> joint_outcome_probabilities(const GatesetModel& model, const Circuit& circuit);

nlohmann::json gate_to_json(const Gate& g);
nlohmann::json circuit_gates_to_json(const Circuit& c);

}  // namespace gscal
