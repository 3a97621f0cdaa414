#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gscal/circuit.hpp"

namespace gscal {

enum class FamilyKind {
  DecoherenceX,
  DecoherenceZ,
  RpeAmplitude,
  RpeAxis,
  ReadoutZero,
  ReadoutPi,
  CzPhaseA,
  CzPhaseB,
  CzBeta,
  CzDecayBell,
  CzDecayPlus,
};

std::string_view family_name(FamilyKind k);
FamilyKind family_from_name(std::string_view name);

// A generated characterization circuit. `index` is the depth parameter (m for
// decoherence circuits, the repetition count L for phase-estimation and decay
// circuits, 0 otherwise). `tag` is "+"/"-" for eigenstate signs, "cos"/"sin"
// for quadratures and "0" when unused. id = "<kind>/<index>/<tag>".
struct CircuitFamily {
  FamilyKind kind;
  int index = 0;
  std::string tag;
  Circuit circuit;
  std::string id;
};

std::string make_circuit_id(FamilyKind kind, int index, std::string_view tag);

// Decoherence detection: for P in {X, Z}, each m, s = +1/-1: prepare the s
// eigenstate of P, run X90^m Z180 X90^m Z180, measure P. Outcome 0 is the +1
// eigenvalue, so Pr(P, s, m) = Pr(0) for s = +1 and 1 - Pr(0) for s = -1.
// Throws std::invalid_argument for odd or nonpositive m.
std::vector<CircuitFamily> decoherence_circuits(const std::vector<int>& ms);

// Two-quadrature phase estimation at depths L = 1, 2, 4, ..., 2^K:
//   amplitude cos: X90^L, measure Z              (<Z> = cos(L phi))
//   amplitude sin: X90^L, Z180, X90, measure Z   (<Z> = sin(L phi - (phi - pi/2)))
//   axis cos/sin:  (X90 X90 Z180 X90 X90 Z180)^L, measure Z / X
// Each echoed block is a rotation about ~y by an angle ~4 theta.
std::vector<CircuitFamily> rpe_circuits(int max_depth_exponent);

// [PrepZ, MeasZ] and [PrepZ, X90, X90, MeasZ].
std::vector<CircuitFamily> readout_circuits();

// CZ phase circuits at depths 2^k, k = 1..K. Qubit 0 is the control, qubit 1
// the target, and only the target is observed.
//   A:        H(t) CZ^L H(t)
//   B:        H(t) Z90(t) CZ^L H(t)
//   Beta cos/sin: A / B with the control prepared in |1>.
// Throws std::invalid_argument for K < 1.
std::vector<CircuitFamily> cz_phase_circuits(int max_depth_exponent);

// CZ decay circuits with 2 * depth CZs around a Pauli echo.
//   Bell: H(0) CNOT, CZ^d, X(0)X(1), CZ^d, CNOT H(0)    (decays with p_iz + p_zi)
//   Plus: H(0), CZ^d, X(0), CZ^d, H(0)                  (decays with p_zi + p_zz)
// CNOT(0->1) is compiled as H(1) CZ H(1). Both qubits observed.
std::vector<CircuitFamily> cz_decay_circuits(const std::vector<int>& depths);

// Regenerates the circuit for an id produced by one of the generators above.
// Throws CircuitError for unparseable ids.
CircuitFamily resolve_circuit(std::string_view id);

// {id, kind, params: {index, tag}, gates: [...]}
nlohmann::json family_to_json(const CircuitFamily& f);
nlohmann::json families_to_json(const std::vector<CircuitFamily>& fs);

}  // namespace gscal
