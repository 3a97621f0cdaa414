#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"

#include "gscal/ptm.hpp"

namespace gscal {

// Noisy CZ: diag(1, e^{i alpha}, e^{i alpha}, e^{i(pi + beta)}) followed by
// stochastic IZ / ZI / ZZ flips with the given probabilities.
struct CzParams {
  double alpha = 0.0;
  double beta = 0.0;
  double p_iz = 0.0;
  double p_zi = 0.0;
  double p_zz = 0.0;

  friend bool operator==(const CzParams&, const CzParams&) = default;
};

// Single-qubit gateset: X90 is a rotation by (1 + epsilon) * pi/2 about
// (cos theta, 0, sin theta) followed by X/Z flips with probabilities p_x/2 and
// p_z/2. Z rotations are exact. |0> is prepared exactly; readout flips 0->1
// with r_01 and 1->0 with r_10.
struct GatesetModel {
  double epsilon = 0.0;
  double theta = 0.0;
  double p_x = 0.0;
  double p_z = 0.0;
  double r_01 = 0.0;
  double r_10 = 0.0;
  std::optional<CzParams> cz;

  // Throws ModelError on any invariant violation.
  void validate() const;

  friend bool operator==(const GatesetModel&, const GatesetModel&) = default;
};

// The six one-qubit parameters, in the order used by the optimizer.
enum class Param { Epsilon, Theta, PX, PZ, R01, R10 };
inline constexpr std::array<Param, 6> kAllParams = {Param::Epsilon, Param::Theta, Param::PX,
                                                    Param::PZ,      Param::R01,   Param::R10};

std::string_view param_name(Param p);
Param param_from_name(std::string_view name);
double get_param(const GatesetModel& m, Param p);
void set_param(GatesetModel& m, Param p, double value);

// Estimation box: probabilities in [0, 0.5], angles in [-0.5, 0.5].
struct ParamBounds {
  double lower;
  double upper;
};
ParamBounds estimation_bounds(Param p);

// Pauli label ("X", "IZ", ...) to index in the ordering of ptm.hpp.
std::size_t pauli_index(std::string_view label);

// Diagonal channel applying Pauli P with probability probabilities[P]; entry 0
// (identity) is ignored and implied by the others. Throws ModelError when the
// probabilities are negative or sum above 1.
PauliTransferMatrix stochastic_pauli_ptm(std::span<const double> probabilities, int qubit_count);

// One-qubit decoherence channel: X with probability p_x/2, Z with p_z/2.
PauliTransferMatrix decoherence_ptm(double p_x, double p_z);

ComplexMatrix x90_unitary(double epsilon, double theta);
PauliTransferMatrix x90_ptm(const GatesetModel& model);

// exp(-i phi Z / 2)
PauliTransferMatrix zrot_ptm(double phi);

ComplexMatrix cz_unitary(double alpha, double beta);
// Throws ModelError when the model carries no CZ parameters.
PauliTransferMatrix cz_ptm(const GatesetModel& model);

Povm readout_povm(const GatesetModel& model);

// JSON object with fields epsilon, theta, p_x, p_z, r_01, r_10 and optional
// cz{alpha, beta, p_iz, p_zi, p_zz}. Unknown or missing fields are rejected.
nlohmann::json model_to_json(const GatesetModel& m);
GatesetModel model_from_json(const nlohmann::json& j);

}  // namespace gscal
