#include "gscal/model.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "gscal/errors.hpp"

namespace gscal {
namespace {

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ModelError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const char* what) {
  if (!j.is_object()) throw ModelError(std::string(what) + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (!allowed.contains(item.key())) {
      throw ModelError(std::string("unknown field '") + item.key() + "' in " + what);
    }
  }
  for (const auto& key : allowed) {
    if (!j.contains(key) && key != "cz") {
      throw ModelError(std::string("missing field '") + key + "' in " + what);
    }
  }
}

double number(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ModelError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

void GatesetModel::validate() const {
  require_probability(p_x, "p_x");
  require_probability(p_z, "p_z");
  require_probability(r_01, "r_01");
  require_probability(r_10, "r_10");
  if (p_x + p_z > 1.0) throw ModelError("p_x + p_z must not exceed 1");
  if (!(std::fabs(epsilon) < 1.0)) throw ModelError("|epsilon| must be < 1");
  if (!(std::fabs(theta) < std::numbers::pi / 2)) throw ModelError("|theta| must be < pi/2");
  if (cz) {
    require_probability(cz->p_iz, "p_iz");
    require_probability(cz->p_zi, "p_zi");
    require_probability(cz->p_zz, "p_zz");
    if (cz->p_iz + cz->p_zi + cz->p_zz > 1.0) throw ModelError("p_iz + p_zi + p_zz must not exceed 1");
    if (!std::isfinite(cz->alpha) || !std::isfinite(cz->beta)) throw ModelError("CZ phases must be finite");
  }
}

std::string_view param_name(Param p) {
  switch (p) {
    case Param::Epsilon:
      return "epsilon";
    case Param::Theta:
      return "theta";
    case Param::PX:
      return "p_x";
    case Param::PZ:
      return "p_z";
    case Param::R01:
      return "r_01";
    case Param::R10:
      return "r_10";
  }
  return "?";
}

Param param_from_name(std::string_view name) {
  for (Param p : kAllParams)
    if (param_name(p) == name) return p;
  throw ModelError("unknown parameter name '" + std::string(name) + "'");
}

double get_param(const GatesetModel& m, Param p) {
  switch (p) {
    case Param::Epsilon:
      return m.epsilon;
    case Param::Theta:
      return m.theta;
    case Param::PX:
      return m.p_x;
    case Param::PZ:
      return m.p_z;
    case Param::R01:
      return m.r_01;
    case Param::R10:
      return m.r_10;
  }
  return 0.0;
}

void set_param(GatesetModel& m, Param p, double value) {
  switch (p) {
    case Param::Epsilon:
      m.epsilon = value;
      break;
    case Param::Theta:
      m.theta = value;
      break;
    case Param::PX:
      m.p_x = value;
      break;
    case Param::PZ:
      m.p_z = value;
      break;
    case Param::R01:
      m.r_01 = value;
      break;
    case Param::R10:
      m.r_10 = value;
      break;
  }
}

ParamBounds estimation_bounds(Param p) {
  if (p == Param::Epsilon || p == Param::Theta) return {-0.5, 0.5};
  return {0.0, 0.5};
}

std::size_t pauli_index(std::string_view label) {
  auto one = [](char c) -> std::size_t {
    switch (c) {
      case 'I':
        return 0;
      case 'X':
        return 1;
      case 'Y':
        return 2;
      case 'Z':
        return 3;
    }
    throw ModelError(std::string("bad Pauli letter '") + c + "'");
  };
  if (label.size() == 1) return one(label[0]);
  if (label.size() == 2) return 4 * one(label[0]) + one(label[1]);
  throw ModelError("Pauli label must have 1 or 2 letters");
}

PauliTransferMatrix stochastic_pauli_ptm(std::span<const double> probabilities, int qubit_count) {
  const std::size_t d = pauli_dim(qubit_count);
  if (probabilities.size() != d) throw DimensionError("stochastic_pauli_ptm: need one probability per Pauli");
  double total = 0.0;
  for (std::size_t k = 1; k < d; ++k) {
    if (!(probabilities[k] >= 0.0)) throw ModelError("Pauli probabilities must be nonnegative");
    total += probabilities[k];
  }
  if (total > 1.0 + 1e-15) throw ModelError("Pauli probabilities sum above 1");
  std::vector<double> diag(d, 1.0);
  for (std::size_t q = 1; q < d; ++q) {
    double flip = 0.0;
    for (std::size_t p = 1; p < d; ++p)
      if (paulis_anticommute(p, q, qubit_count)) flip += probabilities[p];
    diag[q] = 1.0 - 2.0 * flip;
  }
  return PauliTransferMatrix::diagonal(diag);
}

PauliTransferMatrix decoherence_ptm(double p_x, double p_z) {
  const std::array<double, 4> probs{0.0, 0.5 * p_x, 0.0, 0.5 * p_z};
  return stochastic_pauli_ptm(probs, 1);
}

ComplexMatrix x90_unitary(double epsilon, double theta) {
  using cd = std::complex<double>;
  const double angle = (1.0 + epsilon) * std::numbers::pi / 2.0;
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const double nx = std::cos(theta);
  const double nz = std::sin(theta);
  ComplexMatrix u(2, 2);
  // cos(a/2) I - i sin(a/2) (nx X + nz Z)
  u(0, 0) = cd(c, -s * nz);
  u(0, 1) = cd(0.0, -s * nx);
  u(1, 0) = cd(0.0, -s * nx);
  u(1, 1) = cd(c, s * nz);
  return u;
}

PauliTransferMatrix x90_ptm(const GatesetModel& model) {
  model.validate();
  return decoherence_ptm(model.p_x, model.p_z) * ptm_from_unitary(x90_unitary(model.epsilon, model.theta));
}

PauliTransferMatrix zrot_ptm(double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return PauliTransferMatrix(1, {1, 0, 0, 0,  //
                                 0, c, -s, 0,  //
                                 0, s, c, 0,   //
                                 0, 0, 0, 1});
}

ComplexMatrix cz_unitary(double alpha, double beta) {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = std::polar(1.0, alpha);
  u(2, 2) = std::polar(1.0, alpha);
  u(3, 3) = std::polar(1.0, std::numbers::pi + beta);
  return u;
}

PauliTransferMatrix cz_ptm(const GatesetModel& model) {
  if (!model.cz) throw ModelError("model has no CZ parameters");
  model.validate();
  const CzParams& c = *model.cz;
  std::array<double, 16> probs{};
  probs[pauli_index("IZ")] = c.p_iz;
  probs[pauli_index("ZI")] = c.p_zi;
  probs[pauli_index("ZZ")] = c.p_zz;
  return stochastic_pauli_ptm(probs, 2) * ptm_from_unitary(cz_unitary(c.alpha, c.beta));
}

Povm readout_povm(const GatesetModel& model) { return z_povm(model.r_01, model.r_10); }

nlohmann::json model_to_json(const GatesetModel& m) {
  nlohmann::json j{{"epsilon", m.epsilon}, {"theta", m.theta}, {"p_x", m.p_x},
                   {"p_z", m.p_z},         {"r_01", m.r_01},   {"r_10", m.r_10}};
  if (m.cz) {
    j["cz"] = {{"alpha", m.cz->alpha}, {"beta", m.cz->beta}, {"p_iz", m.cz->p_iz},
               {"p_zi", m.cz->p_zi},   {"p_zz", m.cz->p_zz}};
  }
  return j;
}

GatesetModel model_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"epsilon", "theta", "p_x", "p_z", "r_01", "r_10", "cz"}, "model");
  GatesetModel m;
  m.epsilon = number(j, "epsilon");
  m.theta = number(j, "theta");
  m.p_x = number(j, "p_x");
  m.p_z = number(j, "p_z");
  m.r_01 = number(j, "r_01");
  m.r_10 = number(j, "r_10");
  if (j.contains("cz") && !j.at("cz").is_null()) {
    const auto& c = j.at("cz");
    reject_unknown(c, {"alpha", "beta", "p_iz", "p_zi", "p_zz"}, "cz");
    m.cz = CzParams{number(c, "alpha"), number(c, "beta"), number(c, "p_iz"), number(c, "p_zi"),
                    number(c, "p_zz")};
  }
  m.validate();
  return m;
}

}  // namespace gscal
