#include "gscal/ptm.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "gscal/errors.hpp"
#include "gscal/kernels.hpp"

namespace gscal {
namespace {

using cd = std::complex<double>;

Eigen::Matrix2cd single_pauli(std::size_t k) {
  Eigen::Matrix2cd m;
  switch (k) {
    case 0:
      m << 1, 0, 0, 1;
      break;
    case 1:
      m << 0, 1, 1, 0;
      break;
    case 2:
      m << 0, cd(0, -1), cd(0, 1), 0;
      break;
    default:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

ComplexMatrix kron_complex(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

ComplexMatrix pauli_matrix(std::size_t index, int qubit_count) {
  if (qubit_count == 1) {
    if (index >= 4) throw DimensionError("pauli index out of range");
    return single_pauli(index);
  }
  if (qubit_count == 2) {
    if (index >= 16) throw DimensionError("pauli index out of range");
    return kron_complex(single_pauli(index / 4), single_pauli(index % 4));
  }
  throw DimensionError("only one- and two-qubit Paulis are supported");
}

bool paulis_anticommute(std::size_t a, std::size_t b, int qubit_count) {
  // Single-qubit Paulis anticommute iff both are non-identity and different.
  auto anti1 = [](std::size_t x, std::size_t y) { return x != 0 && y != 0 && x != y; };
  if (qubit_count == 1) return anti1(a, b);
  const int count = int(anti1(a / 4, b / 4)) + int(anti1(a % 4, b % 4));
  return count % 2 == 1;
}

// PauliVector

PauliVector::PauliVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != 4 && coeffs_.size() != 16) {
    throw DimensionError("PauliVector must have 4 or 16 coefficients");
  }
}

bool PauliVector::is_valid_state(double tol) const {
  if (std::fabs(coeffs_[0] - 1.0) > tol) return false;
  double sumsq = 0.0;
  for (double c : coeffs_) sumsq += c * c;
  const double d = qubit_count() == 1 ? 2.0 : 4.0;
  return sumsq <= d * coeffs_[0] * coeffs_[0] + tol;
}

PauliVector PauliVector::operator+(const PauliVector& o) const {
  require_same_size(size(), o.size(), "PauliVector +");
  std::vector<double> out(coeffs_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += o.coeffs_[i];
  return PauliVector(std::move(out));
}

PauliVector kron(const PauliVector& a, const PauliVector& b) {
  if (a.size() != 4 || b.size() != 4) throw DimensionError("kron expects one-qubit vectors");
  std::vector<double> out(16);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[4 * i + j] = a[i] * b[j];
  return PauliVector(std::move(out));
}

PauliVector bloch_state(double x, double y, double z) { return PauliVector({1.0, x, y, z}); }

PauliVector ground_state(int qubit_count) {
  const PauliVector zero = bloch_state(0.0, 0.0, 1.0);
  return qubit_count == 1 ? zero : kron(zero, zero);
}

PauliVector identity_effect(int qubit_count) {
  std::vector<double> c(pauli_dim(qubit_count), 0.0);
  c[0] = 1.0;
  return PauliVector(std::move(c));
}

// PauliTransferMatrix

PauliTransferMatrix::PauliTransferMatrix(int qubit_count, std::vector<double> entries)
    : qubit_count_(qubit_count), entries_(std::move(entries)) {
  if (qubit_count != 1 && qubit_count != 2) throw DimensionError("qubit_count must be 1 or 2");
  require_same_size(entries_.size(), dim() * dim(), "PauliTransferMatrix");
}

PauliTransferMatrix PauliTransferMatrix::identity(int qubit_count) {
  const std::size_t d = pauli_dim(qubit_count);
  std::vector<double> e(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) e[i * d + i] = 1.0;
  return PauliTransferMatrix(qubit_count, std::move(e));
}

PauliTransferMatrix PauliTransferMatrix::diagonal(std::span<const double> diag) {
  if (diag.size() != 4 && diag.size() != 16) throw DimensionError("diagonal must have 4 or 16 entries");
  const std::size_t d = diag.size();
  std::vector<double> e(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) e[i * d + i] = diag[i];
  return PauliTransferMatrix(d == 4 ? 1 : 2, std::move(e));
}

PauliTransferMatrix PauliTransferMatrix::operator*(const PauliTransferMatrix& other) const {
  require_same_size(dim(), other.dim(), "PTM composition");
  std::vector<double> out(entries_.size());
  kernels::active().matmul(entries_.data(), other.entries_.data(), out.data(), dim());
  return PauliTransferMatrix(qubit_count_, std::move(out));
}

PauliVector PauliTransferMatrix::apply(const PauliVector& v) const {
  require_same_size(dim(), v.size(), "PTM apply");
  std::vector<double> out(dim());
  kernels::active().matvec(entries_.data(), v.data(), out.data(), dim());
  return PauliVector(std::move(out));
}

void PauliTransferMatrix::apply_into(const double* x, double* y) const {
  kernels::active().matvec(entries_.data(), x, y, dim());
}

PauliTransferMatrix PauliTransferMatrix::transpose() const {
  const std::size_t d = dim();
  std::vector<double> t(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) t[j * d + i] = entries_[i * d + j];
  return PauliTransferMatrix(qubit_count_, std::move(t));
}

double PauliTransferMatrix::max_abs_diff(const PauliTransferMatrix& other) const {
  require_same_size(dim(), other.dim(), "PTM difference");
  double m = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    m = std::max(m, std::fabs(entries_[i] - other.entries_[i]));
  return m;
}

bool PauliTransferMatrix::is_trace_preserving(double tol) const {
  if (std::fabs(entries_[0] - 1.0) > tol) return false;
  for (std::size_t j = 1; j < dim(); ++j)
    if (std::fabs(entries_[j]) > tol) return false;
  return true;
}

PauliTransferMatrix kron(const PauliTransferMatrix& a, const PauliTransferMatrix& b) {
  if (a.qubit_count() != 1 || b.qubit_count() != 1) {
    throw DimensionError("kron expects one-qubit channels");
  }
  std::vector<double> out(256);
  for (std::size_t ai = 0; ai < 4; ++ai)
    for (std::size_t bi = 0; bi < 4; ++bi)
      for (std::size_t aj = 0; aj < 4; ++aj)
        for (std::size_t bj = 0; bj < 4; ++bj)
          out[(4 * ai + bi) * 16 + (4 * aj + bj)] = a(ai, aj) * b(bi, bj);
  return PauliTransferMatrix(2, std::move(out));
}

PauliTransferMatrix ptm_from_unitary(const ComplexMatrix& u) {
  if (u.rows() != u.cols() || (u.rows() != 2 && u.rows() != 4)) {
    throw DimensionError("unitary must be 2x2 or 4x4");
  }
  const Eigen::Index d = u.rows();
  const double defect = (u * u.adjoint() - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (defect > kUnitarityTolerance) {
    throw UnitarityError("matrix is not unitary (max |UU^dagger - I| = " + std::to_string(defect) +
                         ")");
  }
  const int q = d == 2 ? 1 : 2;
  const std::size_t n = pauli_dim(q);
  std::vector<ComplexMatrix> paulis;
  paulis.reserve(n);
  for (std::size_t i = 0; i < n; ++i) paulis.push_back(pauli_matrix(i, q));

  std::vector<double> e(n * n);
  const ComplexMatrix udag = u.adjoint();
  for (std::size_t j = 0; j < n; ++j) {
    const ComplexMatrix image = u * paulis[j] * udag;
    for (std::size_t i = 0; i < n; ++i) {
      e[i * n + j] = (paulis[i] * image).trace().real() / double(d);
    }
  }
  // Row 0 is exactly (1, 0, ...) for any unitary; remove rounding dust there.
  e[0] = 1.0;
  for (std::size_t j = 1; j < n; ++j) e[j] = 0.0;
  return PauliTransferMatrix(q, std::move(e));
}

PauliTransferMatrix compose_sequence(std::span<const PauliTransferMatrix> channels) {
  if (channels.empty()) throw DimensionError("compose_sequence: empty channel list");
  PauliTransferMatrix acc = channels.front();
  for (std::size_t i = 1; i < channels.size(); ++i) {
    require_same_size(acc.dim(), channels[i].dim(), "compose_sequence");
    acc = channels[i] * acc;
  }
  return acc;
}

// Povm

void Povm::validate() const {
  require_same_size(effect_zero.size(), effect_one.size(), "Povm");
  const int q = effect_zero.qubit_count();
  const PauliVector sum = effect_zero + effect_one;
  const PauliVector id = identity_effect(q);
  for (std::size_t i = 0; i < sum.size(); ++i) {
    if (std::fabs(sum[i] - id[i]) > 1e-12) throw ModelError("POVM effects do not sum to identity");
  }
  for (const PauliVector* eff : {&effect_zero, &effect_one}) {
    const Eigen::Index d = q == 1 ? 2 : 4;
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < eff->size(); ++i) m += (*eff)[i] * pauli_matrix(i, q);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    const auto& ev = es.eigenvalues();
    if (ev.minCoeff() < -1e-12 || ev.maxCoeff() > 1.0 + 1e-12) {
      throw ModelError("POVM effect has an eigenvalue outside [0, 1]");
    }
  }
}

Povm z_povm(double r01, double r10) {
  // M0 = (1 - r01)|0><0| + r10|1><1|,  M1 = I - M0.
  const double m0_id = 0.5 * (1.0 - r01 + r10);
  const double m0_z = 0.5 * (1.0 - r01 - r10);
  return Povm{PauliVector({m0_id, 0.0, 0.0, m0_z}), PauliVector({1.0 - m0_id, 0.0, 0.0, -m0_z})};
}

double clamp_probability(double p) {
  if (!(p >= -kProbabilityTolerance && p <= 1.0 + kProbabilityTolerance)) {
    throw ProbabilityError("outcome probability " + std::to_string(p) + " outside [0, 1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

double outcome_probability(const PauliTransferMatrix& channel, const PauliVector& prep,
                           const PauliVector& effect) {
  require_same_size(channel.dim(), prep.size(), "outcome_probability (prep)");
  require_same_size(channel.dim(), effect.size(), "outcome_probability (effect)");
  std::vector<double> out(channel.dim());
  channel.apply_into(prep.data(), out.data());
  return clamp_probability(kernels::active().dot(effect.data(), out.data(), out.size()));
}

}  // namespace gscal
