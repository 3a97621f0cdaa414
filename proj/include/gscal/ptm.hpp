#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <span>
#include <vector>

// Pauli-transfer-matrix representation of one- and two-qubit states, channels
// and measurement effects.
//
// Pauli order: I, X, Y, Z for one qubit; for two qubits the lexicographic
// products II, IX, IY, IZ, XI, ..., ZZ, where the left factor acts on qubit 0.
// Index of P_a (x) P_b is 4a + b.
//
// Channel:  R_ij = Tr(P_i  L(P_j)) / d.  This is the same matrix as in the
//           orthonormal basis P/sqrt(d), so composition is a plain product.
// State:    coeffs_i = Tr(P_i rho). coeffs[0] = 1, and for one qubit
//           coeffs[1..3] is the Bloch vector.
// Effect:   coeffs_i = Tr(P_i E) / d, i.e. E = sum_i coeffs_i P_i.
// With these two coordinate systems Tr(E L(rho)) = <effect, R state>.

namespace gscal {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kUnitarityTolerance = 1e-10;
inline constexpr double kProbabilityTolerance = 1e-9;

// Pauli operator number `index` on `qubit_count` qubits (1 or 2).
ComplexMatrix pauli_matrix(std::size_t index, int qubit_count);

// Two n-qubit Paulis commute iff this returns false.
bool paulis_anticommute(std::size_t a, std::size_t b, int qubit_count);

inline constexpr std::size_t pauli_dim(int qubit_count) { return qubit_count == 1 ? 4 : 16; }

class PauliVector {
 public:
  PauliVector() = default;
  explicit PauliVector(std::vector<double> coeffs);

  int qubit_count() const { return coeffs_.size() == 4 ? 1 : 2; }
  std::size_t size() const { return coeffs_.size(); }
  double operator[](std::size_t i) const { return coeffs_[i]; }
  double& operator[](std::size_t i) { return coeffs_[i]; }
  std::span<const double> coeffs() const { return coeffs_; }
  const double* data() const { return coeffs_.data(); }
  double* data() { return coeffs_.data(); }

  // Valid density operator in state coordinates (coeffs[0] = 1, purity bound).
  bool is_valid_state(double tol = 1e-12) const;

  PauliVector operator+(const PauliVector& o) const;
  friend bool operator==(const PauliVector&, const PauliVector&) = default;

 private:
  std::vector<double> coeffs_;
};

PauliVector kron(const PauliVector& a, const PauliVector& b);

// State coordinates of a one-qubit state with the given Bloch vector.
PauliVector bloch_state(double x, double y, double z);
// |0...0><0...0| in state coordinates.
PauliVector ground_state(int qubit_count);
// The identity effect (coeffs (1, 0, ...)).
PauliVector identity_effect(int qubit_count);

class PauliTransferMatrix {
 public:
  PauliTransferMatrix() = default;
  // entries row-major, size 16 (one qubit) or 256 (two qubits).
  PauliTransferMatrix(int qubit_count, std::vector<double> entries);

  static PauliTransferMatrix identity(int qubit_count);
  static PauliTransferMatrix diagonal(std::span<const double> diag);

  int qubit_count() const { return qubit_count_; }
  std::size_t dim() const { return pauli_dim(qubit_count_); }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim() + j]; }
  std::span<const double> entries() const { return entries_; }

  // this * other: apply `other` first.
  PauliTransferMatrix operator*(const PauliTransferMatrix& other) const;
  PauliVector apply(const PauliVector& v) const;
  // In-place y = R x with caller buffers; avoids allocation in hot loops.
  void apply_into(const double* x, double* y) const;

  PauliTransferMatrix transpose() const;
  double max_abs_diff(const PauliTransferMatrix& other) const;
  bool is_trace_preserving(double tol = 0.0) const;

  friend bool operator==(const PauliTransferMatrix&, const PauliTransferMatrix&) = default;

 private:
  int qubit_count_ = 1;
  std::vector<double> entries_;
};

PauliTransferMatrix kron(const PauliTransferMatrix& a, const PauliTransferMatrix& b);

// Throws UnitarityError if u u^dagger differs from I by more than 1e-10.
PauliTransferMatrix ptm_from_unitary(const ComplexMatrix& u);

// Composition of channels listed in application order (channels[0] acts first).
PauliTransferMatrix compose_sequence(std::span<const PauliTransferMatrix> channels);

struct Povm {
  PauliVector effect_zero;
  PauliVector effect_one;

  // Throws ModelError when the effects do not sum to identity or an effect has
  // an eigenvalue outside [0, 1].
  void validate() const;
};

// One-qubit Z measurement with readout errors r01 = Pr(read 1 | 0),
// r10 = Pr(read 0 | 1).
Povm z_povm(double r01, double r10);

// <effect, channel * prep>, clamped to [0, 1] when within 1e-9 of it; anything
// further out throws ProbabilityError.
double outcome_probability(const PauliTransferMatrix& channel, const PauliVector& prep,
                           const PauliVector& effect);

double clamp_probability(double p);

}  // namespace gscal
