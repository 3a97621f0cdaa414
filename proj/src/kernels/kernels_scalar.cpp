#include "gscal/kernels.hpp"

#include <cmath>

namespace gscal::kernels {
namespace {

void matvec_scalar(const double* m, const double* x, double* y, std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) {
    double acc = 0.0;
    const double* row = m + i * dim;
    for (std::size_t j = 0; j < dim; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void matmul_scalar(const double* a, const double* b, double* out, std::size_t dim) {
  for (std::size_t i = 0; i < dim * dim; ++i) out[i] = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      const double aik = a[i * dim + k];
      if (aik == 0.0) continue;
      const double* brow = b + k * dim;
      double* orow = out + i * dim;
      for (std::size_t j = 0; j < dim; ++j) orow[j] += aik * brow[j];
    }
  }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double abs_diff_sum_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(a[i] - b[i]);
  return acc;
}

double binomial_loglik_scalar(const double* zeros, const double* shots, const double* logp,
                              const double* log1mp, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += zeros[i] * logp[i] + (shots[i] - zeros[i]) * log1mp[i];
  }
  return acc;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{matvec_scalar, matmul_scalar, dot_scalar, abs_diff_sum_scalar,
                             binomial_loglik_scalar, Backend::Scalar};
  return t;
}

}  // namespace gscal::kernels
