#include "gscal/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

namespace gscal::kernels {
namespace {

void matvec_neon(const double* m, const double* x, double* y, std::size_t dim) {
  if (dim % 2 != 0) {
    scalar_table().matvec(m, x, y, dim);
    return;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    float64x2_t acc = vdupq_n_f64(0.0);
    const double* row = m + i * dim;
    for (std::size_t j = 0; j < dim; j += 2) {
      acc = vfmaq_f64(acc, vld1q_f64(row + j), vld1q_f64(x + j));
    }
    y[i] = vaddvq_f64(acc);
  }
}

void matmul_neon(const double* a, const double* b, double* out, std::size_t dim) {
  if (dim % 2 != 0) {
    scalar_table().matmul(a, b, out, dim);
    return;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; j += 2) {
      float64x2_t acc = vdupq_n_f64(0.0);
      for (std::size_t k = 0; k < dim; ++k) {
        acc = vfmaq_n_f64(acc, vld1q_f64(b + k * dim + j), a[i * dim + k]);
      }
      vst1q_f64(out + i * dim + j, acc);
    }
  }
}

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double abs_diff_sum_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double binomial_loglik_neon(const double* zeros, const double* shots, const double* logp,
                            const double* log1mp, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t k = vld1q_f64(zeros + i);
    const float64x2_t miss = vsubq_f64(vld1q_f64(shots + i), k);
    acc = vfmaq_f64(acc, k, vld1q_f64(logp + i));
    acc = vfmaq_f64(acc, miss, vld1q_f64(log1mp + i));
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += zeros[i] * logp[i] + (shots[i] - zeros[i]) * log1mp[i];
  return s;
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable t{matvec_neon, matmul_neon, dot_neon, abs_diff_sum_neon,
                             binomial_loglik_neon, Backend::Neon};
  return t;
}

}  // namespace gscal::kernels
