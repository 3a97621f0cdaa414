#include "gscal/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace gscal::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// Reduces four row accumulators into [sum(a0), sum(a1), sum(a2), sum(a3)].
inline __m256d reduce4(__m256d a0, __m256d a1, __m256d a2, __m256d a3) {
  __m256d h01 = _mm256_hadd_pd(a0, a1);
  __m256d h23 = _mm256_hadd_pd(a2, a3);
  __m256d lo = _mm256_permute2f128_pd(h01, h23, 0x20);
  __m256d hi = _mm256_permute2f128_pd(h01, h23, 0x31);
  return _mm256_add_pd(lo, hi);
}

void matvec_avx2(const double* m, const double* x, double* y, std::size_t dim) {
  if (dim % 4 != 0) {
    scalar_table().matvec(m, x, y, dim);
    return;
  }
  for (std::size_t i = 0; i < dim; i += 4) {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    __m256d a2 = _mm256_setzero_pd();
    __m256d a3 = _mm256_setzero_pd();
    const double* r0 = m + i * dim;
    for (std::size_t j = 0; j < dim; j += 4) {
      const __m256d xv = _mm256_loadu_pd(x + j);
      a0 = _mm256_fmadd_pd(_mm256_loadu_pd(r0 + j), xv, a0);
      a1 = _mm256_fmadd_pd(_mm256_loadu_pd(r0 + dim + j), xv, a1);
      a2 = _mm256_fmadd_pd(_mm256_loadu_pd(r0 + 2 * dim + j), xv, a2);
      a3 = _mm256_fmadd_pd(_mm256_loadu_pd(r0 + 3 * dim + j), xv, a3);
    }
    _mm256_storeu_pd(y + i, reduce4(a0, a1, a2, a3));
  }
}

void matmul_avx2(const double* a, const double* b, double* out, std::size_t dim) {
  if (dim % 4 != 0) {
    scalar_table().matmul(a, b, out, dim);
    return;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    double* orow = out + i * dim;
    for (std::size_t j = 0; j < dim; j += 4) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t k = 0; k < dim; ++k) {
        const __m256d aik = _mm256_broadcast_sd(a + i * dim + k);
        acc = _mm256_fmadd_pd(aik, _mm256_loadu_pd(b + k * dim + j), acc);
      }
      _mm256_storeu_pd(orow + j, acc);
    }
  }
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double abs_diff_sum_avx2(const double* a, const double* b, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, d));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double binomial_loglik_avx2(const double* zeros, const double* shots, const double* logp,
                            const double* log1mp, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d k = _mm256_loadu_pd(zeros + i);
    const __m256d miss = _mm256_sub_pd(_mm256_loadu_pd(shots + i), k);
    acc = _mm256_fmadd_pd(k, _mm256_loadu_pd(logp + i), acc);
    acc = _mm256_fmadd_pd(miss, _mm256_loadu_pd(log1mp + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += zeros[i] * logp[i] + (shots[i] - zeros[i]) * log1mp[i];
  return s;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{matvec_avx2, matmul_avx2, dot_avx2, abs_diff_sum_avx2,
                             binomial_loglik_avx2, Backend::Avx2};
  return t;
}

}  // namespace gscal::kernels
