#pragma once

#include <cstddef>
#include <string_view>

// Dense real inner loops used by the PTM simulator and the likelihood code.
// Every kernel has a scalar reference implementation; SIMD variants are
// picked once at startup from what the host CPU reports, and the test suite
// checks each variant against the scalar one.

namespace gscal::kernels {

enum class Backend { Scalar, Avx2, Neon };

struct KernelTable {
  // y = M x, M row-major dim x dim.
  void (*matvec)(const double* m, const double* x, double* y, std::size_t dim);
  // out = A B, all row-major dim x dim. out must not alias a or b.
  void (*matmul)(const double* a, const double* b, double* out, std::size_t dim);
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i |a_i - b_i|
  double (*abs_diff_sum)(const double* a, const double* b, std::size_t n);
  // sum_i k_i * logp_i + (n_i - k_i) * log1mp_i
  double (*binomial_loglik)(const double* zeros, const double* shots, const double* logp,
                            const double* log1mp, std::size_t n);
  Backend backend;
};

const KernelTable& scalar_table();
#if defined(GSCAL_HAS_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(GSCAL_HAS_NEON)
const KernelTable& neon_table();
#endif

bool backend_available(Backend b);
const KernelTable& table_for(Backend b);

// Currently selected table. Safe to call from any thread.
const KernelTable& active();
Backend active_backend();

// Override the runtime choice (tests, benchmarking). Throws std::invalid_argument
// if the backend was not compiled in or the CPU lacks it.
void force_backend(Backend b);
void reset_backend();

std::string_view backend_name(Backend b);

}  // namespace gscal::kernels
