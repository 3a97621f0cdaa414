#include "gscal/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace gscal::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(GSCAL_HAS_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() {
  // GSCAL_KERNELS=scalar pins the reference path without recompiling.
  if (const char* env = std::getenv("GSCAL_KERNELS"); env != nullptr) {
    if (std::string(env) == "scalar") return Backend::Scalar;
  }
  if (cpu_has_avx2()) return Backend::Avx2;
#if defined(GSCAL_HAS_NEON)
  return Backend::Neon;
#else
  return Backend::Scalar;
#endif
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> s{&table_for(detect())};
  return s;
}

}  // namespace

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
      return cpu_has_avx2();
    case Backend::Neon:
#if defined(GSCAL_HAS_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table_for(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("kernel backend not available: " + std::string(backend_name(b)));
  }
  switch (b) {
#if defined(GSCAL_HAS_AVX2)
    case Backend::Avx2:
      return avx2_table();
#endif
#if defined(GSCAL_HAS_NEON)
    case Backend::Neon:
      return neon_table();
#endif
    default:
      return scalar_table();
  }
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

Backend active_backend() { return active().backend; }

void force_backend(Backend b) { slot().store(&table_for(b), std::memory_order_release); }

void reset_backend() { slot().store(&table_for(detect()), std::memory_order_release); }

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

}  // namespace gscal::kernels
