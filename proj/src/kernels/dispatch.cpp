#include <atomic>
#include <cstdlib>
#include <cstring>

#include "hogroup/error.hpp"
#include "kernels_impl.hpp"

namespace hogroup::kernels {
namespace {

Isa detect() {
  if (const char* env = std::getenv("HOGROUP_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  }
#if defined(HOGROUP_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return Isa::Avx2;
#endif
#if defined(__ARM_NEON)
  return Isa::Neon;
#endif
  return Isa::Scalar;
}

std::atomic<const Table*> g_active{nullptr};
std::atomic<Isa> g_isa{Isa::Scalar};

const Table& active() {
  const Table* t = g_active.load(std::memory_order_acquire);
  if (t) return *t;
  Isa isa = detect();
  g_isa.store(isa);
  g_active.store(&table(isa), std::memory_order_release);
  return table(isa);
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(HOGROUP_HAVE_AVX2)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__ARM_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const Table& table(Isa isa) {
  if (!isa_available(isa))
    throw Error("kernels", "isa_unavailable", isa_name(isa));
  switch (isa) {
#if defined(HOGROUP_HAVE_AVX2)
    case Isa::Avx2:
      return avx2::kTable;
#endif
#if defined(__ARM_NEON)
    case Isa::Neon:
      return neon::kTable;
#endif
    default:
      return scalar::kTable;
  }
}

Isa active_isa() {
  active();
  return g_isa.load();
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "?";
}

void force_isa(Isa isa) {
  const Table& t = table(isa);
  g_isa.store(isa);
  g_active.store(&t, std::memory_order_release);
}

double dot(const double* a, const double* b, std::size_t n) {
  return active().dot(a, b, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  active().axpy(alpha, x, y, n);
}
void scale(double alpha, double* x, std::size_t n) { active().scale(alpha, x, n); }
double sum_sq(const double* x, std::size_t n) { return active().sum_sq(x, n); }
double sum_abs(const double* x, std::size_t n) { return active().sum_abs(x, n); }
double max_abs(const double* x, std::size_t n) { return active().max_abs(x, n); }
double max_weighted_abs(const double* g, const double* w, std::size_t n) {
  return active().max_weighted_abs(g, w, n);
}
void quasi_power_soa(const double* const* coords, const int* exps, int d,
                     std::size_t n, double* out) {
  active().quasi_power_soa(coords, exps, d, n, out);
}

}  // namespace hogroup::kernels
