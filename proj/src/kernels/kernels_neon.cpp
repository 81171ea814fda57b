#include "kernels_impl.hpp"

#if defined(__ARM_NEON)
#include <arm_neon.h>

#include <cmath>

namespace hogroup::kernels::neon {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t s = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) s = vfmaq_f64(s, vld1q_f64(a + i), vld1q_f64(b + i));
  double r = vaddvq_f64(s);
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_n_f64(vld1q_f64(x + i), alpha));
  for (; i < n; ++i) x[i] *= alpha;
}

double sum_sq(const double* x, std::size_t n) { return dot(x, x, n); }

double sum_abs(const double* x, std::size_t n) {
  float64x2_t s = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) s = vaddq_f64(s, vabsq_f64(vld1q_f64(x + i)));
  double r = vaddvq_f64(s);
  for (; i < n; ++i) r += std::fabs(x[i]);
  return r;
}

double max_abs(const double* x, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x + i)));
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) r = std::fmax(r, std::fabs(x[i]));
  return r;
}

double max_weighted_abs(const double* g, const double* w, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    m = vmaxq_f64(m, vmulq_f64(vabsq_f64(vld1q_f64(g + i)), vld1q_f64(w + i)));
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) r = std::fmax(r, std::fabs(g[i]) * w[i]);
  return r;
}

void quasi_power_soa(const double* const* coords, const int* exps, int d,
                     std::size_t n, double* out) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    float64x2_t s = vdupq_n_f64(0.0);
    for (int i = 0; i < d; ++i) {
      float64x2_t x = vld1q_f64(coords[i] + k);
      float64x2_t x2 = vmulq_f64(x, x);
      float64x2_t p = vdupq_n_f64(1.0);
      for (int e = 0; e < exps[i] / 2; ++e) p = vmulq_f64(p, x2);
      s = vaddq_f64(s, p);
    }
    vst1q_f64(out + k, s);
  }
  if (k < n) {
    const double* tail[16];
    for (int i = 0; i < d; ++i) tail[i] = coords[i] + k;
    scalar::kTable.quasi_power_soa(tail, exps, d, n - k, out + k);
  }
}

}  // namespace

const Table kTable{dot,     axpy,    scale,            sum_sq,
                   sum_abs, max_abs, max_weighted_abs, quasi_power_soa};

}  // namespace hogroup::kernels::neon
#endif
