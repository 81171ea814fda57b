#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace hogroup::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, sh));
}

inline __m256d vabs(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4),
                         s1);
  }
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t n) {
  __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

double sum_sq(const double* x, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d a = _mm256_loadu_pd(x + i), b = _mm256_loadu_pd(x + i + 4);
    s0 = _mm256_fmadd_pd(a, a, s0);
    s1 = _mm256_fmadd_pd(b, b, s1);
  }
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

double sum_abs(const double* x, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) s0 = _mm256_add_pd(s0, vabs(_mm256_loadu_pd(x + i)));
  double s = hsum(s0);
  for (; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double max_abs(const double* x, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, vabs(_mm256_loadu_pd(x + i)));
  double r = hmax(m);
  for (; i < n; ++i) r = std::fmax(r, std::fabs(x[i]));
  return r;
}

double max_weighted_abs(const double* g, const double* w, std::size_t n) {
  __m256d m0 = _mm256_setzero_pd(), m1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    m0 = _mm256_max_pd(m0, _mm256_mul_pd(vabs(_mm256_loadu_pd(g + i)),
                                         _mm256_loadu_pd(w + i)));
    m1 = _mm256_max_pd(m1, _mm256_mul_pd(vabs(_mm256_loadu_pd(g + i + 4)),
                                         _mm256_loadu_pd(w + i + 4)));
  }
  double r = hmax(_mm256_max_pd(m0, m1));
  for (; i < n; ++i) r = std::fmax(r, std::fabs(g[i]) * w[i]);
  return r;
}

void quasi_power_soa(const double* const* coords, const int* exps, int d,
                     std::size_t n, double* out) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d s = _mm256_setzero_pd();
    for (int i = 0; i < d; ++i) {
      __m256d x = _mm256_loadu_pd(coords[i] + k);
      __m256d x2 = _mm256_mul_pd(x, x);
      __m256d p = _mm256_set1_pd(1.0);
      for (int e = 0; e < exps[i] / 2; ++e) p = _mm256_mul_pd(p, x2);
      s = _mm256_add_pd(s, p);
    }
    _mm256_storeu_pd(out + k, s);
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

}  // namespace hogroup::kernels::avx2
