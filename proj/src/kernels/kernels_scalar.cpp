#include <cmath>

#include "kernels_impl.hpp"

namespace hogroup::kernels::scalar {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double sum_sq(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double sum_abs(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

double max_weighted_abs(const double* g, const double* w, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(g[i]) * w[i]);
  return m;
}

void quasi_power_soa(const double* const* coords, const int* exps, int d,
                     std::size_t n, double* out) {
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
      double x2 = coords[i][k] * coords[i][k];
      double p = 1.0;
      for (int e = 0; e < exps[i] / 2; ++e) p *= x2;
      s += p;
    }
    out[k] = s;
  }
}

}  // namespace

const Table kTable{dot,     axpy,    scale,            sum_sq,
                   sum_abs, max_abs, max_weighted_abs, quasi_power_soa};

}  // namespace hogroup::kernels::scalar
