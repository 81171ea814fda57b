#pragma once

#include <cstddef>

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// where the target supports it, an AVX2 or NEON version; the dispatcher picks
// one at first use. Reductions may differ from the reference by rounding;
// max-type kernels agree exactly.
namespace hogroup::kernels {

enum class Isa { Scalar, Avx2, Neon };

Isa active_isa();
const char* isa_name(Isa isa);
bool isa_available(Isa isa);
// Test hook. Throws if the ISA is not available on this machine.
void force_isa(Isa isa);

double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
// max_i |g[i]| * w[i]
double max_weighted_abs(const double* g, const double* w, std::size_t n);
// out[k] = sum_i coords[i][k]^exps[i], exps even and positive.
void quasi_power_soa(const double* const* coords, const int* exps, int d,
                     std::size_t n, double* out);

struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  double (*sum_sq)(const double*, std::size_t);
  double (*sum_abs)(const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  double (*max_weighted_abs)(const double*, const double*, std::size_t);
  void (*quasi_power_soa)(const double* const*, const int*, int, std::size_t,
                          double*);
};

const Table& table(Isa isa);

}  // namespace hogroup::kernels
