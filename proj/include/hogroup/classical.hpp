#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hogroup/dyadic.hpp"
#include "hogroup/operator.hpp"

namespace hogroup {

struct ClassicalNormReport {
  std::string space;
  double value = 0.0;
  double ratio = 0.0;   // value / matching Besov or TL norm
  bool stable = false;  // ratio interval moved less than the tolerance under refinement
};

// Scales r_i = 2^{i/4} r_0 spanning [max h, diameter/4].
std::vector<double> hardy_scales(const Grid& grid);
// || sup_r |f * eta_r| ||_p with eta_r the kernel of exp(-r^nu A), over
// hardy_scales and the limit r -> 0.
double hardy_norm(const SampledFunction& f, double p, const HomOperator& op);

// sup over balls of avg_B |f - avg_B f|: every ball of the dyadic system and
// `random_balls` balls with log-uniform radii in [2 max h, diameter/4].
double bmo_norm(const SampledFunction& f, const DyadicBallSystem& balls, int random_balls = 256,
                std::uint64_t seed = 1);

// 0 < sigma < 1: sup |f(xy) - f(x)| / |y|^sigma,
// sigma = 1: sup |f(xy) + f(xy^{-1}) - 2 f(x)| / |y|,
// sigma = k + s' > 1 (stratified): sum over words I of length k in the first
// stratum of the seminorm of X_I f at order s'.
// y runs over lattice offsets with h <= |y| <= diameter/8.
double lipschitz_seminorm(const SampledFunction& f, double sigma);

struct SobolevValue {
  double value = 0.0;
  double kernel_mass = 0.0;  // ||P_0 f||_2 / ||f||_2 for the near-kernel projection
};
// || A^{sigma/nu} f ||_p with eigenvalues below 1e-10 lambda_max treated as
// kernel.
SobolevValue sobolev_norm(const SampledFunction& f, double sigma, double p, const HomOperator& op);

// X_j f along the left-invariant field: spectral on abelian grids, central
// differences with zero extension otherwise.
SampledFunction field_derivative(const SampledFunction& f, int j);
// T_alpha f = X^alpha A^{-[alpha]/nu} f, X^alpha = X_1^{alpha_1} ... X_d^{alpha_d}.
SampledFunction riesz_transform(const SampledFunction& f, const std::vector<int>& alpha,
                                const HomOperator& op);

}  // namespace hogroup
