#pragma once

#include <vector>

#include "hogroup/lpnorms.hpp"

namespace hogroup {

// Point of the affine group N x (0, inf).
struct GPoint {
  GroupPoint x;
  double s = 1.0;
};

// (x, s)(y, t) = (x delta_s(y), s t)
GPoint gmul(const GradedAlgebra& g, const GPoint& a, const GPoint& b);
// (delta_{1/s}(x^{-1}), 1/s)
GPoint ginv(const GradedAlgebra& g, const GPoint& a);
// s^{-Q}
double modular(const GradedAlgebra& g, const GPoint& a);

// Values of a function on N x {s_m}, s_m = 2^{m/K}; the Haar measure
// ds/s^{Q+1} becomes ln2/K s_m^{-Q} per node.
struct WaveletCoefs {
  GridPtr grid;
  int K = 8;
  std::vector<double> s;
  std::vector<std::vector<double>> values;

  double weight() const;
  std::size_t scales() const { return s.size(); }
};

// Throws Error("wavelet", "not_admissible") unless the filter is continuous
// and its kernel is real and even to `tol` (relative L2).
void check_admissible(const CalderonFilter& psi, double tol = 1e-3);

// V f(x, s) = s^{Q/2} (f * psi_s)(x) on the log lattice in [s_min, s_max].
// `even_tol` is passed to check_admissible.
WaveletCoefs wavelet_transform(const SampledFunction& f, const CalderonFilter& psi, double s_min,
                               double s_max, int K = 8, double even_tol = 1e-3);
// Same at arbitrary points of the affine group (interpolated in x).
std::vector<double> wavelet_transform(const SampledFunction& f, const CalderonFilter& psi,
                                      const std::vector<GPoint>& points, double even_tol = 1e-3);

// ( int int |F(x, s)|^2 dx ds/s^{Q+1} )^{1/2}
double coefficient_l2(const WaveletCoefs& F);

// Peetre envelopes sup_z |F(z, s)| / (1 + s^{-1}|z^{-1}x|)^a per scale.
std::vector<std::vector<double>> coefficient_envelopes(const WaveletCoefs& F, double a);

// || || s^{-sigma} E(., s) ||_{L^q(ds/s^{Q+1})} ||_{L^p(N)}, with the local
// ball-average variants for p = inf.
double peetre_space_norm(const WaveletCoefs& F, const NormParams& np);
// || s^{-sigma} || E(., s) ||_{L^p(N)} ||_{L^q(ds/s^{Q+1})}
double mixed_space_norm(const WaveletCoefs& F, const NormParams& np);
// Same norms from precomputed envelopes.
double peetre_space_norm(const WaveletCoefs& F, const std::vector<std::vector<double>>& env,
                         const NormParams& np);
double mixed_space_norm(const WaveletCoefs& F, const std::vector<std::vector<double>>& env,
                        const NormParams& np);

struct WaveletNorms {
  double besov = 0.0;
  double tl = 0.0;
};
// Mixed norms of V f with sigma' = sigma + Q/2 - Q/q. Requires
// a > max{Q/(p^q), |sigma|}.
WaveletNorms norm_via_wavelet(const SampledFunction& f, const CalderonFilter& psi,
                              const NormParams& np, double s_min, double s_max, int K = 8);
WaveletNorms norm_via_wavelet(const WaveletCoefs& V, const NormParams& np);

// Lambda = {(delta_{2^{-j}}(beta k), 2^{-j})}: k runs over the lattice points
// of the box, which requires beta 2^{-j} to be a whole number of steps.
struct FrameSpec {
  CalderonFilter psi;
  double beta = 0.25;
  int j_min = 0, j_max = 0;
};

struct FrameLevel {
  int j = 0;
  double s = 1.0;
  std::vector<std::size_t> sites;  // grid indices of the translation nodes
};
std::vector<FrameLevel> frame_levels(const FrameSpec& spec);
std::size_t frame_size(const FrameSpec& spec);

// <f, pi(lambda) psi> for lambda in Lambda, level by level.
std::vector<double> frame_analysis(const FrameSpec& spec, const SampledFunction& f);
// sum_lambda c_lambda pi(lambda) psi
SampledFunction frame_reconstruct(const FrameSpec& spec, const std::vector<double>& coefs);
// S f = sum_lambda <f, pi(lambda) psi> pi(lambda) psi
SampledFunction frame_apply(const FrameSpec& spec, const SampledFunction& f);

struct DualSolve {
  std::vector<double> coefs;  // <g, pi(lambda) psi> with S g = f
  SampledFunction g;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  // ||S g - f|| / ||f||
};
// Conjugate gradients on S g = f.
DualSolve frame_dual_solve(const FrameSpec& spec, const SampledFunction& f, double tol,
                           int max_iter);

struct FrameBounds {
  double A = 0.0, B = 0.0;
  double ratio() const { return A > 0 ? B / A : 0.0; }
};
// Range of <S f, f>/||f||^2 over the given functions.
FrameBounds frame_rayleigh(const FrameSpec& spec, const std::vector<SampledFunction>& fs);
// sum_{j_min < j < j_max} m(2^{-j} A^{1/nu})^2 f with the discrete
// normalization of the filter profile: the part of f that Lambda resolves.
SampledFunction frame_band(const FrameSpec& spec, const SampledFunction& f);

}  // namespace hogroup
