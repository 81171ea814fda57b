#pragma once

#include <limits>
#include <vector>

#include "hogroup/dyadic.hpp"
#include "hogroup/operator.hpp"

namespace hogroup {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Space { Besov, TL };
// Pieces used in the aggregation: |f*phi_t|, (phi*_t f)_a or (phi**_t f)_a.
enum class Flavor { Plain, Peetre, PeetreStar };

struct NormParams {
  double sigma = 0.0;
  double p = 2.0;
  double q = 2.0;
  double a = 0.0;  // Peetre exponent, used by the Peetre flavors
};

// Lower bound for a: max{Q/(p^q), |s|} (TL, p < inf), max{Q/p, |s|} (Besov),
// max{Q/q, |s|} (TL, p = inf, q < inf), max{Q, |s|} (TL, p = q = inf).
double peetre_bound(const NormParams& np, Space space, int Q);
// Throws Error("lpnorms", ...) for p, q outside (0, inf] or a <= bound when
// the flavor is not Plain.
void validate(const NormParams& np, Space space, int Q, Flavor flavor);

struct NormValue {
  double value = 0.0;
  // Share of the value carried by the two end scales of the stored range.
  double tail_fraction = 0.0;
};

// Pieces f*phi_{2^{-j}}, j = j_min..j_max (or their Peetre envelopes).
struct LPDecomposition {
  Multiplier m;
  OperatorPtr op;
  int j_min = 0, j_max = -1;
  std::vector<SampledFunction> pieces;
  std::vector<bool> resolved;  // 2^{-j} inside the resolvable band
  Flavor flavor = Flavor::Plain;
  double a = 0.0;

  std::size_t size() const { return pieces.size(); }
  const SampledFunction& piece(int j) const { return pieces[j - j_min]; }
  const Grid& grid() const { return *op->grid(); }
};

LPDecomposition lp_decompose(const SampledFunction& f, const CalderonFilter& filter, int j_min,
                             int j_max);
// Scales j whose multiplier support [1/2, 2] 2^j meets the discrete spectrum
// of A^{1/nu}, taking pi/diameter as the smallest nonzero frequency.
std::pair<int, int> spectral_j_range(const HomOperator& op);
// Replaces every piece by its Peetre (or Peetre**) envelope with exponent a.
LPDecomposition peetre_envelopes(const LPDecomposition& dec, double a, bool star_star = false);

// (sum_j 2^{j s q} ||g_j||_p^q)^{1/q}
NormValue besov_norm(const LPDecomposition& dec, const NormParams& np);
// || (sum_j 2^{j s q} |g_j|^q)^{1/q} ||_p, p < inf.
NormValue tl_norm(const LPDecomposition& dec, const NormParams& np);
// Pointwise aggregate (sum_j 2^{j s q} |g_j(x)|^q)^{1/q}.
std::vector<double> tl_aggregate(const LPDecomposition& dec, double sigma, double q);

// sup_{k,l} ( avg_{B^k_l} sum_{j >= -k} |g_j|^q )^{1/q}, or for q = inf
// sup_{k,l} sup_{j >= -k} avg_{B^k_l} |g_j|. g[i] is g_{j_min + i}.
double cq_norm(const std::vector<std::vector<double>>& g, int j_min,
               const DyadicBallSystem& balls, double q);
NormValue tl_infinity_norm(const LPDecomposition& dec, const NormParams& np,
                           const DyadicBallSystem& balls);

// Averages of v over the in-box lattice points of the open balls B_r(x).
std::vector<double> ball_averages(const Grid& grid, const QuasiNorm& qn,
                                  const std::vector<double>& v, double r);

// Radii t_i = t_0 2^{i/16} covering [min h, diameter].
std::vector<double> hl_radii(const Grid& grid);
// (sup_t avg_{B_t(x)} |f|^r)^{1/r} over hl_radii, averages over in-box
// lattice points of the open ball.
SampledFunction hl_maximal(const SampledFunction& f, const QuasiNorm& qn, double r = 1.0);
// Same by the all-pairs route, for cross-checks.
SampledFunction hl_maximal_direct(const SampledFunction& f, const QuasiNorm& qn, double r = 1.0);

// sup_y |g(y)| / (1 + t^{-1}|y^{-1}x|)^a over grid points y, where g = f*phi_t.
SampledFunction peetre_maximal(const SampledFunction& g, const QuasiNorm& qn, double t, double a);
SampledFunction peetre_maximal(const SampledFunction& f, const CalderonFilter& filter, double t,
                               double a);
// Double loop without the offset table or SIMD kernels.
SampledFunction peetre_maximal_direct(const SampledFunction& g, const QuasiNorm& qn, double t,
                                      double a);
// sup over s in `s_nodes` with t/2 <= s <= 2t of (phi*_s f)_a.
SampledFunction peetre_star_star(const SampledFunction& f, const CalderonFilter& filter, double t,
                                 double a, const std::vector<double>& s_nodes);

// Pieces f*phi_t on t_m = 2^{m/K} in [t_min, t_max]; dt/t is replaced by
// weight ln2/K per node.
struct ContinuousLP {
  Multiplier m;
  OperatorPtr op;
  int K = 8;
  std::vector<double> t;
  std::vector<SampledFunction> pieces;
  Flavor flavor = Flavor::Plain;
  double a = 0.0;

  double weight() const;
  const Grid& grid() const { return *op->grid(); }
};

ContinuousLP lp_decompose_continuous(const SampledFunction& f, const CalderonFilter& filter,
                                     double t_min, double t_max, int K = 8);
ContinuousLP peetre_envelopes(const ContinuousLP& clp, double a, bool star_star = false);

// (int t^{-s q} ||F_t||_p^q dt/t)^{1/q}
NormValue continuous_besov_norm(const ContinuousLP& clp, const NormParams& np);
// || (int t^{-s q} |F_t|^q dt/t)^{1/q} ||_p, p < inf.
NormValue continuous_tl_norm(const ContinuousLP& clp, const NormParams& np);
// sup_{x,t} ( avg_{B_t(x)} int_0^t s^{-s q} |F_s|^q ds/s )^{1/q}, with the
// q = inf variant sup_{s <= t} avg_{B_t(x)} s^{-sigma} |F_s|.
NormValue continuous_tl_infinity(const ContinuousLP& clp, const NormParams& np,
                                 const QuasiNorm& qn);

struct SubmeanReport {
  bool defined = false;  // false when f*phi_t vanishes at every sample
  std::vector<double> t;
  std::vector<double> C;  // per t: max over samples of lhs / rhs
  double spread = 0.0;    // max C / min C
};
// |f*phi_t(y)| <= C ( int int (s/t ^ t/s)^{Mr} s^{-Q} |f*phi_s(z)|^r
//                     / (1 + s^{-1}|z^{-1}y|)^{Mr} dz ds/s )^{1/r}
// at t = clp.t[i] for i in t_index and every `stride`-th grid point y.
SubmeanReport verify_submeanvalue(const ContinuousLP& clp, const QuasiNorm& qn,
                                  const std::vector<std::size_t>& t_index, double r, double M,
                                  std::size_t stride = 1);
// The right-hand side integral (before the 1/r power) at one (t, y).
double submean_rhs(const ContinuousLP& clp, const QuasiNorm& qn, double t, std::size_t y,
                   double r, double M);

struct MajorantReport {
  std::vector<double> t;
  std::vector<double> C;  // per t: max_x lhs(x) / Mf(x)
  double spread = 0.0;
  double kernel_integral = 0.0;  // int (1 + |z|)^{-a} dz on the grid
};
// int t^{-Q} |f(y)| / (1 + t^{-1}|y^{-1}x|)^a dy <= C Mf(x); a > Q.
MajorantReport verify_majorant(const SampledFunction& f, const QuasiNorm& qn,
                               const std::vector<double>& ts, double a);

struct AoeReport {
  std::vector<double> log_ratio;  // log(s/t)
  std::vector<double> value;      // ||phi_t * phi_s||_inf max(t,s)^Q
  double slope_fine = 0.0;        // decay rate for s < t
  double slope_coarse = 0.0;      // decay rate for s > t
  int points_fine = 0, points_coarse = 0;
};
// Kernel sup norms of m(t A^{1/nu}) m(s A^{1/nu}) for s = t 2^u, u in `u`,
// with decay rates fitted on each side over values above floor * peak.
AoeReport verify_aoe(const HomOperator& op, const SpectralFn& m, double t,
                     const std::vector<double>& u, double floor = 1e-9);
// m(l) = l^{2k} exp(-l^2) with k = ceil((M+1)/2), so the kernel moments
// through order M vanish (those of order < 2k).
SpectralFn moment_profile(int M);

}  // namespace hogroup
