#include <algorithm>
#include <cmath>
#include <numeric>

#include "hogroup/detail/envelopes.hpp"
#include "hogroup/error.hpp"
#include "hogroup/lpnorms.hpp"

namespace hogroup {

namespace {

void check_pq(const NormParams& np) {
  if (!(np.p > 0) || !(np.q > 0)) throw Error("lpnorms", "invalid_pq", "p and q must be in (0, inf]");
}

}  // namespace

double ContinuousLP::weight() const { return std::log(2.0) / K; }

ContinuousLP lp_decompose_continuous(const SampledFunction& f, const CalderonFilter& filter,
                                     double t_min, double t_max, int K) {
  if (filter.m.kind() != Multiplier::Kind::Continuous)
    throw Error("lpnorms", "filter_tag", "continuous decomposition needs a continuous filter");
  if (K < 8) throw Error("lpnorms", "nodes", "at least 8 nodes per octave");
  if (!(t_min > 0) || !(t_max >= t_min)) throw Error("lpnorms", "t_range", "bad scale range");
  ContinuousLP clp{filter.m, filter.op, K, {}, {}};
  const long m0 = std::lround(std::ceil(K * std::log2(t_min) - 1e-9));
  const long m1 = std::lround(std::floor(K * std::log2(t_max) + 1e-9));
  for (long m = m0; m <= m1; ++m) clp.t.push_back(std::exp2(double(m) / K));
  clp.pieces = apply_multipliers(*filter.op, filter.m, clp.t, f);
  return clp;
}

ContinuousLP peetre_envelopes(const ContinuousLP& clp, double a, bool star_star) {
  if (!(a > 0)) throw Error("lpnorms", "invalid_a", "Peetre exponent must be positive");
  if (clp.flavor != Flavor::Plain)
    throw Error("lpnorms", "flavor", "envelopes of envelopes are not defined");
  ContinuousLP out = clp;
  detail::envelope_pieces(out, clp.t, a, clp.K, star_star);
  return out;
}

NormValue continuous_besov_norm(const ContinuousLP& clp, const NormParams& np) {
  check_pq(np);
  const double vol = clp.grid().cell_volume();
  std::vector<double> b;
  for (std::size_t m = 0; m < clp.t.size(); ++m)
    b.push_back(std::pow(clp.t[m], -np.sigma) * lp_norm(clp.pieces[m].values(), vol, np.p));
  NormValue r;
  if (std::isinf(np.q)) {
    r.value = b.empty() ? 0.0 : *std::max_element(b.begin(), b.end());
    if (r.value > 0) r.tail_fraction = std::max(b.front(), b.back()) / r.value;
    return r;
  }
  double s = 0.0;
  for (double x : b) s += clp.weight() * std::pow(x, np.q);
  r.value = std::pow(s, 1.0 / np.q);
  if (s > 0)
    r.tail_fraction =
        clp.weight() * (std::pow(b.front(), np.q) + (b.size() > 1 ? std::pow(b.back(), np.q) : 0)) / s;
  return r;
}

namespace {

std::vector<double> continuous_aggregate(const ContinuousLP& clp, double sigma, double q,
                                         std::size_t m_lo, std::size_t m_hi) {
  const std::size_t M = clp.grid().size();
  std::vector<double> G(M, 0.0);
  for (std::size_t m = m_lo; m < m_hi; ++m) {
    const double w = std::pow(clp.t[m], -sigma);
    const auto& v = clp.pieces[m].values();
    if (std::isinf(q)) {
      for (std::size_t x = 0; x < M; ++x) G[x] = std::max(G[x], w * std::fabs(v[x]));
    } else {
      const double c = clp.weight() * std::pow(w, q);
      for (std::size_t x = 0; x < M; ++x) G[x] += c * std::pow(std::fabs(v[x]), q);
    }
  }
  if (!std::isinf(q))
    for (double& g : G) g = std::pow(g, 1.0 / q);
  return G;
}

}  // namespace

NormValue continuous_tl_norm(const ContinuousLP& clp, const NormParams& np) {
  check_pq(np);
  if (std::isinf(np.p))
    throw Error("lpnorms", "p_infinity", "use continuous_tl_infinity for p = infinity");
  const double vol = clp.grid().cell_volume();
  const std::size_t n = clp.t.size();
  NormValue r;
  r.value = lp_norm(continuous_aggregate(clp, np.sigma, np.q, 0, n), vol, np.p);
  if (r.value > 0 && n > 0) {
    auto a = continuous_aggregate(clp, np.sigma, np.q, 0, 1);
    auto b = continuous_aggregate(clp, np.sigma, np.q, n - 1, n);
    for (std::size_t x = 0; x < a.size(); ++x)
      a[x] = std::isinf(np.q) ? std::max(a[x], b[x])
                              : std::pow(std::pow(a[x], np.q) + std::pow(b[x], np.q), 1.0 / np.q);
    r.tail_fraction = lp_norm(a, vol, np.p) / r.value;
  }
  return r;
}

NormValue continuous_tl_infinity(const ContinuousLP& clp, const NormParams& np,
                                 const QuasiNorm& qn) {
  check_pq(np);
  const Grid& G = clp.grid();
  const std::size_t M = G.size();
  const std::size_t n = clp.t.size();
  NormValue r;
  double tail = 0.0;
  std::vector<double> acc(M, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    const double w = std::pow(clp.t[m], -np.sigma);
    const auto& v = clp.pieces[m].values();
    double here = 0.0;
    if (std::isinf(np.q)) {
      for (std::size_t i = 0; i <= m; ++i) {
        std::vector<double> a(M);
        const double wi = std::pow(clp.t[i], -np.sigma);
        for (std::size_t x = 0; x < M; ++x) a[x] = wi * std::fabs(clp.pieces[i][x]);
        auto avg = ball_averages(G, qn, a, clp.t[m]);
        here = std::max(here, *std::max_element(avg.begin(), avg.end()));
      }
    } else {
      const double c = clp.weight() * std::pow(w, np.q);
      for (std::size_t x = 0; x < M; ++x) acc[x] += c * std::pow(std::fabs(v[x]), np.q);
      auto avg = ball_averages(G, qn, acc, clp.t[m]);
      here = std::pow(*std::max_element(avg.begin(), avg.end()), 1.0 / np.q);
    }
    r.value = std::max(r.value, here);
    if (m == 0 || m + 1 == n) tail = std::max(tail, here);
  }
  if (r.value > 0) r.tail_fraction = tail / r.value;
  return r;
}

}  // namespace hogroup

namespace hogroup {

namespace {

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

AoeReport verify_aoe(const HomOperator& op, const SpectralFn& m, double t,
                     const std::vector<double>& u, double floor) {
  const Grid& G = *op.grid();
  const int Q = G.algebra().homogeneous_dimension();
  const double inv_nu = 1.0 / op.degree();
  std::vector<SpectralFn> gs;
  for (double ui : u) {
    const double s = t * std::exp2(ui);
    gs.push_back([&m, t, s, inv_nu](double l) {
      if (l <= 0) return 0.0;
      double r = std::pow(l, inv_nu);
      return m(t * r) * m(s * r);
    });
  }
  auto kernels = op.apply_functions(gs, identity_mass(op.grid()));
  AoeReport rep;
  double peak = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double s = t * std::exp2(u[i]);
    double sup = 0.0;
    for (double v : kernels[i].values()) sup = std::max(sup, std::fabs(v));
    rep.log_ratio.push_back(u[i] * std::log(2.0));
    rep.value.push_back(sup * std::pow(std::max(t, s), Q));
    peak = std::max(peak, rep.value.back());
  }
  // The decay rate is read off away from the diagonal, |log2(s/t)| >= 1.
  std::vector<double> xf, yf, xc, yc;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(rep.value[i] > floor * peak)) continue;
    if (u[i] <= -1.0) xf.push_back(-rep.log_ratio[i]), yf.push_back(std::log(rep.value[i]));
    if (u[i] >= 1.0) xc.push_back(rep.log_ratio[i]), yc.push_back(std::log(rep.value[i]));
  }
  rep.points_fine = int(xf.size());
  rep.points_coarse = int(xc.size());
  rep.slope_fine = xf.size() >= 2 ? -fit_slope(xf, yf) : std::nan("");
  rep.slope_coarse = xc.size() >= 2 ? -fit_slope(xc, yc) : std::nan("");
  return rep;
}

SpectralFn moment_profile(int M) {
  if (M < 0) throw Error("lpnorms", "moments", "moment order must be nonnegative");
  const int k = (M + 2) / 2;
  return [k](double l) { return std::pow(l, 2 * k) * std::exp(-l * l); };
}

}  // namespace hogroup
