#include "hogroup/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hogroup/error.hpp"

namespace hogroup {

GPoint gmul(const GradedAlgebra& g, const GPoint& a, const GPoint& b) {
  return {g.multiply(a.x, g.dilate(b.x, a.s)), a.s * b.s};
}

GPoint ginv(const GradedAlgebra& g, const GPoint& a) {
  return {g.dilate(g.inverse(a.x), 1.0 / a.s), 1.0 / a.s};
}

double modular(const GradedAlgebra& g, const GPoint& a) {
  return std::pow(a.s, -double(g.homogeneous_dimension()));
}

double WaveletCoefs::weight() const { return std::log(2.0) / K; }

void check_admissible(const CalderonFilter& psi, double tol) {
  if (psi.m.kind() != Multiplier::Kind::Continuous)
    throw Error("wavelet", "not_admissible", "the analyzing filter must carry the continuous tag");
  const SampledFunction& k = psi.kernel;
  const double n = lp_norm(k, 2.0);
  if (!(n > 0)) throw Error("wavelet", "not_admissible", "vanishing kernel");
  if (k.is_complex() && lp_norm(k.imag(), k.grid().cell_volume(), 2.0) > tol * n)
    throw Error("wavelet", "not_admissible", "kernel is not real");
  // Reflection x -> x^{-1} = -x on the lattice about the identity; pairs
  // leaving the box are skipped.
  const Grid& G = k.grid();
  if (G.identity_index() < 0)
    throw Error("wavelet", "not_admissible", "the identity must be a lattice point");
  const int d = G.dim();
  std::vector<int> id(d), idx(d), ref(d);
  G.unflatten(static_cast<std::size_t>(G.identity_index()), id.data());
  double odd = 0.0, all = 0.0;
  for (std::size_t p = 0; p < G.size(); ++p) {
    G.unflatten(p, idx.data());
    bool in = true;
    for (int i = 0; i < d; ++i) {
      ref[i] = 2 * id[i] - idx[i];
      in = in && ref[i] >= 0 && ref[i] < G.n(i);
    }
    if (!in) continue;
    double u = k[p] - k[G.flatten(ref.data())];
    odd += u * u;
    all += k[p] * k[p];
  }
  if (odd > tol * tol * all)
    throw Error("wavelet", "not_admissible",
                "kernel is not even (relative defect " + std::to_string(std::sqrt(odd / all)) + ")");
}

WaveletCoefs wavelet_transform(const SampledFunction& f, const CalderonFilter& psi, double s_min,
                               double s_max, int K, double even_tol) {
  check_admissible(psi, even_tol);
  if (K < 1 || !(s_min > 0) || !(s_max >= s_min))
    throw Error("wavelet", "scale_range", "bad scale lattice");
  if (!(f.grid() == *psi.op->grid()))
    throw Error("wavelet", "grid_mismatch", "function and filter live on different grids");
  WaveletCoefs V;
  V.grid = f.grid_ptr();
  V.K = K;
  const long m0 = std::lround(std::ceil(K * std::log2(s_min) - 1e-9));
  const long m1 = std::lround(std::floor(K * std::log2(s_max) + 1e-9));
  for (long m = m0; m <= m1; ++m) V.s.push_back(std::exp2(double(m) / K));
  auto pieces = apply_multipliers(*psi.op, psi.m, V.s, f);
  const double Q = f.grid().algebra().homogeneous_dimension();
  for (std::size_t m = 0; m < V.s.size(); ++m) {
    V.values.push_back(std::move(pieces[m].values()));
    const double c = std::pow(V.s[m], Q / 2);
    for (double& v : V.values.back()) v *= c;
  }
  return V;
}

std::vector<double> wavelet_transform(const SampledFunction& f, const CalderonFilter& psi,
                                      const std::vector<GPoint>& points, double even_tol) {
  check_admissible(psi, even_tol);
  std::map<double, std::vector<std::size_t>> by_scale;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].s > 0)) throw Error("wavelet", "scale_range", "scale must be positive");
    by_scale[points[i].s].push_back(i);
  }
  std::vector<double> ts;
  for (const auto& [s, ids] : by_scale) ts.push_back(s);
  auto pieces = apply_multipliers(*psi.op, psi.m, ts, f);
  const double Q = f.grid().algebra().homogeneous_dimension();
  std::vector<double> out(points.size());
  std::size_t k = 0;
  for (const auto& [s, ids] : by_scale) {
    const double c = std::pow(s, Q / 2);
    for (std::size_t i : ids) out[i] = c * pieces[k].sample(points[i].x);
    ++k;
  }
  return out;
}

double coefficient_l2(const WaveletCoefs& F) {
  const double Q = F.grid->algebra().homogeneous_dimension();
  const double vol = F.grid->cell_volume();
  double s = 0.0;
  for (std::size_t m = 0; m < F.scales(); ++m) {
    double e = 0.0;
    for (double v : F.values[m]) e += v * v;
    s += F.weight() * std::pow(F.s[m], -Q) * e * vol;
  }
  return std::sqrt(s);
}

std::vector<std::vector<double>> coefficient_envelopes(const WaveletCoefs& F, double a) {
  if (!(a > 0)) throw Error("wavelet", "invalid_a", "Peetre exponent must be positive");
  QuasiNorm qn = QuasiNorm::canonical(F.grid->algebra());
  std::vector<std::vector<double>> env(F.scales());
  for (std::size_t m = 0; m < F.scales(); ++m)
    env[m] = peetre_maximal(SampledFunction(F.grid, F.values[m]), qn, F.s[m], a).values();
  return env;
}

namespace {

void check_params(const NormParams& np) {
  if (!(np.p > 0) || !(np.q > 0)) throw Error("wavelet", "invalid_pq", "p and q must be in (0, inf]");
  if (!(np.a > 0)) throw Error("wavelet", "invalid_a", "Peetre exponent must be positive");
}

}  // namespace

double peetre_space_norm(const WaveletCoefs& F, const std::vector<std::vector<double>>& env,
                         const NormParams& np) {
  check_params(np);
  const Grid& G = *F.grid;
  const double Q = G.algebra().homogeneous_dimension();
  const std::size_t M = G.size();
  const std::size_t n = F.scales();
  if (!std::isinf(np.p)) {
    std::vector<double> agg(M, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      const double w = std::pow(F.s[m], -np.sigma);
      if (std::isinf(np.q)) {
        for (std::size_t x = 0; x < M; ++x) agg[x] = std::max(agg[x], w * env[m][x]);
      } else {
        const double c = F.weight() * std::pow(F.s[m], -Q) * std::pow(w, np.q);
        for (std::size_t x = 0; x < M; ++x) agg[x] += c * std::pow(env[m][x], np.q);
      }
    }
    if (!std::isinf(np.q))
      for (double& v : agg) v = std::pow(v, 1.0 / np.q);
    return lp_norm(agg, G.cell_volume(), np.p);
  }
  QuasiNorm qn = QuasiNorm::canonical(G.algebra());
  double best = 0.0;
  std::vector<double> acc(M, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    const double t = F.s[m];
    if (std::isinf(np.q)) {
      for (std::size_t i = 0; i <= m; ++i) {
        std::vector<double> a(M);
        const double w = std::pow(F.s[i], -np.sigma);
        for (std::size_t x = 0; x < M; ++x) a[x] = w * env[i][x];
        auto avg = ball_averages(G, qn, a, t);
        best = std::max(best, *std::max_element(avg.begin(), avg.end()));
      }
    } else {
      const double c = F.weight() * std::pow(t, -Q) * std::pow(t, -np.sigma * np.q);
      for (std::size_t x = 0; x < M; ++x) acc[x] += c * std::pow(env[m][x], np.q);
      auto avg = ball_averages(G, qn, acc, t);
      best = std::max(best, std::pow(*std::max_element(avg.begin(), avg.end()), 1.0 / np.q));
    }
  }
  return best;
}

double mixed_space_norm(const WaveletCoefs& F, const std::vector<std::vector<double>>& env,
                        const NormParams& np) {
  check_params(np);
  const double Q = F.grid->algebra().homogeneous_dimension();
  const double vol = F.grid->cell_volume();
  double s = 0.0;
  for (std::size_t m = 0; m < F.scales(); ++m) {
    const double b = std::pow(F.s[m], -np.sigma) * lp_norm(env[m], vol, np.p);
    if (std::isinf(np.q)) s = std::max(s, b);
    else s += F.weight() * std::pow(F.s[m], -Q) * std::pow(b, np.q);
  }
  return std::isinf(np.q) ? s : std::pow(s, 1.0 / np.q);
}

double peetre_space_norm(const WaveletCoefs& F, const NormParams& np) {
  check_params(np);
  return peetre_space_norm(F, coefficient_envelopes(F, np.a), np);
}

double mixed_space_norm(const WaveletCoefs& F, const NormParams& np) {
  check_params(np);
  return mixed_space_norm(F, coefficient_envelopes(F, np.a), np);
}

WaveletNorms norm_via_wavelet(const WaveletCoefs& V, const NormParams& np) {
  check_params(np);
  const double Q = V.grid->algebra().homogeneous_dimension();
  const double bound = std::max(Q / std::min(np.p, np.q), std::fabs(np.sigma));
  if (!(np.a > bound))
    throw Error("wavelet", "invalid_a",
                "Peetre exponent a=" + std::to_string(np.a) + " must exceed " + std::to_string(bound));
  NormParams shifted = np;
  shifted.sigma = np.sigma + Q / 2 - (std::isinf(np.q) ? 0.0 : Q / np.q);
  auto env = coefficient_envelopes(V, np.a);
  return {mixed_space_norm(V, env, shifted), peetre_space_norm(V, env, shifted)};
}

WaveletNorms norm_via_wavelet(const SampledFunction& f, const CalderonFilter& psi,
                              const NormParams& np, double s_min, double s_max, int K) {
  return norm_via_wavelet(wavelet_transform(f, psi, s_min, s_max, K), np);
}

}  // namespace hogroup
