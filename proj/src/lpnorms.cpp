#include "hogroup/lpnorms.hpp"

#include <algorithm>
#include <cmath>

#include "hogroup/detail/envelopes.hpp"
#include "hogroup/error.hpp"
#include "hogroup/parallel.hpp"

namespace hogroup {

namespace {

double aggregate(const std::vector<double>& b, double q) {
  if (std::isinf(q)) return b.empty() ? 0.0 : *std::max_element(b.begin(), b.end());
  double s = 0.0;
  for (double x : b) s += std::pow(x, q);
  return std::pow(s, 1.0 / q);
}

void check_pq(const NormParams& np) {
  if (!(np.p > 0) || !(np.q > 0)) throw Error("lpnorms", "invalid_pq", "p and q must be in (0, inf]");
}

}  // namespace

double peetre_bound(const NormParams& np, Space space, int Q) {
  const double s = std::fabs(np.sigma);
  if (space == Space::Besov) return std::max(Q / np.p, s);
  if (!std::isinf(np.p)) return std::max(Q / std::min(np.p, np.q), s);
  if (!std::isinf(np.q)) return std::max(Q / np.q, s);
  return std::max(double(Q), s);
}

void validate(const NormParams& np, Space space, int Q, Flavor flavor) {
  check_pq(np);
  if (flavor == Flavor::Plain) return;
  double b = peetre_bound(np, space, Q);
  if (!(np.a > b))
    throw Error("lpnorms", "invalid_a",
                "Peetre exponent a=" + std::to_string(np.a) + " must exceed " + std::to_string(b));
}

LPDecomposition lp_decompose(const SampledFunction& f, const CalderonFilter& filter, int j_min,
                             int j_max) {
  if (filter.m.kind() != Multiplier::Kind::Discrete)
    throw Error("lpnorms", "filter_tag", "discrete decomposition needs a discrete filter");
  if (j_max < j_min) throw Error("lpnorms", "j_range", "j_max < j_min");
  if (!(f.grid() == *filter.op->grid()))
    throw Error("lpnorms", "grid_mismatch", "function and filter live on different grids");
  LPDecomposition dec{filter.m, filter.op, j_min, j_max, {}, {}};
  std::vector<double> ts;
  auto band = resolvable_band(f.grid());
  for (int j = j_min; j <= j_max; ++j) {
    double t = std::ldexp(1.0, -j);
    ts.push_back(t);
    dec.resolved.push_back(t >= band.first * (1 - 1e-12) && t <= band.second * (1 + 1e-12));
  }
  dec.pieces = apply_multipliers(*filter.op, filter.m, ts, f);
  return dec;
}

std::pair<int, int> spectral_j_range(const HomOperator& op) {
  const double nu = op.degree();
  const auto [lmin, lmax] = op.spectral_bounds();
  const double r_lo = std::max(std::pow(std::max(lmin, 0.0), 1.0 / nu), M_PI / op.grid()->diameter());
  const double r_hi = std::pow(lmax, 1.0 / nu);
  return {int(std::floor(std::log2(r_lo / 2))), int(std::ceil(std::log2(2 * r_hi)))};
}

LPDecomposition peetre_envelopes(const LPDecomposition& dec, double a, bool star_star) {
  if (!(a > 0)) throw Error("lpnorms", "invalid_a", "Peetre exponent must be positive");
  if (dec.flavor != Flavor::Plain)
    throw Error("lpnorms", "flavor", "envelopes of envelopes are not defined");
  LPDecomposition out = dec;
  std::vector<double> ts;
  for (int j = dec.j_min; j <= dec.j_max; ++j) ts.push_back(std::ldexp(1.0, -j));
  detail::envelope_pieces(out, ts, a, 1, star_star);
  return out;
}

NormValue besov_norm(const LPDecomposition& dec, const NormParams& np) {
  check_pq(np);
  const double vol = dec.grid().cell_volume();
  std::vector<double> b;
  for (int j = dec.j_min; j <= dec.j_max; ++j)
    b.push_back(std::pow(2.0, j * np.sigma) * lp_norm(dec.piece(j).values(), vol, np.p));
  NormValue r;
  r.value = aggregate(b, np.q);
  if (r.value > 0) {
    std::vector<double> ends{b.front(), b.back()};
    if (b.size() == 1) ends.pop_back();
    double e = aggregate(ends, np.q);
    r.tail_fraction = std::isinf(np.q) ? e / r.value : std::pow(e / r.value, np.q);
  }
  return r;
}

std::vector<double> tl_aggregate(const LPDecomposition& dec, double sigma, double q) {
  const std::size_t M = dec.grid().size();
  std::vector<double> G(M, 0.0);
  for (int j = dec.j_min; j <= dec.j_max; ++j) {
    const double w = std::pow(2.0, j * sigma);
    const auto& v = dec.piece(j).values();
    if (std::isinf(q)) {
      for (std::size_t x = 0; x < M; ++x) G[x] = std::max(G[x], w * std::fabs(v[x]));
    } else {
      for (std::size_t x = 0; x < M; ++x) G[x] += std::pow(w * std::fabs(v[x]), q);
    }
  }
  if (!std::isinf(q))
    for (double& g : G) g = std::pow(g, 1.0 / q);
  return G;
}

NormValue tl_norm(const LPDecomposition& dec, const NormParams& np) {
  check_pq(np);
  if (std::isinf(np.p))
    throw Error("lpnorms", "p_infinity", "use tl_infinity_norm for p = infinity");
  const double vol = dec.grid().cell_volume();
  NormValue r;
  r.value = lp_norm(tl_aggregate(dec, np.sigma, np.q), vol, np.p);
  if (r.value > 0) {
    LPDecomposition ends = dec;
    for (int j = dec.j_min + 1; j < dec.j_max; ++j)
      ends.pieces[j - dec.j_min] = SampledFunction::zeros(dec.op->grid());
    r.tail_fraction = lp_norm(tl_aggregate(ends, np.sigma, np.q), vol, np.p) / r.value;
  }
  return r;
}

double cq_norm(const std::vector<std::vector<double>>& g, int j_min,
               const DyadicBallSystem& balls, double q) {
  if (!(q > 0)) throw Error("lpnorms", "invalid_pq", "q must be in (0, inf]");
  const std::size_t M = balls.grid().size();
  const int j_max = j_min + int(g.size()) - 1;
  double best = 0.0;
  for (int k = balls.k_min(); k <= balls.k_max(); ++k) {
    const int j0 = std::max(j_min, -k);
    if (j0 > j_max) continue;
    std::vector<double> S;
    if (!std::isinf(q)) {
      S.assign(M, 0.0);
      for (int j = j0; j <= j_max; ++j)
        for (std::size_t x = 0; x < M; ++x) S[x] += std::pow(std::fabs(g[j - j_min][x]), q);
    }
    const auto& ids = balls.balls(k);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto& mem = balls.members(k, i);
      if (mem.empty()) continue;
      if (!std::isinf(q)) {
        double s = 0.0;
        for (std::size_t p : mem) s += S[p];
        best = std::max(best, std::pow(s / mem.size(), 1.0 / q));
      } else {
        for (int j = j0; j <= j_max; ++j) {
          double s = 0.0;
          for (std::size_t p : mem) s += std::fabs(g[j - j_min][p]);
          best = std::max(best, s / mem.size());
        }
      }
    }
  }
  return best;
}

NormValue tl_infinity_norm(const LPDecomposition& dec, const NormParams& np,
                           const DyadicBallSystem& balls) {
  check_pq(np);
  if (!(balls.grid() == dec.grid()))
    throw Error("lpnorms", "grid_mismatch", "dyadic system built on another grid");
  std::vector<std::vector<double>> g;
  for (int j = dec.j_min; j <= dec.j_max; ++j) {
    g.push_back(dec.piece(j).values());
    const double w = std::pow(2.0, j * np.sigma);
    for (double& v : g.back()) v *= w;
  }
  NormValue r;
  r.value = cq_norm(g, dec.j_min, balls, np.q);
  if (r.value > 0) {
    for (std::size_t i = 1; i + 1 < g.size(); ++i) std::fill(g[i].begin(), g[i].end(), 0.0);
    r.tail_fraction = cq_norm(g, dec.j_min, balls, np.q) / r.value;
  }
  return r;
}

}  // namespace hogroup
