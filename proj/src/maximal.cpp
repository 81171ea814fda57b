#include <algorithm>
#include <cmath>
#include <numeric>

#include "hogroup/error.hpp"
#include "hogroup/kernels.hpp"
#include "hogroup/lpnorms.hpp"
#include "hogroup/parallel.hpp"

namespace hogroup {

namespace {

// w(|z|) for every lattice offset z of an abelian grid. Rows run along the
// last axis in reversed order, so for a fixed x the weights w(x - y) over a
// row of y are contiguous.
class OffsetTable {
 public:
  OffsetTable(const Grid& G, const QuasiNorm& qn, const std::function<double(double)>& w)
      : G_(G), d_(G.dim()), n_last_(G.n(G.dim() - 1)) {
    ext_.resize(d_);
    std::size_t total = 1;
    for (int i = 0; i < d_; ++i) total *= (ext_[i] = 2 * G.n(i) - 1);
    table_.resize(total);
    GroupPoint z(d_);
    for (std::size_t k = 0; k < total; ++k) {
      std::size_t r = k;
      for (int i = d_ - 1; i >= 0; --i) {
        int u = int(r % ext_[i]);
        r /= ext_[i];
        int off = i == d_ - 1 ? (G.n(i) - 1) - u : u - (G.n(i) - 1);
        z[i] = off * G.spacing(i);
      }
      table_[k] = w(qn(z));
    }
  }

  // f(y_row, w_row, n) for each row of y, where w_row[j] = w(x - y_j).
  template <class F>
  void rows(std::size_t x, F&& f) const {
    std::vector<int> ix(d_), iy(d_ > 1 ? d_ - 1 : 0, 0);
    G_.unflatten(x, ix.data());
    const std::size_t rows = G_.size() / n_last_;
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t rem = r, idx = 0, yrow = 0;
      for (int i = d_ - 2; i >= 0; --i) {
        iy[i] = int(rem % G_.n(i));
        rem /= G_.n(i);
      }
      for (int i = 0; i + 1 < d_; ++i) {
        idx = idx * ext_[i] + std::size_t(ix[i] - iy[i] + G_.n(i) - 1);
        yrow += iy[i] * G_.stride(i);
      }
      idx = idx * ext_[d_ - 1] + std::size_t(n_last_ - 1 - ix[d_ - 1]);
      f(yrow, table_.data() + idx, std::size_t(n_last_));
    }
  }

 private:
  const Grid& G_;
  int d_, n_last_;
  std::vector<std::size_t> ext_;
  std::vector<double> table_;
};

std::vector<GroupPoint> all_points(const Grid& G) {
  std::vector<GroupPoint> p(G.size());
  for (std::size_t i = 0; i < G.size(); ++i) p[i] = G.point(i);
  return p;
}

double min_spacing(const Grid& G) {
  double h = G.spacing(0);
  for (int i = 1; i < G.dim(); ++i) h = std::min(h, G.spacing(i));
  return h;
}

// Radii sit just below h 2^{i/16}, away from the lattice distances k h.
constexpr double kRadiusShrink = 1.0 - 1e-9;

}  // namespace

std::vector<double> hl_radii(const Grid& grid) {
  const double t0 = min_spacing(grid) * kRadiusShrink;
  const double diam = grid.diameter();
  std::vector<double> r;
  for (int i = 0;; ++i) {
    double t = t0 * std::exp2(i / 16.0);
    r.push_back(t);
    if (t > diam) break;
  }
  return r;
}

std::vector<double> ball_averages(const Grid& G, const QuasiNorm& qn, const std::vector<double>& v,
                                  double r) {
  const std::size_t M = G.size();
  std::vector<double> out(M, 0.0);
  if (G.dim() == 1) {
    std::vector<double> pre(M + 1, 0.0);
    for (std::size_t i = 0; i < M; ++i) pre[i + 1] = pre[i] + v[i];
    const double h = G.spacing(0);
    long k = long(std::ceil(r / h)) - 1;
    while ((k + 1) * h < r) ++k;
    while (k > 0 && k * h >= r) --k;
    for (std::size_t i = 0; i < M; ++i) {
      long a = std::max(0l, long(i) - k), b = std::min(long(M) - 1, long(i) + k);
      out[i] = (pre[b + 1] - pre[a]) / double(b - a + 1);
    }
    return out;
  }
  const auto& g = G.algebra();
  auto pts = all_points(G);
  parallel_for(M, [&](std::size_t b, std::size_t e) {
    for (std::size_t x = b; x < e; ++x) {
      double s = 0.0;
      std::size_t c = 0;
      for (std::size_t y = 0; y < M; ++y)
        if (qn.distance(g, pts[x], pts[y]) < r) s += v[y], ++c;
      out[x] = s / double(c);
    }
  });
  return out;
}

SampledFunction hl_maximal(const SampledFunction& f, const QuasiNorm& qn, double r) {
  if (!(r > 0)) throw Error("lpnorms", "invalid_r", "r must be positive");
  const Grid& G = f.grid();
  if (G.dim() != 1) return hl_maximal_direct(f, qn, r);
  const std::size_t M = G.size();
  std::vector<double> a(M);
  for (std::size_t i = 0; i < M; ++i) a[i] = std::pow(std::fabs(f[i]), r);
  std::vector<double> best(M, 0.0);
  for (double t : hl_radii(G)) {
    auto avg = ball_averages(G, qn, a, t);
    for (std::size_t i = 0; i < M; ++i) best[i] = std::max(best[i], avg[i]);
  }
  for (double& b : best) b = std::pow(b, 1.0 / r);
  return SampledFunction(f.grid_ptr(), std::move(best));
}

SampledFunction hl_maximal_direct(const SampledFunction& f, const QuasiNorm& qn, double r) {
  if (!(r > 0)) throw Error("lpnorms", "invalid_r", "r must be positive");
  const Grid& G = f.grid();
  const auto& g = G.algebra();
  const std::size_t M = G.size();
  const auto radii = hl_radii(G);
  const std::size_t R = radii.size();
  auto pts = all_points(G);
  std::vector<double> a(M), best(M, 0.0);
  for (std::size_t i = 0; i < M; ++i) a[i] = std::pow(std::fabs(f[i]), r);
  parallel_for(M, [&](std::size_t b, std::size_t e) {
    std::vector<double> sum(R + 1);
    std::vector<std::size_t> cnt(R + 1);
    for (std::size_t x = b; x < e; ++x) {
      std::fill(sum.begin(), sum.end(), 0.0);
      std::fill(cnt.begin(), cnt.end(), 0);
      for (std::size_t y = 0; y < M; ++y) {
        double d = qn.distance(g, pts[x], pts[y]);
        // first radius with d < t_i
        std::size_t i = std::upper_bound(radii.begin(), radii.end(), d) - radii.begin();
        sum[i] += a[y];
        ++cnt[i];
      }
      double s = 0.0, m = 0.0;
      std::size_t c = 0;
      for (std::size_t i = 0; i < R; ++i) {
        s += sum[i];
        c += cnt[i];
        if (c) m = std::max(m, s / double(c));
      }
      best[x] = std::pow(m, 1.0 / r);
    }
  });
  return SampledFunction(f.grid_ptr(), std::move(best));
}

SampledFunction peetre_maximal(const SampledFunction& g, const QuasiNorm& qn, double t, double a) {
  if (!(a > 0)) throw Error("lpnorms", "invalid_a", "Peetre exponent must be positive");
  if (!(t > 0)) throw Error("lpnorms", "scale", "scale must be positive");
  const Grid& G = g.grid();
  const std::size_t M = G.size();
  const auto& K = kernels::table(kernels::active_isa());
  std::vector<double> out(M, 0.0);
  auto weight = [t, a](double r) { return std::pow(1.0 + r / t, -a); };
  if (G.algebra().is_abelian()) {
    OffsetTable W(G, qn, weight);
    parallel_for(M, [&](std::size_t b, std::size_t e) {
      for (std::size_t x = b; x < e; ++x) {
        double m = 0.0;
        W.rows(x, [&](std::size_t y0, const double* w, std::size_t n) {
          m = std::max(m, K.max_weighted_abs(g.values().data() + y0, w, n));
        });
        out[x] = m;
      }
    });
  } else {
    const auto& alg = G.algebra();
    auto pts = all_points(G);
    parallel_for(M, [&](std::size_t b, std::size_t e) {
      std::vector<double> w(M);
      for (std::size_t x = b; x < e; ++x) {
        for (std::size_t y = 0; y < M; ++y) w[y] = weight(qn.distance(alg, pts[x], pts[y]));
        out[x] = K.max_weighted_abs(g.values().data(), w.data(), M);
      }
    });
  }
  return SampledFunction(g.grid_ptr(), std::move(out));
}

SampledFunction peetre_maximal(const SampledFunction& f, const CalderonFilter& filter, double t,
                               double a) {
  auto g = apply_multiplier(*filter.op, filter.m, t, f);
  return peetre_maximal(g, QuasiNorm::canonical(f.grid().algebra()), t, a);
}

SampledFunction peetre_maximal_direct(const SampledFunction& g, const QuasiNorm& qn, double t,
                                      double a) {
  const Grid& G = g.grid();
  const auto& alg = G.algebra();
  const std::size_t M = G.size();
  std::vector<double> out(M, 0.0);
  for (std::size_t x = 0; x < M; ++x) {
    GroupPoint px = G.point(x);
    for (std::size_t y = 0; y < M; ++y) {
      double d = qn.distance(alg, px, G.point(y));
      out[x] = std::max(out[x], std::fabs(g[y]) / std::pow(1.0 + d / t, a));
    }
  }
  return SampledFunction(g.grid_ptr(), std::move(out));
}

SampledFunction peetre_star_star(const SampledFunction& f, const CalderonFilter& filter, double t,
                                 double a, const std::vector<double>& s_nodes) {
  std::vector<double> ss;
  for (double s : s_nodes)
    if (s >= t / 2 * (1 - 1e-12) && s <= 2 * t * (1 + 1e-12)) ss.push_back(s);
  if (ss.empty()) throw Error("lpnorms", "scale", "no scale node within [t/2, 2t]");
  auto pieces = apply_multipliers(*filter.op, filter.m, ss, f);
  QuasiNorm qn = QuasiNorm::canonical(f.grid().algebra());
  SampledFunction out = SampledFunction::zeros(f.grid_ptr());
  for (std::size_t i = 0; i < ss.size(); ++i) {
    auto e = peetre_maximal(pieces[i], qn, ss[i], a);
    for (std::size_t p = 0; p < out.size(); ++p) out[p] = std::max(out[p], e[p]);
  }
  return out;
}

double submean_rhs(const ContinuousLP& clp, const QuasiNorm& qn, double t, std::size_t y,
                   double r, double M) {
  const Grid& G = clp.grid();
  const auto& alg = G.algebra();
  const int Q = alg.homogeneous_dimension();
  const std::size_t N = G.size();
  const double vol = G.cell_volume();
  GroupPoint py = G.point(y);
  std::vector<double> dist(N);
  for (std::size_t z = 0; z < N; ++z) dist[z] = qn.distance(alg, py, G.point(z));
  double total = 0.0;
  for (std::size_t m = 0; m < clp.t.size(); ++m) {
    const double s = clp.t[m];
    const double ratio = std::min(s / t, t / s);
    double inner = 0.0;
    const auto& v = clp.pieces[m].values();
    for (std::size_t z = 0; z < N; ++z)
      if (v[z] != 0.0) inner += std::pow(std::fabs(v[z]), r) * std::pow(1.0 + dist[z] / s, -M * r);
    total += clp.weight() * std::pow(ratio, M * r) * std::pow(s, -Q) * inner * vol;
  }
  return total;
}

SubmeanReport verify_submeanvalue(const ContinuousLP& clp, const QuasiNorm& qn,
                                  const std::vector<std::size_t>& t_index, double r, double M,
                                  std::size_t stride) {
  if (!(r > 0) || !(M > 0)) throw Error("lpnorms", "invalid_r", "r and M must be positive");
  const std::size_t N = clp.grid().size();
  stride = std::max<std::size_t>(stride, 1);
  SubmeanReport rep;
  for (std::size_t ti : t_index) {
    if (ti >= clp.t.size()) throw Error("lpnorms", "scale", "t index outside the decomposition");
    const double t = clp.t[ti];
    const auto& v = clp.pieces[ti].values();
    std::vector<std::size_t> ys;
    for (std::size_t y = 0; y < N; y += stride)
      if (v[y] != 0.0) ys.push_back(y);
    std::vector<double> c(ys.size(), 0.0);
    parallel_for(ys.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        double rhs = std::pow(submean_rhs(clp, qn, t, ys[i], r, M), 1.0 / r);
        if (rhs > 0) c[i] = std::fabs(v[ys[i]]) / rhs;
      }
    });
    if (c.empty()) continue;
    rep.defined = true;
    rep.t.push_back(t);
    rep.C.push_back(*std::max_element(c.begin(), c.end()));
  }
  if (!rep.defined) {
    rep.spread = std::nan("");
    return rep;
  }
  auto [lo, hi] = std::minmax_element(rep.C.begin(), rep.C.end());
  rep.spread = *hi / *lo;
  return rep;
}

MajorantReport verify_majorant(const SampledFunction& f, const QuasiNorm& qn,
                               const std::vector<double>& ts, double a) {
  const Grid& G = f.grid();
  const int Q = G.algebra().homogeneous_dimension();
  if (!(a > Q)) throw Error("lpnorms", "invalid_a", "the majorant property needs a > Q");
  const std::size_t M = G.size();
  const double vol = G.cell_volume();
  auto Mf = hl_maximal(f, qn, 1.0);
  const double mf_max = *std::max_element(Mf.values().begin(), Mf.values().end());
  std::vector<double> af(M);
  for (std::size_t i = 0; i < M; ++i) af[i] = std::fabs(f[i]);
  const auto& K = kernels::table(kernels::active_isa());
  const auto pts = all_points(G);
  MajorantReport rep;
  for (double t : ts) {
    auto w = [t, a, Q](double r) { return std::pow(t, -Q) * std::pow(1.0 + r / t, -a); };
    std::vector<double> lhs(M, 0.0);
    if (G.algebra().is_abelian()) {
      OffsetTable W(G, qn, w);
      parallel_for(M, [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
          double s = 0.0;
          W.rows(x, [&](std::size_t y0, const double* wr, std::size_t n) {
            s += K.dot(af.data() + y0, wr, n);
          });
          lhs[x] = s * vol;
        }
      });
    } else {
      parallel_for(M, [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
          double s = 0.0;
          for (std::size_t y = 0; y < M; ++y)
            if (af[y] != 0.0) s += af[y] * w(qn.distance(G.algebra(), pts[x], pts[y]));
          lhs[x] = s * vol;
        }
      });
    }
    double c = 0.0;
    for (std::size_t x = 0; x < M; ++x)
      if (Mf[x] > 1e-12 * mf_max) c = std::max(c, lhs[x] / Mf[x]);
    rep.t.push_back(t);
    rep.C.push_back(c);
  }
  if (!rep.C.empty()) {
    auto [lo, hi] = std::minmax_element(rep.C.begin(), rep.C.end());
    rep.spread = *lo > 0 ? *hi / *lo : std::nan("");
  }
  double s = 0.0;
  const double vol0 = G.cell_volume();
  for (const auto& p : pts) s += std::pow(1.0 + qn(p), -a) * vol0;
  rep.kernel_integral = s;
  return rep;
}

}  // namespace hogroup
