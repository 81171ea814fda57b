#include <cmath>

#include "hogroup/error.hpp"
#include "hogroup/wavelet.hpp"

namespace hogroup {

namespace {

double inner(const SampledFunction& a, const SampledFunction& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * a.grid().cell_volume();
}

double level_scale(int j) { return std::ldexp(1.0, -j); }

}  // namespace

std::vector<FrameLevel> frame_levels(const FrameSpec& spec) {
  const OperatorPtr& op = spec.psi.op;
  if (!op) throw Error("wavelet", "frame_spec", "missing analyzing filter");
  check_admissible(spec.psi);
  if (!(spec.beta > 0)) throw Error("wavelet", "frame_spec", "beta must be positive");
  if (spec.j_max < spec.j_min) throw Error("wavelet", "frame_spec", "j_max < j_min");
  const Grid& G = *op->grid();
  if (G.identity_index() < 0)
    throw Error("wavelet", "frame_spec", "the identity must be a lattice point");
  const int d = G.dim();
  std::vector<int> id(d);
  G.unflatten(static_cast<std::size_t>(G.identity_index()), id.data());
  std::vector<FrameLevel> levels;
  for (int j = spec.j_min; j <= spec.j_max; ++j) {
    FrameLevel L;
    L.j = j;
    L.s = level_scale(j);
    std::vector<long> stride(d);
    for (int i = 0; i < d; ++i) {
      double steps = std::pow(L.s, G.algebra().weight(i)) * spec.beta / G.spacing(i);
      long k = std::lround(steps);
      if (k < 1 || std::fabs(steps - double(k)) > 1e-9 * steps)
        throw Error("wavelet", "frame_lattice",
                    "beta 2^{-j} is not a whole number of grid steps at j=" + std::to_string(j));
      stride[i] = k;
    }
    std::vector<int> idx(d);
    for (std::size_t p = 0; p < G.size(); ++p) {
      G.unflatten(p, idx.data());
      bool on = true;
      for (int i = 0; i < d && on; ++i) on = (idx[i] - id[i]) % stride[i] == 0;
      if (on) L.sites.push_back(p);
    }
    levels.push_back(std::move(L));
  }
  return levels;
}

std::size_t frame_size(const FrameSpec& spec) {
  std::size_t n = 0;
  for (const auto& L : frame_levels(spec)) n += L.sites.size();
  return n;
}

namespace {

std::vector<double> analysis(const FrameSpec& spec, const std::vector<FrameLevel>& levels,
                             const SampledFunction& f) {
  const double Q = f.grid().algebra().homogeneous_dimension();
  std::vector<double> ts;
  for (const auto& L : levels) ts.push_back(L.s);
  auto pieces = apply_multipliers(*spec.psi.op, spec.psi.m, ts, f);
  std::vector<double> c;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const double w = std::pow(levels[l].s, Q / 2);
    for (std::size_t p : levels[l].sites) c.push_back(w * pieces[l][p]);
  }
  return c;
}

SampledFunction synthesis(const FrameSpec& spec, const std::vector<FrameLevel>& levels,
                          const std::vector<double>& c) {
  const GridPtr& grid = spec.psi.op->grid();
  const double Q = grid->algebra().homogeneous_dimension();
  const double vol = grid->cell_volume();
  SampledFunction out = SampledFunction::zeros(grid);
  std::size_t k = 0;
  for (const auto& L : levels) {
    SampledFunction D = SampledFunction::zeros(grid);
    for (std::size_t p : L.sites) D[p] = c[k++] / vol;
    out += std::pow(L.s, Q / 2) * apply_multiplier(*spec.psi.op, spec.psi.m, L.s, D);
  }
  return out;
}

}  // namespace

std::vector<double> frame_analysis(const FrameSpec& spec, const SampledFunction& f) {
  return analysis(spec, frame_levels(spec), f);
}

SampledFunction frame_reconstruct(const FrameSpec& spec, const std::vector<double>& coefs) {
  auto levels = frame_levels(spec);
  std::size_t n = 0;
  for (const auto& L : levels) n += L.sites.size();
  if (coefs.size() != n)
    throw Error("wavelet", "coefficient_count",
                "expected " + std::to_string(n) + " coefficients, got " + std::to_string(coefs.size()));
  return synthesis(spec, levels, coefs);
}

SampledFunction frame_apply(const FrameSpec& spec, const SampledFunction& f) {
  auto levels = frame_levels(spec);
  return synthesis(spec, levels, analysis(spec, levels, f));
}

DualSolve frame_dual_solve(const FrameSpec& spec, const SampledFunction& f, double tol,
                           int max_iter) {
  auto levels = frame_levels(spec);
  auto S = [&](const SampledFunction& v) { return synthesis(spec, levels, analysis(spec, levels, v)); };
  DualSolve out;
  out.g = SampledFunction::zeros(f.grid_ptr());
  const double fn = std::sqrt(inner(f, f));
  if (fn == 0.0) {
    out.converged = true;
    out.coefs = analysis(spec, levels, out.g);
    return out;
  }
  // On the part of f outside the range of S the residual stops decreasing and
  // the iterates drift, so the iterate with the smallest residual is kept.
  SampledFunction r = f, p = f, g = out.g;
  double rr = inner(r, r), best = rr;
  int it = 0;
  while (it < max_iter && std::sqrt(rr) > tol * fn) {
    SampledFunction Sp = S(p);
    double pSp = inner(p, Sp);
    if (!(pSp > 0)) break;
    double alpha = rr / pSp;
    g += alpha * p;
    r -= alpha * Sp;
    double rr2 = inner(r, r);
    p = r + (rr2 / rr) * p;
    rr = rr2;
    ++it;
    if (rr < best) best = rr, out.g = g, out.iterations = it;
  }
  // True residual rather than the recursive one.
  SampledFunction res = S(out.g) - f;
  out.residual = std::sqrt(inner(res, res)) / fn;
  out.converged = out.residual <= tol * (1 + 1e-6);
  out.coefs = analysis(spec, levels, out.g);
  return out;
}

FrameBounds frame_rayleigh(const FrameSpec& spec, const std::vector<SampledFunction>& fs) {
  auto levels = frame_levels(spec);
  FrameBounds b;
  bool first = true;
  for (const auto& f : fs) {
    double ff = inner(f, f);
    if (!(ff > 0)) continue;
    double q = inner(synthesis(spec, levels, analysis(spec, levels, f)), f) / ff;
    if (first) b.A = b.B = q, first = false;
    b.A = std::min(b.A, q);
    b.B = std::max(b.B, q);
  }
  return b;
}

SampledFunction frame_band(const FrameSpec& spec, const SampledFunction& f) {
  const OperatorPtr& op = spec.psi.op;
  Multiplier md = Multiplier::discrete(Bump());
  const double nu = op->degree();
  const int j0 = spec.j_min + 1, j1 = spec.j_max - 1;
  SpectralFn g = [=](double lambda) {
    if (!(lambda > 0)) return 0.0;
    const double r = std::pow(lambda, 1.0 / nu);
    double s = 0.0;
    for (int j = j0; j <= j1; ++j) {
      double v = md(std::ldexp(r, -j));
      s += v * v;
    }
    return s;
  };
  return op->apply_function(g, f);
}

}  // namespace hogroup
