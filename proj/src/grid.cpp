#include "hogroup/grid.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "hogroup/error.hpp"
#include "hogroup/fft.hpp"
#include "hogroup/kernels.hpp"
#include "hogroup/parallel.hpp"
#include "hogroup/taylor.hpp"

namespace hogroup {

Grid::Grid(GradedAlgebra g, std::vector<double> lo, std::vector<double> hi,
           std::vector<int> n)
    : g_(std::move(g)), lo_(std::move(lo)), hi_(std::move(hi)), n_(std::move(n)) {
  const int d = g_.dim();
  if (static_cast<int>(lo_.size()) != d || static_cast<int>(hi_.size()) != d ||
      static_cast<int>(n_.size()) != d)
    throw Error("grid", "dimension", "box arity does not match the group");
  h_.resize(d);
  stride_.resize(d);
  size_ = 1;
  vol_ = 1.0;
  for (int i = 0; i < d; ++i) {
    if (n_[i] < 1 || !(hi_[i] > lo_[i]))
      throw Error("grid", "box", "empty box or nonpositive point count");
    h_[i] = (hi_[i] - lo_[i]) / n_[i];
    vol_ *= h_[i];
  }
  for (int i = d - 1; i >= 0; --i) {
    stride_[i] = size_;
    size_ *= static_cast<std::size_t>(n_[i]);
  }
  long flat = 0;
  for (int i = 0; i < d; ++i) {
    double k = -lo_[i] / h_[i];
    long kr = std::lround(k);
    if (std::fabs(k - kr) > 1e-9 || kr < 0 || kr >= n_[i]) {
      flat = -1;
      break;
    }
    flat += kr * static_cast<long>(stride_[i]);
  }
  identity_index_ = flat;
}

Grid Grid::centered(GradedAlgebra g, std::vector<double> half_width, std::vector<int> n) {
  std::vector<double> lo, hi;
  for (double a : half_width) {
    lo.push_back(-a);
    hi.push_back(a);
  }
  return Grid(std::move(g), lo, hi, std::move(n));
}

double Grid::max_spacing() const {
  double m = 0;
  for (double h : h_) m = std::max(m, h);
  return m;
}

double Grid::diameter() const {
  QuasiNorm qn = QuasiNorm::canonical(g_);
  const int d = dim();
  double best = 0.0;
  for (int a = 0; a < (1 << d); ++a)
    for (int b = 0; b < (1 << d); ++b) {
      GroupPoint x(d), y(d);
      for (int i = 0; i < d; ++i) {
        x[i] = (a >> i) & 1 ? hi_[i] : lo_[i];
        y[i] = (b >> i) & 1 ? hi_[i] : lo_[i];
      }
      best = std::max(best, qn.distance(g_, x, y));
    }
  return best;
}

GroupPoint Grid::point(std::size_t flat) const {
  GroupPoint p(dim());
  for (int i = 0; i < dim(); ++i) {
    int k = static_cast<int>(flat / stride_[i]);
    flat -= k * stride_[i];
    p[i] = lo_[i] + k * h_[i];
  }
  return p;
}

void Grid::unflatten(std::size_t flat, int* idx) const {
  for (int i = 0; i < dim(); ++i) {
    idx[i] = static_cast<int>(flat / stride_[i]);
    flat -= idx[i] * stride_[i];
  }
}

std::size_t Grid::flatten(const int* idx) const {
  std::size_t f = 0;
  for (int i = 0; i < dim(); ++i) f += idx[i] * stride_[i];
  return f;
}

bool Grid::contains(const GroupPoint& x) const {
  for (int i = 0; i < dim(); ++i)
    if (x[i] < lo_[i] || x[i] >= hi_[i]) return false;
  return true;
}

bool Grid::aligned_with(const Grid& o) const {
  if (dim() != o.dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (std::fabs(h_[i] - o.h_[i]) > 1e-12 * h_[i]) return false;
    double k = (o.lo_[i] - lo_[i]) / h_[i];
    if (std::fabs(k - std::round(k)) > 1e-9) return false;
  }
  return true;
}

bool Grid::operator==(const Grid& o) const {
  return g_.weights() == o.g_.weights() && g_.brackets().size() == o.g_.brackets().size() &&
         lo_ == o.lo_ && hi_ == o.hi_ && n_ == o.n_;
}

// ---- SampledFunction --------------------------------------------------------

SampledFunction::SampledFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_ || values_.size() != grid_->size())
    throw Error("grid", "size", "value count does not match the grid");
}

SampledFunction::SampledFunction(GridPtr grid, std::vector<double> re, std::vector<double> im)
    : SampledFunction(std::move(grid), std::move(re)) {
  if (!im.empty() && im.size() != values_.size())
    throw Error("grid", "size", "imaginary part size mismatch");
  imag_ = std::move(im);
}

SampledFunction SampledFunction::zeros(GridPtr grid) {
  std::size_t n = grid->size();
  return SampledFunction(std::move(grid), std::vector<double>(n, 0.0));
}

SampledFunction SampledFunction::from(GridPtr grid,
                                      const std::function<double(const GroupPoint&)>& f) {
  std::vector<double> v(grid->size());
  const Grid& gr = *grid;
  parallel_for(v.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) v[i] = f(gr.point(i));
  });
  return SampledFunction(std::move(grid), std::move(v));
}

double SampledFunction::sample(const GroupPoint& x) const {
  const Grid& g = *grid_;
  const int d = g.dim();
  int base[kMaxDim];
  double frac[kMaxDim];
  for (int i = 0; i < d; ++i) {
    double u = (x[i] - g.lo(i)) / g.spacing(i);
    if (u <= -1.0 || u >= g.n(i)) return 0.0;
    double fl = std::floor(u);
    base[i] = static_cast<int>(fl);
    frac[i] = u - fl;
  }
  double s = 0.0;
  for (int c = 0; c < (1 << d); ++c) {
    double w = 1.0;
    std::size_t flat = 0;
    bool inside = true;
    for (int i = 0; i < d; ++i) {
      int bit = (c >> i) & 1;
      int k = base[i] + bit;
      double wi = bit ? frac[i] : 1.0 - frac[i];
      if (wi == 0.0) {
        w = 0.0;
        break;
      }
      if (k < 0 || k >= g.n(i)) {
        inside = false;
        break;
      }
      w *= wi;
      flat += k * g.stride(i);
    }
    if (inside && w != 0.0) s += w * values_[flat];
  }
  return s;
}

SampledFunction& SampledFunction::operator+=(const SampledFunction& o) {
  if (o.size() != size()) throw Error("grid", "size", "grid mismatch in +=");
  kernels::axpy(1.0, o.values_.data(), values_.data(), size());
  return *this;
}

SampledFunction& SampledFunction::operator-=(const SampledFunction& o) {
  if (o.size() != size()) throw Error("grid", "size", "grid mismatch in -=");
  kernels::axpy(-1.0, o.values_.data(), values_.data(), size());
  return *this;
}

SampledFunction& SampledFunction::operator*=(double s) {
  kernels::scale(s, values_.data(), size());
  for (auto& v : imag_) v *= s;
  return *this;
}

// ---- operations -------------------------------------------------------------

double integrate(const SampledFunction& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().cell_volume();
}

double lp_norm(const std::vector<double>& v, double vol, double p) {
  if (!(p > 0)) throw Error("grid", "exponent", "p must be positive");
  if (std::isinf(p)) return kernels::max_abs(v.data(), v.size());
  if (p == 2.0) return std::sqrt(kernels::sum_sq(v.data(), v.size()) * vol);
  if (p == 1.0) return kernels::sum_abs(v.data(), v.size()) * vol;
  double s = 0.0;
  for (double x : v) s += std::pow(std::fabs(x), p);
  return std::pow(s * vol, 1.0 / p);
}

double lp_norm(const SampledFunction& f, double p) {
  return lp_norm(f.values(), f.grid().cell_volume(), p);
}

SampledFunction involution(const SampledFunction& f) {
  const Grid& g = f.grid();
  return SampledFunction::from(f.grid_ptr(),
                               [&](const GroupPoint& x) { return f.sample(g.algebra().inverse(x)); });
}

SampledFunction translate(const SampledFunction& f, const GroupPoint& a) {
  const GradedAlgebra& alg = f.grid().algebra();
  GroupPoint ai = alg.inverse(a);
  return SampledFunction::from(f.grid_ptr(),
                               [&](const GroupPoint& x) { return f.sample(alg.multiply(ai, x)); });
}

SampledFunction dilate_function(const SampledFunction& f, double t) {
  if (!(t > 0)) throw Error("grid", "scale", "dilation factor must be positive");
  const GradedAlgebra& alg = f.grid().algebra();
  double c = std::pow(t, -alg.homogeneous_dimension());
  return SampledFunction::from(f.grid_ptr(), [&](const GroupPoint& x) {
    return c * f.sample(alg.dilate(x, 1.0 / t));
  });
}

std::vector<std::pair<MultiIndex, double>> moments(const SampledFunction& f, int M) {
  const Grid& g = f.grid();
  std::vector<std::pair<MultiIndex, double>> out;
  for (const auto& a : multi_indices_upto(g.algebra(), M)) {
    double s = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (f[k] == 0.0) continue;
      GroupPoint x = g.point(k);
      double m = f[k];
      for (int i = 0; i < g.dim(); ++i)
        for (int e = 0; e < a[i]; ++e) m *= x[i];
      s += m;
    }
    out.emplace_back(a, s * g.cell_volume());
  }
  return out;
}

namespace {

SampledFunction convolve_fft(const SampledFunction& f, const SampledFunction& g) {
  const Grid& gf = f.grid();
  const Grid& gg = g.grid();
  const int d = gf.dim();
  std::vector<int> pad(d), off(d);
  for (int i = 0; i < d; ++i) {
    pad[i] = fft_size(gf.n(i) + gg.n(i));
    off[i] = static_cast<int>(std::lround(-gg.lo(i) / gg.spacing(i)));
  }
  RealFFT fft(pad);
  std::vector<std::size_t> pstride(d);
  std::size_t ps = 1;
  for (int i = d - 1; i >= 0; --i) {
    pstride[i] = ps;
    ps *= pad[i];
  }
  auto embed = [&](const SampledFunction& s) {
    std::vector<double> buf(ps, 0.0);
    int idx[kMaxDim];
    for (std::size_t k = 0; k < s.size(); ++k) {
      s.grid().unflatten(k, idx);
      std::size_t p = 0;
      for (int i = 0; i < d; ++i) p += idx[i] * pstride[i];
      buf[p] = s[k];
    }
    return buf;
  };
  auto a = embed(f), b = embed(g);
  std::vector<std::complex<double>> fa(fft.complex_size()), fb(fft.complex_size());
  fft.forward(a.data(), fa.data());
  fft.forward(b.data(), fb.data());
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  fft.inverse(fa.data(), a.data());
  const double scale = gf.cell_volume() / static_cast<double>(ps);
  std::vector<double> out(gf.size(), 0.0);
  int idx[kMaxDim];
  for (std::size_t k = 0; k < gf.size(); ++k) {
    gf.unflatten(k, idx);
    std::size_t p = 0;
    bool ok = true;
    for (int i = 0; i < d; ++i) {
      // x_i - y_j lands on g's index i - j + off, so full-convolution index i + off.
      long q = idx[i] + off[i];
      if (q < 0 || q >= pad[i]) {
        ok = false;
        break;
      }
      p += q * pstride[i];
    }
    if (ok) out[k] = a[p] * scale;
  }
  return SampledFunction(f.grid_ptr(), std::move(out));
}

bool fft_eligible(const SampledFunction& f, const SampledFunction& g) {
  const Grid& gf = f.grid();
  const Grid& gg = g.grid();
  if (!gf.algebra().is_abelian() || !gf.aligned_with(gg)) return false;
  for (int i = 0; i < gf.dim(); ++i) {
    double k = -gg.lo(i) / gg.spacing(i);
    if (std::fabs(k - std::round(k)) > 1e-9) return false;
  }
  return true;
}

}  // namespace

SampledFunction convolve_direct(const SampledFunction& f, const SampledFunction& g) {
  return convolve(f, [&g](const GroupPoint& z) { return g.sample(z); });
}

SampledFunction convolve(const SampledFunction& f, const SampledFunction& g) {
  if (f.grid().algebra().dim() != g.grid().algebra().dim())
    throw Error("grid", "dimension", "convolution of functions on different groups");
  if (fft_eligible(f, g)) return convolve_fft(f, g);
  return convolve_direct(f, g);
}

SampledFunction convolve(const SampledFunction& f,
                         const std::function<double(const GroupPoint&)>& g) {
  const Grid& gr = f.grid();
  const GradedAlgebra& alg = gr.algebra();
  std::vector<std::size_t> support;
  std::vector<GroupPoint> yinv;
  for (std::size_t j = 0; j < gr.size(); ++j)
    if (f[j] != 0.0) {
      support.push_back(j);
      yinv.push_back(alg.inverse(gr.point(j)));
    }
  std::vector<double> out(gr.size(), 0.0);
  parallel_for(gr.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      GroupPoint x = gr.point(i);
      double s = 0.0;
      for (std::size_t k = 0; k < support.size(); ++k)
        s += f[support[k]] * g(alg.multiply(yinv[k], x));
      out[i] = s * gr.cell_volume();
    }
  });
  return SampledFunction(f.grid_ptr(), std::move(out));
}

}  // namespace hogroup
