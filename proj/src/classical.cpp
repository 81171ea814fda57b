#include "hogroup/classical.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "hogroup/error.hpp"
#include "hogroup/fft.hpp"
#include "hogroup/parallel.hpp"
#include "hogroup/taylor.hpp"

namespace hogroup {

std::vector<double> hardy_scales(const Grid& grid) {
  const double r0 = grid.max_spacing(), r1 = grid.diameter() / 4;
  std::vector<double> rs;
  for (int i = 0; r0 * std::exp2(i / 4.0) <= r1 * (1 + 1e-12); ++i) rs.push_back(r0 * std::exp2(i / 4.0));
  return rs;
}

double hardy_norm(const SampledFunction& f, double p, const HomOperator& op) {
  if (!(p > 0) || std::isinf(p)) throw Error("classical", "invalid_p", "p must be in (0, inf)");
  const double nu = op.degree();
  std::vector<SpectralFn> gs;
  for (double r : hardy_scales(f.grid())) {
    const double t = std::pow(r, nu);
    gs.push_back([t](double l) { return std::exp(-t * std::max(l, 0.0)); });
  }
  auto pieces = op.apply_functions(gs, f);
  // The limit r -> 0 is f itself; the grid scales start at one step only.
  std::vector<double> M(f.size());
  for (std::size_t x = 0; x < M.size(); ++x) M[x] = std::fabs(f[x]);
  for (const auto& u : pieces)
    for (std::size_t x = 0; x < M.size(); ++x) M[x] = std::max(M[x], std::fabs(u[x]));
  return lp_norm(M, f.grid().cell_volume(), p);
}

namespace {

double oscillation(const SampledFunction& f, const std::vector<std::size_t>& mem) {
  if (mem.empty()) return 0.0;
  double m = 0.0;
  for (std::size_t p : mem) m += f[p];
  m /= double(mem.size());
  double o = 0.0;
  for (std::size_t p : mem) o += std::fabs(f[p] - m);
  return o / double(mem.size());
}

}  // namespace

double bmo_norm(const SampledFunction& f, const DyadicBallSystem& balls, int random_balls,
                std::uint64_t seed) {
  const Grid& G = f.grid();
  if (!(balls.grid() == G)) throw Error("classical", "grid_mismatch", "dyadic system built on another grid");
  double best = 0.0;
  for (int k = balls.k_min(); k <= balls.k_max(); ++k)
    for (std::size_t i = 0; i < balls.balls(k).size(); ++i)
      best = std::max(best, oscillation(f, balls.members(k, i)));
  const auto& g = G.algebra();
  const QuasiNorm& qn = balls.quasi_norm();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> C(0, G.size() - 1);
  std::uniform_real_distribution<double> U(std::log(2 * G.max_spacing()), std::log(G.diameter() / 4));
  for (int b = 0; b < random_balls; ++b) {
    const std::size_t c = C(rng);
    const double r = std::exp(U(rng));
    std::vector<std::size_t> mem;
    if (G.dim() == 1) {
      const long k = long(std::ceil(r / G.spacing(0))) - 1;
      for (long p = std::max(0l, long(c) - k); p <= std::min(long(G.size()) - 1, long(c) + k); ++p)
        if (qn.distance(g, G.point(p), G.point(c)) < r) mem.push_back(std::size_t(p));
    } else {
      const GroupPoint x = G.point(c);
      for (std::size_t p = 0; p < G.size(); ++p)
        if (qn.distance(g, G.point(p), x) < r) mem.push_back(p);
    }
    best = std::max(best, oscillation(f, mem));
  }
  return best;
}

namespace {

struct Offset {
  std::vector<long> steps;
  GroupPoint y;
  double norm;
};

std::vector<Offset> lipschitz_offsets(const Grid& G, const QuasiNorm& qn) {
  const int d = G.dim();
  const double lo = G.max_spacing(), hi = G.diameter() / 8;
  std::vector<long> reach(d);
  for (int i = 0; i < d; ++i)
    reach[i] = std::min<long>(G.n(i) - 1, long(std::pow(hi, G.algebra().weight(i)) / G.spacing(i)));
  std::vector<Offset> out;
  std::vector<long> k(d);
  for (int i = 0; i < d; ++i) k[i] = -reach[i];
  while (true) {
    GroupPoint y(d);
    for (int i = 0; i < d; ++i) y[i] = k[i] * G.spacing(i);
    double n = qn(y);
    if (n >= lo * (1 - 1e-12) && n <= hi) out.push_back({k, y, n});
    int i = d - 1;
    while (i >= 0 && k[i] == reach[i]) k[i] = -reach[i], --i;
    if (i < 0) break;
    ++k[i];
  }
  // Keep the count manageable in higher dimensions.
  const std::size_t cap = 4096;
  if (out.size() > cap) {
    std::vector<Offset> thin;
    const double step = double(out.size()) / cap;
    for (std::size_t i = 0; i < cap; ++i) thin.push_back(out[std::size_t(i * step)]);
    out = std::move(thin);
  }
  return out;
}

// Lattice index of x y for a lattice offset y on an abelian grid, or -1.
long shifted_index(const Grid& G, std::size_t p, const std::vector<long>& steps, int sign) {
  long flat = 0;
  std::vector<int> idx(G.dim());
  G.unflatten(p, idx.data());
  for (int i = 0; i < G.dim(); ++i) {
    long j = idx[i] + sign * steps[i];
    if (j < 0 || j >= G.n(i)) return -1;
    flat += j * long(G.stride(i));
  }
  return flat;
}

double difference_seminorm(const SampledFunction& f, double s) {
  const Grid& G = f.grid();
  const auto& g = G.algebra();
  QuasiNorm qn = QuasiNorm::canonical(g);
  auto offs = lipschitz_offsets(G, qn);
  const bool second = s >= 1.0 - 1e-12;
  std::vector<double> part(offs.size(), 0.0);
  parallel_for(offs.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t o = b; o < e; ++o) {
      const Offset& off = offs[o];
      const double w = std::pow(off.norm, s);
      double best = 0.0;
      for (std::size_t p = 0; p < G.size(); ++p) {
        double plus, minus = 0.0;
        if (g.is_abelian()) {
          long a = shifted_index(G, p, off.steps, 1);
          if (a < 0) continue;
          plus = f[a];
          if (second) {
            long c = shifted_index(G, p, off.steps, -1);
            if (c < 0) continue;
            minus = f[c];
          }
        } else {
          GroupPoint x = G.point(p);
          GroupPoint xy = g.multiply(x, off.y);
          if (!G.contains(xy)) continue;
          plus = f.sample(xy);
          if (second) {
            GroupPoint xz = g.multiply(x, g.inverse(off.y));
            if (!G.contains(xz)) continue;
            minus = f.sample(xz);
          }
        }
        double diff = second ? plus + minus - 2 * f[p] : plus - f[p];
        best = std::max(best, std::fabs(diff) / w);
      }
      part[o] = best;
    }
  });
  return part.empty() ? 0.0 : *std::max_element(part.begin(), part.end());
}

}  // namespace

double lipschitz_seminorm(const SampledFunction& f, double sigma) {
  if (!(sigma > 0)) throw Error("classical", "invalid_sigma", "sigma must be positive");
  if (sigma <= 1.0) return difference_seminorm(f, sigma);
  const auto& g = f.grid().algebra();
  if (!g.is_stratified())
    throw Error("classical", "not_stratified", "sigma > 1 needs a stratified group");
  const int k = int(std::ceil(sigma - 1e-12)) - 1;
  const double rest = sigma - k;
  std::vector<int> layer;
  for (int i = 0; i < g.dim(); ++i)
    if (g.weight(i) == 1) layer.push_back(i);
  double total = 0.0;
  std::vector<int> word(k, 0);
  while (true) {
    SampledFunction u = f;
    for (int w = k - 1; w >= 0; --w) u = field_derivative(u, layer[word[w]]);
    total += difference_seminorm(u, rest);
    int i = k - 1;
    while (i >= 0 && word[i] + 1 == int(layer.size())) word[i] = 0, --i;
    if (i < 0) break;
    ++word[i];
  }
  return total;
}

SobolevValue sobolev_norm(const SampledFunction& f, double sigma, double p, const HomOperator& op) {
  if (!(p > 0)) throw Error("classical", "invalid_p", "p must be in (0, inf]");
  const double cut = 1e-10 * op.spectral_bounds().second;
  const double e = sigma / op.degree();
  SpectralFn power = [=](double l) { return l < cut ? 0.0 : std::pow(l, e); };
  SpectralFn kernel = [=](double l) { return l < cut ? 1.0 : 0.0; };
  auto out = op.apply_functions({power, kernel}, f);
  SobolevValue v;
  v.value = lp_norm(out[0], p);
  const double n = lp_norm(f, 2.0);
  v.kernel_mass = n > 0 ? lp_norm(out[1], 2.0) / n : 0.0;
  return v;
}

SampledFunction field_derivative(const SampledFunction& f, int j) {
  const Grid& G = f.grid();
  const auto& g = G.algebra();
  if (j < 0 || j >= G.dim()) throw Error("classical", "field_index", "no such field");
  const int d = G.dim();
  if (g.is_abelian()) {
    RealFFT fft(G.shape());
    std::vector<std::complex<double>> spec(fft.complex_size());
    fft.forward(f.values().data(), spec.data());
    // Spectral index along axis j in the r2c layout.
    std::vector<int> cdims = G.shape();
    cdims[d - 1] = cdims[d - 1] / 2 + 1;
    std::size_t stride = 1;
    for (int i = d - 1; i > j; --i) stride *= cdims[i];
    const int n = G.n(j);
    for (std::size_t c = 0; c < spec.size(); ++c) {
      int k = int((c / stride) % cdims[j]);
      double xi = RealFFT::frequency(k, n, G.spacing(j));
      // The Nyquist mode has no odd part.
      if (n % 2 == 0 && k == n / 2) xi = 0.0;
      spec[c] *= std::complex<double>(0.0, xi);
    }
    std::vector<double> out(G.size());
    fft.inverse(spec.data(), out.data());
    for (double& v : out) v /= double(fft.real_size());
    return SampledFunction(f.grid_ptr(), std::move(out));
  }
  auto fields = left_invariant_fields(g);
  SampledFunction out = SampledFunction::zeros(f.grid_ptr());
  std::vector<int> idx(d);
  for (std::size_t p = 0; p < G.size(); ++p) {
    GroupPoint x = G.point(p);
    G.unflatten(p, idx.data());
    double s = 0.0;
    for (int k = 0; k < d; ++k) {
      double c = fields[j].coeffs[k].evaluate(x.coords());
      if (c == 0.0) continue;
      double up = idx[k] + 1 < G.n(k) ? f[p + G.stride(k)] : 0.0;
      double dn = idx[k] > 0 ? f[p - G.stride(k)] : 0.0;
      s += c * (up - dn) / (2 * G.spacing(k));
    }
    out[p] = s;
  }
  return out;
}

SampledFunction riesz_transform(const SampledFunction& f, const std::vector<int>& alpha,
                                const HomOperator& op) {
  const Grid& G = f.grid();
  if (int(alpha.size()) != G.dim()) throw Error("classical", "alpha", "alpha has the wrong length");
  int order = 0;
  for (int i = 0; i < G.dim(); ++i) {
    if (alpha[i] < 0) throw Error("classical", "alpha", "negative entry");
    order += alpha[i] * G.algebra().weight(i);
  }
  const double cut = 1e-10 * op.spectral_bounds().second;
  const double e = -double(order) / op.degree();
  SampledFunction u = op.apply_function([=](double l) { return l < cut ? 0.0 : std::pow(l, e); }, f);
  for (int i = G.dim() - 1; i >= 0; --i)
    for (int r = 0; r < alpha[i]; ++r) u = field_derivative(u, i);
  return u;
}

}  // namespace hogroup
