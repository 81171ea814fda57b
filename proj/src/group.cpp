#include "hogroup/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

#include "hogroup/error.hpp"

namespace hogroup {

// ---- GroupPoint -------------------------------------------------------------

GroupPoint::GroupPoint(int dim) : dim_(dim) {
  if (dim < 0 || dim > kMaxDim)
    throw Error("group", "dimension", "point dimension out of range");
}

GroupPoint::GroupPoint(std::initializer_list<double> coords)
    : GroupPoint(static_cast<int>(coords.size())) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

GroupPoint::GroupPoint(std::span<const double> coords)
    : GroupPoint(static_cast<int>(coords.size())) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

GroupPoint GroupPoint::operator+(const GroupPoint& o) const {
  GroupPoint r(dim_);
  for (int i = 0; i < dim_; ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

GroupPoint GroupPoint::operator-(const GroupPoint& o) const {
  GroupPoint r(dim_);
  for (int i = 0; i < dim_; ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

GroupPoint GroupPoint::operator*(double s) const {
  GroupPoint r(dim_);
  for (int i = 0; i < dim_; ++i) r.c_[i] = c_[i] * s;
  return r;
}

bool GroupPoint::operator==(const GroupPoint& o) const {
  if (dim_ != o.dim_) return false;
  for (int i = 0; i < dim_; ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

// ---- GradedAlgebra ----------------------------------------------------------

namespace {

using Vec = std::vector<double>;

Vec bracket_vec(const std::vector<Bracket>& br, int d, const Vec& x,
                const Vec& y) {
  Vec z(d, 0.0);
  for (const auto& b : br) z[b.k] += b.c * x[b.i] * y[b.j];
  return z;
}

// Appends the components of `vs` independent of `basis` (modified
// Gram-Schmidt); returns the number added.
int extend_basis(std::vector<Vec>& basis, const std::vector<Vec>& vs) {
  int added = 0;
  for (Vec v : vs) {
    double n0 = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (n0 == 0.0) continue;
    for (const auto& b : basis) {
      double p = std::inner_product(v.begin(), v.end(), b.begin(), 0.0);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= p * b[i];
    }
    double n = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (n <= 1e-10 * n0) continue;
    for (auto& x : v) x /= n;
    basis.push_back(std::move(v));
    ++added;
  }
  return added;
}

Vec unit(int d, int i) {
  Vec e(d, 0.0);
  e[i] = 1.0;
  return e;
}

}  // namespace

GradedAlgebra GradedAlgebra::create(std::string name, std::vector<int> weights,
                                    std::vector<Bracket> brackets) {
  const int d = static_cast<int>(weights.size());
  if (d < 1 || d > kMaxDim)
    throw Error("group", "dimension",
                "dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  for (int w : weights)
    if (w < 1) throw Error("group", "weights_positive", "weights must be >= 1");
  if (!std::is_sorted(weights.begin(), weights.end()))
    throw Error("group", "weights_sorted", "weights must be nondecreasing");

  std::map<std::tuple<int, int, int>, double> table;
  for (const auto& b : brackets) {
    if (b.i < 0 || b.i >= d || b.j < 0 || b.j >= d || b.k < 0 || b.k >= d)
      throw Error("group", "index_range", "bracket index out of range");
    if (b.c == 0.0) continue;
    if (b.i == b.j)
      throw Error("group", "antisymmetry",
                  "[e_i, e_i] must vanish (i=" + std::to_string(b.i + 1) + ")");
    auto key = std::make_tuple(b.i, b.j, b.k);
    auto rkey = std::make_tuple(b.j, b.i, b.k);
    auto it = table.find(key);
    if (it != table.end() && it->second != b.c)
      throw Error("group", "antisymmetry", "conflicting duplicate entry");
    auto rit = table.find(rkey);
    if (rit != table.end() && rit->second != -b.c)
      throw Error("group", "antisymmetry",
                  "c^k_ij != -c^k_ji for (i,j,k)=(" + std::to_string(b.i + 1) +
                      "," + std::to_string(b.j + 1) + "," +
                      std::to_string(b.k + 1) + ")");
    table[key] = b.c;
  }
  std::vector<Bracket> full;
  for (const auto& [key, c] : table) {
    auto [i, j, k] = key;
    if (!table.count({j, i, k})) full.push_back({j, i, k, -c});
    full.push_back({i, j, k, c});
  }
  std::sort(full.begin(), full.end(), [](const Bracket& a, const Bracket& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });

  for (const auto& b : full)
    if (weights[b.k] != weights[b.i] + weights[b.j])
      throw Error("group", "grading",
                  "c^" + std::to_string(b.k + 1) + "_" + std::to_string(b.i + 1) +
                      std::to_string(b.j + 1) +
                      " != 0 but v_k != v_i + v_j");

  double cmax = 0.0;
  for (const auto& b : full) cmax = std::max(cmax, std::fabs(b.c));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int l = 0; l < d; ++l) {
        Vec ei = unit(d, i), ej = unit(d, j), el = unit(d, l);
        Vec a = bracket_vec(full, d, ei, bracket_vec(full, d, ej, el));
        Vec b = bracket_vec(full, d, ej, bracket_vec(full, d, el, ei));
        Vec c = bracket_vec(full, d, el, bracket_vec(full, d, ei, ej));
        for (int k = 0; k < d; ++k)
          if (std::fabs(a[k] + b[k] + c[k]) > 1e-12 * (1.0 + cmax * cmax))
            throw Error("group", "jacobi",
                        "Jacobi identity fails for (" + std::to_string(i + 1) +
                            "," + std::to_string(j + 1) + "," +
                            std::to_string(l + 1) + ")");
      }

  GradedAlgebra g;
  g.name_ = std::move(name);
  g.weights_ = std::move(weights);
  g.brackets_ = std::move(full);
  g.q_ = std::accumulate(g.weights_.begin(), g.weights_.end(), 0);

  // Step from the lower central series g^1 = g, g^{k+1} = [g, g^k].
  std::vector<Vec> layer;
  for (int i = 0; i < d; ++i) layer.push_back(unit(d, i));
  int step = 0;
  while (!layer.empty()) {
    ++step;
    if (step > 64) break;
    std::vector<Vec> next_raw;
    for (int i = 0; i < d; ++i)
      for (const auto& v : layer) next_raw.push_back(bracket_vec(g.brackets_, d, unit(d, i), v));
    std::vector<Vec> next;
    extend_basis(next, next_raw);
    layer = std::move(next);
  }
  g.step_ = step;
  if (g.step_ > 4)
    throw Error("group", "step_limit",
                "step " + std::to_string(g.step_) + " exceeds the supported 4");

  // Stratified iff the weight-one directions generate the algebra.
  std::vector<Vec> span_all, gen, cur;
  for (int i = 0; i < d; ++i)
    if (g.weights_[i] == 1) gen.push_back(unit(d, i));
  extend_basis(span_all, gen);
  cur = gen;
  for (int s = 1; s < g.step_ && !cur.empty(); ++s) {
    std::vector<Vec> raw;
    for (const auto& a : gen)
      for (const auto& b : cur) raw.push_back(bracket_vec(g.brackets_, d, a, b));
    std::vector<Vec> nb;
    extend_basis(nb, raw);
    extend_basis(span_all, nb);
    cur = std::move(nb);
  }
  g.stratified_ = static_cast<int>(span_all.size()) == d;
  return g;
}

GradedAlgebra GradedAlgebra::euclidean(int n) {
  return create(n == 1 ? "R" : "R" + std::to_string(n), std::vector<int>(n, 1), {});
}

GradedAlgebra GradedAlgebra::anisotropic(std::vector<int> weights) {
  std::string name = "R" + std::to_string(weights.size()) + "_aniso";
  for (int w : weights) name += "_" + std::to_string(w);
  return create(name, std::move(weights), {});
}

GradedAlgebra GradedAlgebra::heisenberg() {
  return create("H1", {1, 1, 2}, {{0, 1, 2, 1.0}});
}

GradedAlgebra GradedAlgebra::engel() {
  return create("engel", {1, 1, 2, 3}, {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}});
}

std::vector<Bracket> GradedAlgebra::upper_brackets() const {
  std::vector<Bracket> out;
  for (const auto& b : brackets_)
    if (b.i < b.j) out.push_back(b);
  return out;
}

GroupPoint GradedAlgebra::bracket(const GroupPoint& x, const GroupPoint& y) const {
  GroupPoint z(dim());
  for (const auto& b : brackets_) z[b.k] += b.c * x[b.i] * y[b.j];
  return z;
}

GroupPoint GradedAlgebra::multiply(const GroupPoint& x, const GroupPoint& y) const {
  GroupPoint z = x + y;
  if (step_ < 2) return z;
  GroupPoint xy = bracket(x, y);
  for (int i = 0; i < dim(); ++i) z[i] += 0.5 * xy[i];
  if (step_ < 3) return z;
  GroupPoint xxy = bracket(x, xy);
  GroupPoint yxy = bracket(y, xy);  // [Y,[Y,X]] = -[Y,[X,Y]]
  for (int i = 0; i < dim(); ++i) z[i] += (xxy[i] - yxy[i]) / 12.0;
  if (step_ < 4) return z;
  GroupPoint yxxy = bracket(y, xxy);
  for (int i = 0; i < dim(); ++i) z[i] -= yxxy[i] / 24.0;
  return z;
}

GroupPoint GradedAlgebra::left_quotient(const GroupPoint& y, const GroupPoint& x) const {
  return multiply(inverse(y), x);
}

GroupPoint GradedAlgebra::dilate(const GroupPoint& x, double t) const {
  GroupPoint r(dim());
  for (int i = 0; i < dim(); ++i) r[i] = std::pow(t, weights_[i]) * x[i];
  return r;
}

int hom_degree(const GradedAlgebra& g, std::span<const int> alpha) {
  if (static_cast<int>(alpha.size()) != g.dim())
    throw Error("group", "dimension", "multi-index length != dimension");
  int s = 0;
  for (int i = 0; i < g.dim(); ++i) {
    if (alpha[i] < 0) throw Error("group", "multi_index", "negative entry");
    s += alpha[i] * g.weight(i);
  }
  return s;
}

int length(std::span<const int> alpha) {
  return std::accumulate(alpha.begin(), alpha.end(), 0);
}

int ceil_floor(const GradedAlgebra& g, int M) {
  if (M < 0) return 0;
  // All mass on a weight-min coordinate maximizes the length.
  return M / g.weight(0);
}

// ---- QuasiNorm --------------------------------------------------------------

QuasiNorm QuasiNorm::canonical(const GradedAlgebra& g) {
  int l = 1;
  for (int w : g.weights()) l = std::lcm(l, w);
  QuasiNorm q;
  q.exponent_ = 2 * l;
  for (int w : g.weights()) q.coord_exp_.push_back(2 * l / w);
  return q;
}

double QuasiNorm::power(const GroupPoint& x) const {
  double s = 0.0;
  for (int i = 0; i < x.dim(); ++i) {
    double x2 = x[i] * x[i];
    double p = 1.0;
    for (int e = 0; e < coord_exp_[i] / 2; ++e) p *= x2;
    s += p;
  }
  return s;
}

double QuasiNorm::operator()(const GroupPoint& x) const {
  double p = power(x);
  if (exponent_ == 2) return std::sqrt(p);
  return std::pow(p, 1.0 / exponent_);
}

double QuasiNorm::distance(const GradedAlgebra& g, const GroupPoint& x,
                           const GroupPoint& y) const {
  return (*this)(g.left_quotient(y, x));
}

GroupPoint QuasiNorm::normalize(const GradedAlgebra& g, const GroupPoint& x) const {
  double n = (*this)(x);
  if (n == 0.0) throw Error("group", "zero_point", "cannot normalize the identity");
  return g.dilate(x, 1.0 / n);
}

GammaEstimate estimate_gamma(const GradedAlgebra& g, const QuasiNorm& qn,
                             std::uint64_t seed, int samples, double margin) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lr(-2.5, 2.5);
  std::normal_distribution<double> nd(0.0, 1.0);

  auto ratio = [&](const GroupPoint& x, const GroupPoint& y) {
    double den = qn(x) + qn(y);
    return den > 0.0 ? qn(g.multiply(x, y)) / den : 0.0;
  };

  struct Cand {
    double r;
    GroupPoint x, y;
  };
  std::vector<Cand> cands;
  cands.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    GroupPoint x = qn.normalize(g, random_point(g, rng));
    GroupPoint y = g.dilate(qn.normalize(g, random_point(g, rng)), std::exp(lr(rng)));
    cands.push_back({ratio(x, y), x, y});
  }
  std::size_t top = std::min<std::size_t>(16, cands.size());
  std::partial_sort(cands.begin(), cands.begin() + top, cands.end(),
                    [](const Cand& a, const Cand& b) { return a.r > b.r; });

  Cand best = cands.front();
  for (std::size_t c = 0; c < top; ++c) {
    Cand cur = cands[c];
    double step = 0.2;
    for (int it = 0; it < 400 && step > 1e-7; ++it) {
      GroupPoint x = cur.x, y = cur.y;
      for (int i = 0; i < g.dim(); ++i) {
        x[i] += step * nd(rng);
        y[i] += step * nd(rng);
      }
      if (qn(x) == 0.0) continue;
      x = qn.normalize(g, x);
      double r = ratio(x, y);
      if (r > cur.r) {
        cur = {r, x, y};
        step *= 1.2;
      } else {
        step *= 0.9;
      }
    }
    if (cur.r > best.r) best = cur;
  }
  return {best.r, std::max(1.0, best.r * (1.0 + margin)), best.x, best.y};
}

// ---- polar coordinates ------------------------------------------------------

namespace {

double shell_piece(const GradedAlgebra& g, const QuasiNorm& qn, double r,
                   double R, double s, int n) {
  const int d = g.dim();
  const int N2 = qn.exponent();
  const double r2n = std::pow(r, N2), R2n = std::pow(R, N2);
  const double expo = (s - g.homogeneous_dimension()) / N2;
  const int e_last = qn.coordinate_exponents()[d - 1];

  // Gauss-Legendre, 10 nodes, on 4 panels for the last coordinate.
  static const double xg[5] = {0.1488743389816312, 0.4333953941292472,
                               0.6794095682990244, 0.8650633666889845,
                               0.9739065285171717};
  static const double wg[5] = {0.2955242247147529, 0.2692667193099963,
                               0.2190863625159820, 0.1494513491505806,
                               0.0666713443086881};
  auto inner = [&](double A) {
    if (A >= R2n) return 0.0;
    double a = A < r2n ? std::pow(r2n - A, 1.0 / e_last) : 0.0;
    double b = std::pow(R2n - A, 1.0 / e_last);
    double total = 0.0;
    const int panels = 4;
    for (int p = 0; p < panels; ++p) {
      double lo = a + (b - a) * p / panels, hi = a + (b - a) * (p + 1) / panels;
      double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
      for (int k = 0; k < 5; ++k)
        for (int sg = -1; sg <= 1; sg += 2) {
          double t = c + sg * h * xg[k];
          total += wg[k] * h * std::pow(A + std::pow(t, e_last), expo);
        }
    }
    return total;
  };

  // Orthant symmetry: integrate over x_i >= 0 and multiply by 2^d.
  std::vector<std::vector<double>> pw(d - 1);
  std::vector<double> hx(d - 1);
  for (int i = 0; i < d - 1; ++i) {
    double ext = std::pow(R, g.weight(i));
    hx[i] = ext / n;
    for (int k = 0; k < n; ++k)
      pw[i].push_back(std::pow((k + 0.5) * hx[i], qn.coordinate_exponents()[i]));
  }
  double vol = 1.0;
  for (double h : hx) vol *= h;

  double total = 0.0;
  std::vector<int> idx(d - 1, 0);
  while (true) {
    double A = 0.0;
    for (int i = 0; i < d - 1; ++i) A += pw[i][idx[i]];
    total += inner(A);
    int i = 0;
    for (; i < d - 1; ++i) {
      if (++idx[i] < n) break;
      idx[i] = 0;
    }
    if (i == d - 1) break;
  }
  return total * vol * std::ldexp(1.0, d);
}

}  // namespace

double polar_shell_integral(const GradedAlgebra& g, const QuasiNorm& qn,
                            double r, double R, double s, int n) {
  if (!(r > 0.0 && R > r)) throw Error("group", "shell", "need 0 < r < R");
  // Sub-shells of ratio <= 2 keep the relative resolution uniform.
  int pieces = std::max(1, static_cast<int>(std::ceil(std::log2(R / r) - 1e-12)));
  double q = std::pow(R / r, 1.0 / pieces);
  double total = 0.0, lo = r;
  for (int p = 0; p < pieces; ++p) {
    double hi = p + 1 == pieces ? R : lo * q;
    total += shell_piece(g, qn, lo, hi, s, n);
    lo = hi;
  }
  return total;
}

}  // namespace hogroup
