#include "hogroup/taylor.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

#include "hogroup/error.hpp"

namespace hogroup {

SmoothFunction smooth_from_polynomial(Polynomial p) {
  SmoothFunction s;
  s.value = [p](const GroupPoint& x) { return p.evaluate(x.coords()); };
  s.jet = [p](const std::vector<Jet>& x) {
    std::vector<Polynomial> vals;
    for (const auto& j : x) vals.push_back(j.poly());
    return Jet(x.at(0).context(), p.substitute(vals));
  };
  return s;
}

SmoothFunction smooth_from_callable(std::function<double(const GroupPoint&)> f) {
  SmoothFunction s;
  s.value = std::move(f);
  return s;
}

Polynomial VectorField::apply(const Polynomial& f) const {
  Polynomial r(f.nvars());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    Polynomial d = f.derivative(static_cast<int>(i));
    if (d.is_zero()) continue;
    r += coeffs[i] * d;
  }
  return r;
}

namespace {

using PolyVec = std::vector<Polynomial>;

PolyVec bracket_poly(const GradedAlgebra& g, const PolyVec& x, const PolyVec& y) {
  PolyVec z(g.dim(), Polynomial(x[0].nvars()));
  for (const auto& b : g.brackets()) z[b.k] += (x[b.i] * y[b.j]) * b.c;
  return z;
}

void axpy_poly(PolyVec& z, double a, const PolyVec& x) {
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += x[i] * a;
}

}  // namespace

std::vector<Polynomial> bch_polynomials(const GradedAlgebra& g) {
  const int d = g.dim(), n = 2 * d;
  PolyVec X, Y;
  for (int i = 0; i < d; ++i) {
    X.push_back(Polynomial::variable(n, i));
    Y.push_back(Polynomial::variable(n, d + i));
  }
  PolyVec Z = X;
  axpy_poly(Z, 1.0, Y);
  if (g.step() >= 2) {
    PolyVec xy = bracket_poly(g, X, Y);
    axpy_poly(Z, 0.5, xy);
    if (g.step() >= 3) {
      PolyVec xxy = bracket_poly(g, X, xy);
      PolyVec yxy = bracket_poly(g, Y, xy);
      axpy_poly(Z, 1.0 / 12.0, xxy);
      axpy_poly(Z, -1.0 / 12.0, yxy);
      if (g.step() >= 4) axpy_poly(Z, -1.0 / 24.0, bracket_poly(g, Y, xxy));
    }
  }
  return Z;
}

namespace {

std::vector<VectorField> fields_from_bch(const GradedAlgebra& g, bool left) {
  const int d = g.dim();
  PolyVec bch = bch_polynomials(g);
  // Variables differentiated (y for left, x for right) are set to zero and
  // the remaining ones renamed to 0..d-1.
  PolyVec subst(2 * d, Polynomial(d));
  for (int i = 0; i < d; ++i) {
    subst[left ? i : d + i] = Polynomial::variable(d, i);
    subst[left ? d + i : i] = Polynomial(d);
  }
  std::vector<VectorField> out(d);
  for (int j = 0; j < d; ++j) {
    out[j].coeffs.resize(d, Polynomial(d));
    for (int i = 0; i < d; ++i)
      out[j].coeffs[i] = bch[i].derivative(left ? d + j : j).substitute(subst);
  }
  return out;
}

}  // namespace

std::vector<VectorField> left_invariant_fields(const GradedAlgebra& g) {
  return fields_from_bch(g, true);
}

std::vector<VectorField> right_invariant_fields(const GradedAlgebra& g) {
  return fields_from_bch(g, false);
}

Polynomial apply_word(const std::vector<VectorField>& fields,
                      const std::vector<int>& word, const Polynomial& f) {
  Polynomial r = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = fields.at(*it).apply(r);
  return r;
}

Polynomial left_translate_jet(const GradedAlgebra& g, const SmoothFunction& f,
                              const GroupPoint& x, int cap) {
  if (!f.has_jet()) throw Error("polynomials", "no_jet", "function has no jet evaluator");
  const int d = g.dim();
  auto ctx = std::make_shared<Jet::Context>(Jet::Context{g.weights(), cap});
  PolyVec bch = bch_polynomials(g);
  PolyVec subst;
  for (int i = 0; i < d; ++i) subst.push_back(Polynomial::constant(d, x[i]));
  for (int i = 0; i < d; ++i) subst.push_back(Polynomial::variable(d, i));
  std::vector<Jet> in;
  for (int i = 0; i < d; ++i) in.emplace_back(ctx, bch[i].substitute(subst));
  return f.jet(in).poly();
}

std::vector<int> pbw_word(const MultiIndex& alpha) {
  std::vector<int> w;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (int k = 0; k < alpha[i]; ++k) w.push_back(static_cast<int>(i));
  return w;
}

double left_word_derivative(const GradedAlgebra& g, const std::vector<int>& word,
                            const SmoothFunction& f, const GroupPoint& x) {
  if (!f.has_jet()) return left_word_derivative_fd(g, word, f.value, x);
  int cap = 0;
  for (int i : word) cap += g.weight(i);
  Polynomial F = left_translate_jet(g, f, x, cap);
  return apply_word(left_invariant_fields(g), word, F).constant_term();
}

double left_word_derivative_fd(const GradedAlgebra& g, const std::vector<int>& word,
                               const std::function<double(const GroupPoint&)>& f,
                               const GroupPoint& x, double h) {
  const int k = static_cast<int>(word.size());
  if (k == 0) return f(x);
  if (h <= 0.0)
    h = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (k + 2));
  double sum = 0.0;
  for (int mask = 0; mask < (1 << k); ++mask) {
    GroupPoint p = x;
    int sign = 1;
    for (int s = 0; s < k; ++s) {
      double t = (mask >> s) & 1 ? -h : h;
      if ((mask >> s) & 1) sign = -sign;
      GroupPoint e(g.dim());
      e[word[s]] = t;
      p = g.multiply(p, e);
    }
    sum += sign * f(p);
  }
  return sum / std::pow(2.0 * h, k);
}

std::vector<MultiIndex> multi_indices_upto(const GradedAlgebra& g, int M) {
  std::vector<MultiIndex> out;
  MultiIndex a(g.dim(), 0);
  std::function<void(int, int)> rec = [&](int i, int deg) {
    if (i == g.dim()) {
      out.push_back(a);
      return;
    }
    for (int k = 0; deg + k * g.weight(i) <= M; ++k) {
      a[i] = k;
      rec(i + 1, deg + k * g.weight(i));
    }
    a[i] = 0;
  };
  rec(0, 0);
  std::stable_sort(out.begin(), out.end(), [&](const MultiIndex& x, const MultiIndex& y) {
    return weighted_degree(x, g.weights()) < weighted_degree(y, g.weights());
  });
  return out;
}

namespace {

// X_w f(x) for every word of total weight <= M, visited depth first.
void visit_words(const GradedAlgebra& g, const SmoothFunction& f, const GroupPoint& x,
                 int M,
                 const std::function<void(const std::vector<int>&, double)>& visit) {
  const int d = g.dim();
  std::vector<int> word;
  if (f.has_jet()) {
    auto fields = left_invariant_fields(g);
    Polynomial F = left_translate_jet(g, f, x, M);
    // Words are grown on the left: X_i (X_rest F).
    std::function<void(const Polynomial&, int)> rec = [&](const Polynomial& G, int deg) {
      visit(word, G.constant_term());
      for (int i = 0; i < d; ++i) {
        if (deg + g.weight(i) > M) continue;
        word.insert(word.begin(), i);
        rec(fields[i].apply(G), deg + g.weight(i));
        word.erase(word.begin());
      }
    };
    rec(F, 0);
  } else {
    std::function<void(int)> rec = [&](int deg) {
      visit(word, left_word_derivative_fd(g, word, f.value, x));
      for (int i = 0; i < d; ++i) {
        if (deg + g.weight(i) > M) continue;
        word.push_back(i);
        rec(deg + g.weight(i));
        word.pop_back();
      }
    };
    rec(0);
  }
}

}  // namespace

Polynomial taylor_polynomial(const GradedAlgebra& g, const SmoothFunction& f,
                             const GroupPoint& x, int M) {
  const int d = g.dim();
  Polynomial P(d);
  visit_words(g, f, x, M, [&](const std::vector<int>& w, double v) {
    MultiIndex a(d, 0);
    double fact = 1.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      a[w[k]] += 1;
      fact *= static_cast<double>(k + 1);
    }
    P.add_term(a, v / fact);
  });
  return P;
}

namespace {

std::vector<double> pbw_derivatives(const GradedAlgebra& g, const SmoothFunction& f,
                                    const GroupPoint& x,
                                    const std::vector<MultiIndex>& betas, int M) {
  std::vector<double> out;
  if (f.has_jet()) {
    auto fields = left_invariant_fields(g);
    Polynomial F = left_translate_jet(g, f, x, M);
    for (const auto& b : betas) out.push_back(apply_word(fields, pbw_word(b), F).constant_term());
  } else {
    for (const auto& b : betas)
      out.push_back(left_word_derivative_fd(g, pbw_word(b), f.value, x));
  }
  return out;
}

}  // namespace

Polynomial taylor_polynomial_defining(const GradedAlgebra& g, const SmoothFunction& f,
                                      const GroupPoint& x, int M) {
  auto basis = multi_indices_upto(g, M);
  const int n = static_cast<int>(basis.size());
  auto fields = left_invariant_fields(g);
  Eigen::MatrixXd A(n, n);
  for (int c = 0; c < n; ++c) {
    Polynomial mono = Polynomial::monomial(basis[c]);
    for (int r = 0; r < n; ++r)
      A(r, c) = apply_word(fields, pbw_word(basis[r]), mono).constant_term();
  }
  auto rhs = pbw_derivatives(g, f, x, basis, M);
  Eigen::VectorXd b = Eigen::Map<Eigen::VectorXd>(rhs.data(), n);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (lu.rank() < n) throw Error("polynomials", "pbw_singular", "PBW system is singular");
  Eigen::VectorXd c = lu.solve(b);
  Polynomial P(g.dim());
  for (int i = 0; i < n; ++i) P.add_term(basis[i], c[i]);
  return P;
}

double taylor_defining_residual(const GradedAlgebra& g, const SmoothFunction& f,
                                const GroupPoint& x, int M, const Polynomial& P) {
  auto betas = multi_indices_upto(g, M);
  auto fields = left_invariant_fields(g);
  auto target = pbw_derivatives(g, f, x, betas, M);
  double worst = 0.0;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    double v = apply_word(fields, pbw_word(betas[i]), P).constant_term();
    worst = std::max(worst, std::fabs(v - target[i]));
  }
  return worst;
}

RemainderCheck taylor_remainder_check(const GradedAlgebra& g, const QuasiNorm& qn,
                                      const SmoothFunction& f, const GroupPoint& x,
                                      int M, const std::vector<double>& radii,
                                      int directions, std::uint64_t seed) {
  if (radii.size() < 2) throw Error("polynomials", "radii", "need at least two radii");
  const int d = g.dim();
  std::mt19937_64 rng(seed);
  std::vector<GroupPoint> dirs;
  for (int k = 0; k < directions; ++k) dirs.push_back(qn.normalize(g, random_point(g, rng)));

  RemainderCheck out;
  out.radii = radii;
  out.eta = 1.0;
  for (const auto& u : dirs)
    for (int k = 1; k <= 20; ++k) out.eta = std::max(out.eta, qn(u * (k / 20.0)) / qn(u));

  Polynomial P = taylor_polynomial(g, f, x, M);
  const int L = ceil_floor(g, M) + 1;
  std::vector<MultiIndex> alphas;
  int cap = 0;
  {
    MultiIndex a(d, 0);
    std::function<void(int, int)> rec = [&](int i, int len) {
      if (i == d) {
        int deg = weighted_degree(a, g.weights());
        if (deg > M) {
          alphas.push_back(a);
          cap = std::max(cap, deg);
        }
        return;
      }
      for (int k = 0; len + k <= L; ++k) {
        a[i] = k;
        rec(i + 1, len + k);
      }
      a[i] = 0;
    };
    rec(0, 0);
  }
  auto fields = left_invariant_fields(g);
  const double reach = std::pow(out.eta, L);

  auto sup_derivs = [&](double R) {
    std::vector<double> sup(alphas.size(), 0.0);
    std::vector<GroupPoint> zs{g.identity()};
    for (std::size_t k = 0; k < dirs.size() && k < 8; ++k)
      for (double frac : {0.5, 1.0}) zs.push_back(g.dilate(dirs[k], frac * reach * R));
    for (const auto& z : zs) {
      GroupPoint xz = g.multiply(x, z);
      if (f.has_jet()) {
        Polynomial F = left_translate_jet(g, f, xz, cap);
        for (std::size_t a = 0; a < alphas.size(); ++a)
          sup[a] = std::max(sup[a], std::fabs(apply_word(fields, pbw_word(alphas[a]), F)
                                                  .constant_term()));
      } else {
        for (std::size_t a = 0; a < alphas.size(); ++a)
          sup[a] = std::max(sup[a], std::fabs(left_word_derivative_fd(
                                        g, pbw_word(alphas[a]), f.value, xz)));
      }
    }
    return sup;
  };

  out.constant = 0.0;
  for (double R : radii) {
    auto sup = sup_derivs(R);
    double rhs = 0.0;
    for (std::size_t a = 0; a < alphas.size(); ++a)
      rhs += std::pow(R, weighted_degree(alphas[a], g.weights())) * sup[a];
    double worst = 0.0;
    for (const auto& u : dirs) {
      GroupPoint y = g.dilate(u, R);
      double lhs = std::fabs(f(g.multiply(x, y)) - P.evaluate(y.coords()));
      worst = std::max(worst, lhs);
      if (rhs > 0.0) out.constant = std::max(out.constant, lhs / rhs);
      else if (lhs > 1e-14) out.constant = std::numeric_limits<double>::infinity();
    }
    out.lhs.push_back(worst);
  }
  // Least-squares slope of log lhs against log r.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(out.lhs[i] > 0)) continue;
    double lx = std::log(radii[i]), ly = std::log(out.lhs[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  out.slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx)
                     : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace hogroup
