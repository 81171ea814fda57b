#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hogroup/taylor.hpp"

using namespace hogroup;

namespace {

// A smooth, non-polynomial test function on a group of dimension >= 1.
SmoothFunction bump(double shift) {
  return make_smooth([shift](const auto& x) {
    using std::cos;
    using std::exp;
    auto r = x[0] * x[0];
    for (std::size_t i = 1; i < x.size(); ++i) r = r + x[i] * x[i] * 0.5;
    return exp(r * -0.5) * cos(x[0] * 1.3 + shift);
  });
}

Polynomial random_poly(int d, int deg, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  Polynomial p(d);
  MultiIndex a(d, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == d) {
      p.add_term(a, u(rng));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      a[i] = k;
      rec(i + 1, left - k);
    }
    a[i] = 0;
  };
  rec(0, deg);
  return p;
}

double max_coeff_diff(const Polynomial& a, const Polynomial& b) {
  double m = 0;
  Polynomial d = a - b;
  for (const auto& [k, c] : d.terms()) m = std::max(m, std::fabs(c));
  return m;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  Polynomial p = (x + y) * (x - y);
  CHECK(p.coefficient({2, 0}) == 1.0);
  CHECK(p.coefficient({0, 2}) == -1.0);
  CHECK(p.coefficient({1, 1}) == 0.0);
  CHECK(p.derivative(0).coefficient({1, 0}) == 2.0);
  double pt[2] = {3.0, 2.0};
  CHECK(p.evaluate(pt) == 5.0);
  CHECK(p.degree({1, 2}) == 4);
  CHECK(p.is_homogeneous({1, 1}, 2));
  Polynomial s = p.substitute({x + y, Polynomial::constant(2, 1.0)});
  CHECK(s.evaluate(pt) == Catch::Approx(24.0));
}

TEST_CASE("symbolic BCH agrees with the numeric group law") {
  std::mt19937_64 rng(5);
  for (auto g : {GradedAlgebra::heisenberg(), GradedAlgebra::engel()}) {
    auto bch = bch_polynomials(g);
    for (int s = 0; s < 20; ++s) {
      GroupPoint x = random_point(g, rng), y = random_point(g, rng);
      std::vector<double> xy(x.coords().begin(), x.coords().end());
      xy.insert(xy.end(), y.coords().begin(), y.coords().end());
      GroupPoint z = g.multiply(x, y);
      for (int i = 0; i < g.dim(); ++i)
        CHECK(bch[i].evaluate(xy) == Catch::Approx(z[i]).margin(1e-12));
    }
  }
}

TEST_CASE("Heisenberg left-invariant fields in closed form") {
  auto X = left_invariant_fields(GradedAlgebra::heisenberg());
  // X1 = d1 - x2/2 d3, X2 = d2 + x1/2 d3, X3 = d3
  CHECK(X[0].coeffs[0].coefficient({0, 0, 0}) == 1.0);
  CHECK(X[0].coeffs[2].coefficient({0, 1, 0}) == -0.5);
  CHECK(X[1].coeffs[2].coefficient({1, 0, 0}) == 0.5);
  CHECK(X[2].coeffs[2].coefficient({0, 0, 0}) == 1.0);
  auto Y = right_invariant_fields(GradedAlgebra::heisenberg());
  CHECK(Y[0].coeffs[2].coefficient({0, 1, 0}) == 0.5);
}

TEST_CASE("field invariants: commutators, homogeneity, left/right commute") {
  for (auto g : {GradedAlgebra::heisenberg(), GradedAlgebra::engel()}) {
    INFO(g.name());
    auto X = left_invariant_fields(g);
    auto Y = right_invariant_fields(g);
    Polynomial f = random_poly(g.dim(), 5, 3);
    for (int i = 0; i < g.dim(); ++i)
      for (int j = 0; j < g.dim(); ++j) {
        Polynomial comm = X[i].apply(X[j].apply(f)) - X[j].apply(X[i].apply(f));
        Polynomial expect(g.dim());
        for (const auto& b : g.brackets())
          if (b.i == i && b.j == j) expect += X[b.k].apply(f) * b.c;
        CHECK(max_coeff_diff(comm, expect) < 1e-12);
        Polynomial lr = X[i].apply(Y[j].apply(f)) - Y[j].apply(X[i].apply(f));
        CHECK(max_coeff_diff(lr, Polynomial(g.dim())) < 1e-12);
      }
    // A homogeneous monomial of degree D goes to degree D - v_j.
    for (const auto& a : multi_indices_upto(g, 4)) {
      Polynomial m = Polynomial::monomial(a);
      int D = weighted_degree(a, g.weights());
      for (int j = 0; j < g.dim(); ++j)
        CHECK(X[j].apply(m).is_homogeneous(g.weights(), D - g.weight(j)));
    }
  }
}

TEST_CASE("left-invariant fields commute with left translation") {
  auto g = GradedAlgebra::engel();
  auto X = left_invariant_fields(g);
  Polynomial f = random_poly(g.dim(), 4, 9);
  std::mt19937_64 rng(2);
  GroupPoint a = random_point(g, rng), x = random_point(g, rng);
  // (X_j (f o L_a))(x) = (X_j f)(a x)
  SmoothFunction sf = smooth_from_polynomial(f);
  for (int j = 0; j < g.dim(); ++j) {
    auto shifted = [&](const GroupPoint& p) { return f.evaluate(g.multiply(a, p).coords()); };
    double lhs = left_word_derivative_fd(g, {j}, shifted, x);
    double rhs = X[j].apply(f).evaluate(g.multiply(a, x).coords());
    CHECK(lhs == Catch::Approx(rhs).epsilon(1e-6));
    CHECK(left_word_derivative(g, {j}, sf, g.multiply(a, x)) == Catch::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("jets give exact derivatives") {
  auto g = GradedAlgebra::euclidean(1);
  auto f = make_smooth([](const auto& x) {
    using std::exp;
    using std::log;
    using std::sin;
    using std::sqrt;
    return exp(x[0]) * sin(x[0]) + log(x[0] + 2.0) + sqrt(x[0] + 3.0) + 1.0 / (x[0] + 4.0);
  });
  double x0 = 0.3;
  // Third derivative in closed form.
  double d3 = std::exp(x0) * 2 * (std::cos(x0) - std::sin(x0)) + 2 / std::pow(x0 + 2, 3) +
              (3.0 / 8.0) * std::pow(x0 + 3, -2.5) - 6 / std::pow(x0 + 4, 4);
  CHECK(left_word_derivative(g, {0, 0, 0}, f, GroupPoint{x0}) == Catch::Approx(d3).epsilon(1e-12));
  double fd = left_word_derivative_fd(g, {0, 0, 0}, f.value, GroupPoint{x0});
  CHECK(fd == Catch::Approx(d3).epsilon(1e-4));
}

TEST_CASE("Taylor routes agree and satisfy the defining property") {
  for (auto g : {GradedAlgebra::heisenberg(), GradedAlgebra::engel(),
                 GradedAlgebra::anisotropic({1, 2})}) {
    std::mt19937_64 rng(4);
    for (int M = 0; M <= 4; ++M) {
      INFO(g.name() << " M=" << M);
      GroupPoint x = random_point(g, rng, 0.5);
      auto f = bump(0.2);
      Polynomial P1 = taylor_polynomial(g, f, x, M);
      Polynomial P2 = taylor_polynomial_defining(g, f, x, M);
      CHECK(max_coeff_diff(P1, P2) < 1e-10);
      CHECK(taylor_defining_residual(g, f, x, M, P1) < 1e-8);
      CHECK(P1.degree(g.weights()) <= M);
    }
  }
}

TEST_CASE("Taylor polynomial reproduces polynomials of low degree") {
  auto g = GradedAlgebra::heisenberg();
  // Homogeneous degree <= 3 polynomial.
  Polynomial f = Polynomial::monomial({1, 0, 1}) + Polynomial::monomial({0, 2, 0}) * 2.0 +
                 Polynomial::monomial({1, 0, 0});
  auto sf = smooth_from_polynomial(f);
  GroupPoint x{0.3, -0.7, 1.1};
  Polynomial P = taylor_polynomial(g, sf, x, 3);
  std::mt19937_64 rng(1);
  for (int s = 0; s < 10; ++s) {
    GroupPoint y = random_point(g, rng);
    CHECK(P.evaluate(y.coords()) == Catch::Approx(f.evaluate(g.multiply(x, y).coords())).margin(1e-12));
  }
}

TEST_CASE("finite-difference Taylor route approximates the exact one") {
  auto g = GradedAlgebra::heisenberg();
  auto f = bump(0.1);
  GroupPoint x{0.2, 0.1, -0.3};
  Polynomial exact = taylor_polynomial(g, f, x, 2);
  Polynomial fd = taylor_polynomial(g, smooth_from_callable(f.value), x, 2);
  CHECK(max_coeff_diff(exact, fd) < 1e-5);
}

TEST_CASE("Taylor remainder decay") {
  std::vector<double> radii;
  for (int k = 0; k < 8; ++k) radii.push_back(0.02 * std::pow(1.5, k));
  auto sine = make_smooth([](const auto& x) {
    using std::sin;
    return sin(x[0]);
  });
  auto R = GradedAlgebra::euclidean(1);
  auto qn = QuasiNorm::canonical(R);
  auto c1 = taylor_remainder_check(R, qn, sine, GroupPoint{0.5}, 1, radii);
  CHECK(std::fabs(c1.slope - 2.0) < 0.1);
  CHECK(std::isfinite(c1.constant));
  auto c0 = taylor_remainder_check(R, qn, sine, GroupPoint{0.0}, 1, radii);
  CHECK(c0.slope >= 1.9);

  auto H = GradedAlgebra::heisenberg();
  auto qh = QuasiNorm::canonical(H);
  for (int M = 1; M <= 4; ++M) {
    auto c = taylor_remainder_check(H, qh, bump(0.3), GroupPoint{0.2, -0.1, 0.15}, M, radii);
    INFO("M=" << M << " slope=" << c.slope);
    CHECK(std::fabs(c.slope - (M + 1)) < 0.1);
    CHECK(std::isfinite(c.constant));
    CHECK(c.eta == 1.0);
  }
}
