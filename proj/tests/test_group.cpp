#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hogroup/error.hpp"
#include "hogroup/group.hpp"
#include "hogroup/group_io.hpp"

using namespace hogroup;

namespace {

std::vector<GradedAlgebra> all_groups() {
  return {GradedAlgebra::euclidean(1), GradedAlgebra::euclidean(2),
          GradedAlgebra::anisotropic({1, 2}), GradedAlgebra::heisenberg(),
          GradedAlgebra::engel()};
}

// log(exp X exp Y) by integrating dZ/dt = sum_n B_n^+/n! ad_Z^n (Y), Z(0)=X.
GroupPoint bch_ode(const GradedAlgebra& g, const GroupPoint& x, const GroupPoint& y) {
  const double coef[5] = {1.0, 0.5, 1.0 / 12.0, 0.0, -1.0 / 720.0};
  auto rhs = [&](const GroupPoint& z) {
    GroupPoint acc = y, term = y;
    for (int n = 1; n < 5; ++n) {
      term = g.bracket(z, term);
      acc = acc + term * coef[n];
    }
    return acc;
  };
  GroupPoint z = x;
  const int steps = 400;
  const double h = 1.0 / steps;
  for (int s = 0; s < steps; ++s) {
    GroupPoint k1 = rhs(z);
    GroupPoint k2 = rhs(z + k1 * (h / 2));
    GroupPoint k3 = rhs(z + k2 * (h / 2));
    GroupPoint k4 = rhs(z + k3 * h);
    z = z + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6);
  }
  return z;
}

double maxdiff(const GroupPoint& a, const GroupPoint& b) {
  double m = 0;
  for (int i = 0; i < a.dim(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double maxabs(const GroupPoint& a) {
  double m = 1;
  for (int i = 0; i < a.dim(); ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

}  // namespace

TEST_CASE("Heisenberg product of the generators") {
  auto g = GradedAlgebra::heisenberg();
  GroupPoint z = g.multiply({1, 0, 0}, {0, 1, 0});
  CHECK(z[0] == 1.0);
  CHECK(z[1] == 1.0);
  CHECK(z[2] == 0.5);
}

TEST_CASE("group laws on all bundled groups") {
  std::mt19937_64 rng(7);
  for (const auto& g : all_groups()) {
    INFO(g.name());
    for (int s = 0; s < 200; ++s) {
      GroupPoint x = random_point(g, rng), y = random_point(g, rng), z = random_point(g, rng);
      GroupPoint l = g.multiply(g.multiply(x, y), z);
      GroupPoint r = g.multiply(x, g.multiply(y, z));
      CHECK(maxdiff(l, r) <= 1e-10 * maxabs(l));
      CHECK(maxdiff(g.multiply(x, g.inverse(x)), g.identity()) <= 1e-12 * maxabs(x));
      CHECK(maxdiff(g.multiply(g.identity(), x), x) == 0.0);
      double t = std::exp(std::uniform_real_distribution<double>(-2, 2)(rng));
      GroupPoint a = g.dilate(g.multiply(x, y), t);
      GroupPoint b = g.multiply(g.dilate(x, t), g.dilate(y, t));
      CHECK(maxdiff(a, b) <= 1e-10 * maxabs(a));
      GroupPoint o = bch_ode(g, x, y);
      CHECK(maxdiff(g.multiply(x, y), o) <= 1e-10 * maxabs(o));
    }
  }
}

TEST_CASE("Lebesgue measure is bi-invariant in exponential coordinates") {
  std::mt19937_64 rng(3);
  for (const auto& g : all_groups()) {
    for (int s = 0; s < 20; ++s) {
      GroupPoint a = random_point(g, rng), x = random_point(g, rng);
      for (int side = 0; side < 2; ++side) {
        const int d = g.dim();
        std::vector<double> jac(d * d);
        const double h = 1e-5;
        for (int j = 0; j < d; ++j) {
          GroupPoint xp = x, xm = x;
          xp[j] += h;
          xm[j] -= h;
          GroupPoint fp = side ? g.multiply(xp, a) : g.multiply(a, xp);
          GroupPoint fm = side ? g.multiply(xm, a) : g.multiply(a, xm);
          for (int i = 0; i < d; ++i) jac[i * d + j] = (fp[i] - fm[i]) / (2 * h);
        }
        // Gaussian elimination determinant.
        double det = 1.0;
        for (int c = 0; c < d; ++c) {
          int p = c;
          for (int r = c + 1; r < d; ++r)
            if (std::fabs(jac[r * d + c]) > std::fabs(jac[p * d + c])) p = r;
          if (p != c) {
            for (int k = 0; k < d; ++k) std::swap(jac[c * d + k], jac[p * d + k]);
            det = -det;
          }
          det *= jac[c * d + c];
          for (int r = c + 1; r < d; ++r) {
            double f = jac[r * d + c] / jac[c * d + c];
            for (int k = c; k < d; ++k) jac[r * d + k] -= f * jac[c * d + k];
          }
        }
        CHECK(std::fabs(det - 1.0) <= 1e-8);
      }
    }
  }
}

TEST_CASE("quasi-norm homogeneity, symmetry and triangle constant") {
  std::mt19937_64 rng(11);
  for (const auto& g : all_groups()) {
    INFO(g.name());
    QuasiNorm qn = QuasiNorm::canonical(g);
    GammaEstimate ge = estimate_gamma(g, qn, 42, 4000);
    CHECK(ge.gamma >= 1.0);
    if (g.is_abelian() && g.weights() == std::vector<int>(g.dim(), 1))
      CHECK(ge.gamma == Catch::Approx(1.0).margin(2e-3));
    for (int s = 0; s < 500; ++s) {
      GroupPoint x = random_point(g, rng), y = random_point(g, rng, 0.3);
      double t = 0.37;
      CHECK(std::fabs(qn(g.dilate(x, t)) - t * qn(x)) <= 1e-12 * qn(x));
      CHECK(std::fabs(qn(g.inverse(x)) - qn(x)) <= 1e-15 * qn(x));
      CHECK(qn(g.multiply(x, y)) <= ge.gamma * (qn(x) + qn(y)) * (1 + 1e-9));
    }
  }
}

TEST_CASE("Heisenberg triangle constant exceeds one") {
  auto g = GradedAlgebra::heisenberg();
  QuasiNorm qn = QuasiNorm::canonical(g);
  GammaEstimate ge = estimate_gamma(g, qn, 1, 4000);
  CHECK(ge.sup_ratio > 1.0);
  CHECK(ge.sup_ratio < 2.0);
}

TEST_CASE("polar-coordinate shell law") {
  for (const auto& g : all_groups()) {
    INFO(g.name());
    QuasiNorm qn = QuasiNorm::canonical(g);
    int n = g.dim() >= 4 ? 40 : 160;
    double C = polar_shell_integral(g, qn, 1.0, 2.0, 0.0, n) / std::log(2.0);
    CHECK(C > 0.0);
    for (double s : {-1.0, 0.5, 1.0, 2.0}) {
      for (auto [r, R] : {std::pair{1.0, 2.0}, std::pair{0.5, 3.0}, std::pair{1.0, 4.0}}) {
        double expected = C * (std::pow(R, s) - std::pow(r, s)) / s;
        double got = polar_shell_integral(g, qn, r, R, s, n);
        INFO("s=" << s << " r=" << r << " R=" << R);
        CHECK(std::fabs(got / expected - 1.0) < 0.01);
      }
    }
    double got = polar_shell_integral(g, qn, 0.5, 3.0, 0.0, n);
    CHECK(std::fabs(got / (C * std::log(6.0)) - 1.0) < 0.01);
  }
}

TEST_CASE("Euclidean polar constant is the sphere area") {
  auto g = GradedAlgebra::euclidean(2);
  QuasiNorm qn = QuasiNorm::canonical(g);
  double C = polar_shell_integral(g, qn, 1.0, 2.0, 0.0, 400) / std::log(2.0);
  CHECK(C == Catch::Approx(2 * M_PI).epsilon(2e-3));
}

TEST_CASE("ceil-floor matches enumeration") {
  for (const auto& g : all_groups()) {
    for (int M = 0; M <= 6; ++M) {
      int best = 0;
      std::vector<int> a(g.dim(), 0);
      std::function<void(int)> rec = [&](int i) {
        if (i == g.dim()) {
          if (hom_degree(g, a) <= M) best = std::max(best, length(a));
          return;
        }
        for (int k = 0; k <= M; ++k) {
          a[i] = k;
          rec(i + 1);
        }
        a[i] = 0;
      };
      rec(0);
      CHECK(ceil_floor(g, M) == best);
    }
  }
  auto g = GradedAlgebra::anisotropic({2, 2});
  CHECK(ceil_floor(g, 1) == 0);
  CHECK(ceil_floor(GradedAlgebra::heisenberg(), 3) == 3);
  CHECK(ceil_floor(GradedAlgebra::anisotropic({1, 2}), 5) == 5);
}

TEST_CASE("structural flags") {
  CHECK(GradedAlgebra::heisenberg().step() == 2);
  CHECK(GradedAlgebra::engel().step() == 3);
  CHECK(GradedAlgebra::engel().homogeneous_dimension() == 7);
  CHECK(GradedAlgebra::heisenberg().is_stratified());
  CHECK_FALSE(GradedAlgebra::anisotropic({1, 2}).is_stratified());
  CHECK(GradedAlgebra::euclidean(2).is_abelian());
  CHECK(QuasiNorm::canonical(GradedAlgebra::engel()).exponent() == 12);
}

TEST_CASE("invalid bracket tables name the violated invariant") {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return std::string("none");
  };
  CHECK(code([] { GradedAlgebra::create("x", {1, 1, 2}, {{0, 1, 2, 1.0}, {1, 0, 2, 1.0}}); }) ==
        "antisymmetry");
  CHECK(code([] { GradedAlgebra::create("x", {1, 1, 3}, {{0, 1, 2, 1.0}}); }) == "grading");
  CHECK(code([] { GradedAlgebra::create("x", {1, 2, 1}, {}); }) == "weights_sorted");
  CHECK(code([] { GradedAlgebra::create("x", {0, 1}, {}); }) == "weights_positive");
  CHECK(code([] { GradedAlgebra::create("x", {1, 1}, {{0, 5, 1, 1.0}}); }) == "index_range");
  // Weight-compatible, but [e1,e5] and [e2,e4] do not cancel in the Jacobi sum
  // for (e1,e2,e3).
  CHECK(code([] {
          GradedAlgebra::create("x", {1, 1, 2, 3, 3, 4},
                                {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}, {1, 2, 4, 1.0},
                                 {0, 4, 5, 1.0}, {1, 3, 5, 2.0}});
        }) == "jacobi");
  // Filiform of step 5.
  CHECK(code([] {
          GradedAlgebra::create("x", {1, 1, 2, 3, 4, 5},
                                {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}, {0, 3, 4, 1.0}, {0, 4, 5, 1.0}});
        }) == "step_limit");
}

TEST_CASE("group files round-trip and bundled groups resolve") {
  for (const auto& name : bundled_group_names()) {
    GradedAlgebra g = resolve_algebra(name);
    GradedAlgebra h = parse_algebra(algebra_to_json(g));
    CHECK(h.weights() == g.weights());
    CHECK(h.brackets().size() == g.brackets().size());
  }
  CHECK(resolve_algebra("H1").step() == 2);
  CHECK_THROWS_AS(resolve_algebra("nope"), Error);
}
