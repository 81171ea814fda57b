#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "hogroup/classical.hpp"
#include "hogroup/error.hpp"
#include "hogroup/fft.hpp"
#include "hogroup/lpnorms.hpp"
#include "hogroup/taylor.hpp"
#include "hogroup/testfamily.hpp"

using namespace hogroup;

namespace {

GridPtr line(int n, double a = 64.0) {
  return std::make_shared<const Grid>(Grid::centered(GradedAlgebra::euclidean(1), {a}, {n}));
}

SampledFunction gauss(const GridPtr& g, double w = 1.0) {
  return SampledFunction::from(g, [w](const GroupPoint& x) {
    double r2 = 0.0;
    for (int i = 0; i < x.dim(); ++i) r2 += x[i] * x[i];
    return std::exp(-r2 / (2 * w * w));
  });
}

struct Interval {
  double lo = 1e300, hi = 0.0;
  void add(double r) { lo = std::min(lo, r), hi = std::max(hi, r); }
  bool close_to(const Interval& o, double tol) const {
    return std::fabs(lo / o.lo - 1) < tol && std::fabs(hi / o.hi - 1) < tol;
  }
};

// (int |xi|^{2 sigma} |fhat|^2 dxi / 2pi)^{1/2} by direct DFT sums.
double fourier_sobolev(const SampledFunction& f, double sigma) {
  const Grid& G = f.grid();
  const int n = G.n(0);
  const double h = G.spacing(0);
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    const double xi = RealFFT::frequency(k, n, h);
    std::complex<double> c = 0.0;
    for (int p = 0; p < n; ++p) c += f[p] * std::polar(1.0, -2 * M_PI * double(k) * p / n);
    if (xi != 0.0) s += std::pow(std::fabs(xi), 2 * sigma) * std::norm(c * h);
  }
  return std::sqrt(s / (n * h));
}

}  // namespace

TEST_CASE("test family") {
  auto g = line(1024);
  auto fam = test_family(g);
  REQUIRE(fam.size() == 20);
  int rough = 0;
  for (const auto& t : fam) {
    CHECK(std::fabs(integrate(t.f)) < 1e-10 * (1 + lp_norm(t.f, 1.0)));
    CHECK(lp_norm(t.f, 2.0) > 0);
    rough += t.rough;
  }
  CHECK(rough == 5);
}

TEST_CASE("hardy norm") {
  auto g = line(2048);
  auto op = SymbolOperator::sqrt_laplacian(g);
  CHECK(hardy_norm(SampledFunction::zeros(g), 2.0, *op) == 0.0);
  auto f = gauss(g);
  CHECK(hardy_norm(f, 2.0, *op) >= lp_norm(f, 2.0) * (1 - 1e-12));
  CHECK_THROWS_AS(hardy_norm(f, kInf, *op), Error);
  auto rs = hardy_scales(*g);
  CHECK(rs.front() == Catch::Approx(g->max_spacing()));
  CHECK(rs.back() <= g->diameter() / 4 * (1 + 1e-12));
}

TEST_CASE("bmo norm") {
  auto qn = [](const GridPtr& g) { return QuasiNorm::canonical(g->algebra()); };
  SECTION("constant") {
    auto g = line(1024);
    DyadicBallSystem balls(g, qn(g), -4, 4);
    auto one = SampledFunction::from(g, [](const GroupPoint&) { return 3.0; });
    CHECK(bmo_norm(one, balls) < 1e-14);
  }
  SECTION("log |x| is stable under refinement") {
    double v[2];
    int i = 0;
    for (int n : {2048, 4096}) {
      auto g = line(n);
      DyadicBallSystem balls(g, qn(g), -6, 4);
      auto lg = SampledFunction::from(g, [&](const GroupPoint& x) {
        return std::log(std::max(std::fabs(x[0]), g->spacing(0) / 2));
      });
      v[i++] = bmo_norm(lg, balls);
    }
    CHECK(v[0] > 0.1);
    CHECK(v[1] == Catch::Approx(v[0]).epsilon(0.1));
  }
  SECTION("seeded") {
    auto g = line(1024);
    DyadicBallSystem balls(g, qn(g), -4, 4);
    auto f = gauss(g);
    CHECK(bmo_norm(f, balls, 64, 7) == bmo_norm(f, balls, 64, 7));
  }
}

TEST_CASE("lipschitz seminorm") {
  auto g = line(1024, 16.0);
  auto one = SampledFunction::from(g, [](const GroupPoint&) { return 1.0; });
  for (double s : {0.3, 0.7, 1.0}) CHECK(lipschitz_seminorm(one, s) < 1e-14);
  auto lin = SampledFunction::from(g, [](const GroupPoint& x) { return x[0]; });
  CHECK(lipschitz_seminorm(lin, 1.0) < 1e-12);
  // First differences of x are |y|, so the quotient is |y|^{1 - sigma}.
  CHECK(lipschitz_seminorm(lin, 0.5) == Catch::Approx(std::sqrt(g->diameter() / 8)).epsilon(0.02));
  CHECK_THROWS_AS(lipschitz_seminorm(lin, 0.0), Error);
  auto a = std::make_shared<const Grid>(
      Grid::centered(GradedAlgebra::anisotropic({1, 2}), {4.0, 4.0}, {16, 16}));
  auto fa = SampledFunction::from(a, [](const GroupPoint& x) { return x[0]; });
  CHECK_THROWS_AS(lipschitz_seminorm(fa, 1.5), Error);
  SECTION("sigma > 1 through derivatives") {
    auto q = gauss(g);
    double v = lipschitz_seminorm(q, 1.5);
    auto c = SampledFunction::from(g, [](const GroupPoint& x) { return -x[0] * std::exp(-x[0] * x[0] / 2); });
    CHECK(v == Catch::Approx(lipschitz_seminorm(c, 0.5)).epsilon(1e-2));
  }
}

TEST_CASE("sobolev norm") {
  auto g = line(512, 16.0);
  auto op = SymbolOperator::sqrt_laplacian(g);
  auto f = zero_mean(gauss(g), 2.0);
  for (double p : {1.0, 2.0, 3.0}) {
    auto v = sobolev_norm(f, 0.0, p, *op);
    CHECK(v.value == Catch::Approx(lp_norm(f, p)).epsilon(1e-9));
  }
  for (double s : {0.5, 1.0, 1.5})
    CHECK(sobolev_norm(f, s, 2.0, *op).value == Catch::Approx(fourier_sobolev(f, s)).epsilon(1e-8));
  // The Laplacian has degree 2, so the same sigma gives the same power.
  auto lap = SymbolOperator::laplacian(g);
  CHECK(sobolev_norm(f, 1.0, 2.0, *lap).value ==
        Catch::Approx(sobolev_norm(f, 1.0, 2.0, *op).value).epsilon(1e-8));
  auto one = SampledFunction::from(g, [](const GroupPoint&) { return 1.0; });
  CHECK(sobolev_norm(one, 1.0, 2.0, *op).kernel_mass == Catch::Approx(1.0));
}

TEST_CASE("field derivative") {
  SECTION("spectral on R") {
    auto g = line(512, 16.0);
    auto f = gauss(g);
    auto d = field_derivative(f, 0);
    double err = 0.0;
    for (std::size_t p = 0; p < g->size(); ++p) {
      double x = g->point(p)[0];
      err = std::max(err, std::fabs(d[p] + x * std::exp(-x * x / 2)));
    }
    CHECK(err < 1e-10);
  }
  SECTION("H1 left-invariant fields") {
    auto g = std::make_shared<const Grid>(
        Grid::centered(GradedAlgebra::heisenberg(), {2.0, 2.0, 2.0}, {41, 41, 41}));
    // X_1 of x_3 is the x_2 coefficient of the field; check against the symbolic field.
    auto f = SampledFunction::from(g, [](const GroupPoint& x) { return x[2] + x[0] * x[1]; });
    auto fields = left_invariant_fields(g->algebra());
    for (int j : {0, 1}) {
      auto d = field_derivative(f, j);
      double err = 0.0;
      for (std::size_t p = 0; p < g->size(); ++p) {
        GroupPoint x = g->point(p);
        std::vector<int> idx(3);
        g->unflatten(p, idx.data());
        bool inside = true;
        for (int k = 0; k < 3; ++k) inside &= idx[k] > 0 && idx[k] + 1 < g->n(k);
        if (!inside) continue;
        double grad[3] = {x[1], x[0], 1.0};
        double e = 0.0;
        for (int k = 0; k < 3; ++k) e += fields[j].coeffs[k].evaluate(x.coords()) * grad[k];
        err = std::max(err, std::fabs(d[p] - e));
      }
      CHECK(err < 1e-10);
    }
  }
  CHECK_THROWS_AS(field_derivative(gauss(line(64)), 1), Error);
}

TEST_CASE("riesz transforms") {
  auto g = line(4096);
  auto op = SymbolOperator::sqrt_laplacian(g);
  CHECK(lp_norm(riesz_transform(SampledFunction::zeros(g), {1}, *op), 2.0) == 0.0);
  for (const auto& t : test_family(g)) {
    auto h = riesz_transform(t.f, {1}, *op);
    CHECK(lp_norm(h, 2.0) == Catch::Approx(lp_norm(t.f, 2.0)).epsilon(0.01));
  }
  SECTION("Hilbert transform of cos is sin") {
    auto f = SampledFunction::from(g, [](const GroupPoint& x) { return std::cos(x[0]) * std::exp(-x[0] * x[0] / 200); });
    auto h = riesz_transform(f, {1}, *op);
    double err = 0.0;
    for (std::size_t p = 0; p < g->size(); ++p) {
      double x = g->point(p)[0];
      if (std::fabs(x) < 20) err = std::max(err, std::fabs(h[p] + std::sin(x) * std::exp(-x * x / 200)));
    }
    // The symbol is i xi / |xi|, so T cos = -sin.
    CHECK(err < 1e-3);
  }
  SECTION("second order with the Laplacian is minus the identity") {
    auto lap = SymbolOperator::laplacian(g);
    auto f = zero_mean(gauss(g, 2.0));
    auto u = riesz_transform(f, {2}, *lap);
    CHECK(lp_norm(u + f, 2.0) < 1e-8 * lp_norm(f, 2.0));
  }
  SECTION("H1, bounded on L2") {
    auto h1 = std::make_shared<const Grid>(
        Grid::centered(GradedAlgebra::heisenberg(), {2.5, 2.5, 3.0}, {10, 10, 12}));
    auto sub = assemble_sublaplacian(h1);
    auto f = SampledFunction::from(h1, [](const GroupPoint& x) {
      return x[0] * std::exp(-(x[0] * x[0] + x[1] * x[1]) - x[2] * x[2] / 2);
    });
    for (std::vector<int> a : {std::vector<int>{1, 0, 0}, {0, 1, 0}}) {
      double r = lp_norm(riesz_transform(f, a, *sub), 2.0) / lp_norm(f, 2.0);
      CHECK(r > 0.05);
      CHECK(r < 1.5);
    }
  }
  CHECK_THROWS_AS(riesz_transform(gauss(g), {1, 0}, *op), Error);
}

TEST_CASE("identification ratios are resolution stable") {
  Interval hardy[2], bmo[2], lip[2], sob[2];
  int i = 0;
  for (int n : {2048, 4096}) {
    auto g = line(n);
    auto op = SymbolOperator::sqrt_laplacian(g);
    auto filt = build_filter(op, Multiplier::discrete(Bump()));
    auto [j0, j1] = spectral_j_range(*op);
    DyadicBallSystem balls(g, QuasiNorm::canonical(g->algebra()), -j1, -j0);
    for (const auto& t : test_family(g)) {
      auto dec = lp_decompose(t.f, filt, j0, j1);
      hardy[i].add(hardy_norm(t.f, 2.0, *op) / tl_norm(dec, {0, 2, 2, 0}).value);
      bmo[i].add(bmo_norm(t.f, balls, 64) / tl_infinity_norm(dec, {0, kInf, 2, 0}, balls).value);
      sob[i].add(sobolev_norm(t.f, 0.5, 3.0, *op).value / tl_norm(dec, {0.5, 3, 2, 0}).value);
      if (!t.rough) lip[i].add(lipschitz_seminorm(t.f, 0.7) / besov_norm(dec, {0.7, kInf, kInf, 0}).value);
    }
    ++i;
  }
  for (auto* r : {hardy, bmo, lip, sob}) {
    CHECK(r[0].lo > 0);
    CHECK(std::isfinite(r[0].hi));
    CHECK(r[0].close_to(r[1], 0.15));
  }
}
