#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "hogroup/grid.hpp"

using namespace hogroup;

namespace {

GridPtr line(int n, double a) {
  return std::make_shared<const Grid>(Grid::centered(GradedAlgebra::euclidean(1), {a}, {n}));
}

double gauss(double x, double s) { return std::exp(-x * x / (2 * s * s)) / std::sqrt(2 * M_PI * s * s); }

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("grid geometry") {
  auto g = line(4096, 64.0);
  CHECK(g->spacing(0) == 1.0 / 32);
  CHECK(g->identity_index() == 2048);
  CHECK(g->point(2048)[0] == 0.0);
  Grid h = Grid::centered(GradedAlgebra::heisenberg(), {2, 2, 4}, {8, 8, 16});
  int idx[3];
  for (std::size_t k : {0ul, 17ul, 1023ul}) {
    h.unflatten(k, idx);
    CHECK(h.flatten(idx) == k);
  }
  CHECK(h.point(h.identity_index()) == h.algebra().identity());
  Grid off(GradedAlgebra::euclidean(1), {0.1}, {1.1}, {10});
  CHECK(off.identity_index() == -1);
}

TEST_CASE("norms, integrals and moments of a Gaussian") {
  auto g = line(4096, 64.0);
  auto f = SampledFunction::from(g, [](const GroupPoint& x) { return gauss(x[0], 1.5); });
  CHECK(integrate(f) == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(lp_norm(f, 2.0) == Catch::Approx(std::sqrt(1.0 / (2 * std::sqrt(M_PI) * 1.5))).epsilon(1e-12));
  CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) == Catch::Approx(gauss(0, 1.5)));
  CHECK(lp_norm(f, 3.0) == Catch::Approx(std::pow(std::pow(gauss(0, 1.5), 3) * std::sqrt(2 * M_PI) * 1.5 / std::sqrt(3.0), 1.0 / 3)).epsilon(1e-10));
  auto m = moments(f, 2);
  CHECK(m[0].second == Catch::Approx(1.0));
  CHECK(std::fabs(m[1].second) < 1e-12);
  CHECK(m[2].second == Catch::Approx(2.25).epsilon(1e-10));
}

TEST_CASE("dilation preserves the integral") {
  auto g = line(4096, 64.0);
  auto box = SampledFunction::from(g, [](const GroupPoint& x) { return x[0] >= 0 && x[0] < 1 ? 1.0 : 0.0; });
  auto d = dilate_function(box, 2.0);
  CHECK(d.sample(GroupPoint{0.5}) == 0.5);
  CHECK(d.sample(GroupPoint{1.5}) == 0.5);
  CHECK(d.sample(GroupPoint{2.5}) == 0.0);
  CHECK(integrate(d) == Catch::Approx(integrate(box)).epsilon(0.02));

  auto H = std::make_shared<const Grid>(Grid::centered(GradedAlgebra::heisenberg(), {6, 6, 12}, {48, 48, 96}));
  auto f = SampledFunction::from(H, [](const GroupPoint& x) {
    return std::exp(-x[0] * x[0] - x[1] * x[1] - 0.25 * x[2] * x[2]);
  });
  for (double t : {0.5, 1.5}) CHECK(integrate(dilate_function(f, t)) == Catch::Approx(integrate(f)).epsilon(2e-2));
}

TEST_CASE("FFT convolution matches the direct sum and the Gaussian semigroup") {
  auto g = line(512, 16.0);
  auto f = SampledFunction::from(g, [](const GroupPoint& x) { return gauss(x[0] - 1, 0.7); });
  auto k = SampledFunction::from(g, [](const GroupPoint& x) { return gauss(x[0], 1.1); });
  auto a = convolve(f, k);
  auto b = convolve_direct(f, k);
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  CHECK(m < 1e-12);
  for (std::size_t i = 0; i < a.size(); i += 37)
    CHECK(a[i] == Catch::Approx(gauss(g->point(i)[0] - 1, std::hypot(0.7, 1.1))).margin(1e-10));

  auto a2 = std::make_shared<const Grid>(Grid::centered(GradedAlgebra::anisotropic({1, 2}), {4, 8}, {32, 32}));
  auto p = SampledFunction::from(a2, [](const GroupPoint& x) { return std::exp(-x[0] * x[0] - 0.2 * x[1] * x[1] + 0.3 * x[0]); });
  auto q = SampledFunction::from(a2, [](const GroupPoint& x) { return std::exp(-2 * x[0] * x[0] - 0.1 * x[1] * x[1]); });
  auto c1 = convolve(p, q), c2 = convolve_direct(p, q);
  m = 0;
  for (std::size_t i = 0; i < c1.size(); ++i) m = std::max(m, std::fabs(c1[i] - c2[i]));
  CHECK(m < 1e-12);
}

TEST_CASE("Heisenberg convolution equals the double-sum oracle") {
  auto alg = GradedAlgebra::heisenberg();
  auto H = std::make_shared<const Grid>(Grid::centered(alg, {2, 2, 4}, {8, 8, 8}));
  auto f = SampledFunction::from(H, [](const GroupPoint& x) { return std::exp(-x[0] * x[0] - x[1] - 0.1 * x[2] * x[2]); });
  auto k = SampledFunction::from(H, [](const GroupPoint& x) { return std::exp(-x[0] * x[0] - x[1] * x[1] - 0.3 * x[2] * x[2] + 0.2 * x[0]); });
  auto c = convolve(f, k);
  // Oracle: Heisenberg law written out by hand.
  double worst = 0;
  for (std::size_t i = 0; i < H->size(); ++i) {
    GroupPoint x = H->point(i);
    double s = 0;
    for (std::size_t j = 0; j < H->size(); ++j) {
      GroupPoint y = H->point(j);
      GroupPoint z{x[0] - y[0], x[1] - y[1], x[2] - y[2] + 0.5 * (-y[0] * x[1] + y[1] * x[0])};
      s += f[j] * k.sample(z);
    }
    s *= H->cell_volume();
    worst = std::max(worst, std::fabs(s - c[i]));
  }
  CHECK(worst <= 1e-14);
  auto c2 = convolve(k, f);
  double diff = 0;
  for (std::size_t i = 0; i < c.size(); ++i) diff = std::max(diff, std::fabs(c[i] - c2[i]));
  CHECK(diff > 1e-3);
}

TEST_CASE("involution and translation") {
  auto g = line(256, 8.0);
  auto f = SampledFunction::from(g, [](const GroupPoint& x) { return x[0] > 0 ? std::exp(-x[0]) : 0.0; });
  auto fi = involution(f);
  CHECK(fi.sample(GroupPoint{-1.0}) == Catch::Approx(std::exp(-1.0)));
  auto ft = translate(f, GroupPoint{1.0});
  CHECK(ft.sample(GroupPoint{2.0}) == Catch::Approx(std::exp(-1.0)));
}

TEST_CASE("binary function files round-trip byte-identically") {
  auto dir = std::filesystem::temp_directory_path() / "hogroup_grid_io";
  std::filesystem::create_directories(dir);
  auto H = std::make_shared<const Grid>(Grid::centered(GradedAlgebra::heisenberg(), {2, 2, 4}, {4, 4, 8}));
  auto f = SampledFunction::from(H, [](const GroupPoint& x) { return std::sin(x[0]) + x[2]; });
  std::string p1 = (dir / "a.bin").string(), p2 = (dir / "b.bin").string();
  write_function(f, p1);
  auto r = read_function(p1);
  CHECK(r.values() == f.values());
  CHECK(r.grid() == f.grid());
  write_function(r, p2);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(slurp(p1).size() == 8 * f.size());
  SampledFunction z(H, f.values(), std::vector<double>(f.size(), 1.0));
  write_function(z, p2);
  CHECK(read_function(p2).imag() == z.imag());
}
