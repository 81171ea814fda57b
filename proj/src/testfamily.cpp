#include "hogroup/testfamily.hpp"

#include <cmath>
#include <random>

#include "hogroup/error.hpp"

namespace hogroup {

SampledFunction zero_mean(const SampledFunction& f, double width) {
  const auto& g = f.grid().algebra();
  QuasiNorm qn = QuasiNorm::canonical(g);
  auto gauss = SampledFunction::from(f.grid_ptr(), [&](const GroupPoint& x) {
    double r = qn(x) / width;
    return std::exp(-r * r / 2);
  });
  double c = integrate(f) / integrate(gauss);
  return f - c * gauss;
}

std::vector<TestFunction> test_family(const GridPtr& grid) {
  const auto& g = grid->algebra();
  QuasiNorm qn = QuasiNorm::canonical(g);
  const double h = grid->max_spacing();
  std::vector<TestFunction> fam;
  auto add = [&](std::string name, bool rough, std::function<double(const GroupPoint&)> fn) {
    fam.push_back({std::move(name), rough, zero_mean(SampledFunction::from(grid, fn))});
  };
  auto shifted = [&](const GroupPoint& x, double c) {
    GroupPoint y = x;
    y[0] -= c;
    return qn(y);
  };
  auto hat = [&](double w, double c) {
    return [=](const GroupPoint& x) {
      double u = shifted(x, c) / w;
      return (1 - u * u) * std::exp(-u * u / 2);
    };
  };
  auto gauss = [&](double w, double c) {
    return [=](const GroupPoint& x) {
      double u = shifted(x, c) / w;
      return std::exp(-u * u / 2);
    };
  };
  for (double w : {0.5, 1.0, 2.0, 4.0}) add("hat_w" + std::to_string(w).substr(0, 3), false, hat(w, 0.0));
  add("gauss_w1", false, gauss(1.0, 0.0));
  add("gauss_w3", false, gauss(3.0, 0.0));
  for (double om : {2.0, 4.0, 8.0})
    add("cos" + std::to_string(int(om)) + "_gauss", false, [=](const GroupPoint& x) {
      double u = qn(x);
      return std::cos(om * x[0]) * std::exp(-u * u / 2);
    });
  add("sin3_gauss", false, [=](const GroupPoint& x) {
    double u = qn(x);
    return std::sin(3 * x[0]) * std::exp(-u * u / 2);
  });
  add("hat_at_+10", false, hat(1.0, 10.0));
  add("hat_at_-10", false, hat(1.0, -10.0));
  add("dgauss", false, [=](const GroupPoint& x) {
    double u = qn(x) / 1.5;
    return x[0] * std::exp(-u * u / 2);
  });
  add("two_scales", false, [=](const GroupPoint& x) { return hat(0.7, -3.0)(x) + 0.5 * hat(3.0, 4.0)(x); });
  add("random_gaussians", false, [&]() {
    std::mt19937 rng(20240607);
    std::uniform_real_distribution<double> C(-8, 8), W(0.4, 3.0), A(-1, 1);
    std::vector<std::array<double, 3>> terms(5);
    for (auto& t : terms) t = {C(rng), W(rng), A(rng)};
    return std::function<double(const GroupPoint&)>([=](const GroupPoint& x) {
      double s = 0.0;
      for (const auto& t : terms) {
        double u = shifted(x, t[0]) / t[1];
        s += t[2] * std::exp(-u * u / 2);
      }
      return s;
    });
  }());
  // Rough exemplars, each confined by a wide Gaussian window.
  auto window = [=](const GroupPoint& x) {
    double u = qn(x) / 12.0;
    return std::exp(-u * u / 2);
  };
  add("indicator_01", true, [=](const GroupPoint& x) {
    GroupPoint y = x;
    y[0] -= 0.5;
    return qn(y) < 0.5 ? 1.0 : 0.0;
  });
  add("log_abs", true, [=](const GroupPoint& x) {
    return std::log(std::max(qn(x), h / 2)) * window(x);
  });
  add("sqrt_cusp", true, [=](const GroupPoint& x) { return std::sqrt(qn(x)) * window(x); });
  add("tent", true, [=](const GroupPoint& x) { return std::max(0.0, 1.0 - qn(x) / 2); });
  add("jump", true, [=](const GroupPoint& x) {
    return (x[0] < 0 ? -1.0 : 1.0) * std::exp(-qn(x) / 2);
  });
  if (fam.size() != 20) throw Error("classical", "family_size", "test family must hold 20 functions");
  return fam;
}

}  // namespace hogroup
