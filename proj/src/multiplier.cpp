#include "hogroup/multiplier.hpp"

#include <cmath>

#include "hogroup/error.hpp"

namespace hogroup {

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

Bump::Bump(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  if (!(0 < a && a < b && b <= c && c < d))
    throw Error("spectral", "bump", "need 0 < a < b <= c < d");
}

double Bump::operator()(double x) const {
  if (x <= a_ || x >= d_) return 0.0;
  if (x < b_) return smooth_step((x - a_) / (b_ - a_));
  if (x > c_) return smooth_step((d_ - x) / (d_ - c_));
  return 1.0;
}

namespace {

const double kGx[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                       0.8650633666889845, 0.9739065285171717};
const double kGw[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                       0.1494513491505806, 0.0666713443086881};

void check_theta(const std::function<double(double)>& theta, double lo, double hi) {
  if (!(lo > 0 && hi > lo)) throw Error("spectral", "support", "need 0 < lo < hi");
  if (lo > 0.6 || hi < 5.0 / 3.0)
    throw Error("spectral", "theta_vanishes", "support misses part of [3/5, 5/3]");
  for (int k = 0; k <= 1000; ++k) {
    double x = 0.6 * std::pow((5.0 / 3.0) / 0.6, k / 1000.0);
    double v = theta(x);
    if (!(v > 0)) throw Error("spectral", "theta_vanishes", "theta(" + std::to_string(x) + ") <= 0");
  }
}

}  // namespace

double log_integral(const std::function<double(double)>& g, double a, double b, int panels) {
  double la = std::log(a), lb = std::log(b), total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double lo = la + (lb - la) * p / panels, hi = la + (lb - la) * (p + 1) / panels;
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    for (int k = 0; k < 5; ++k) {
      total += kGw[k] * h * g(std::exp(c + h * kGx[k]));
      total += kGw[k] * h * g(std::exp(c - h * kGx[k]));
    }
  }
  return total;
}

Multiplier Multiplier::discrete(std::function<double(double)> theta, double lo, double hi) {
  check_theta(theta, lo, hi);
  Multiplier m;
  m.theta_ = std::move(theta);
  m.lo_ = lo;
  m.hi_ = hi;
  m.kind_ = Kind::Discrete;
  m.tag_ = "discrete";
  return m;
}

Multiplier Multiplier::continuous(std::function<double(double)> theta, double lo, double hi) {
  check_theta(theta, lo, hi);
  Multiplier m;
  m.theta_ = std::move(theta);
  m.lo_ = lo;
  m.hi_ = hi;
  m.kind_ = Kind::Continuous;
  m.tag_ = "continuous";
  const auto& th = m.theta_;
  m.norm_ = std::sqrt(log_integral([&](double u) { return th(u) * th(u); }, lo, hi, 512));
  return m;
}

Multiplier Multiplier::discrete(const Bump& b) {
  return discrete([b](double x) { return b(x); }, b.lo(), b.hi());
}

Multiplier Multiplier::continuous(const Bump& b) {
  return continuous([b](double x) { return b(x); }, b.lo(), b.hi());
}

Multiplier Multiplier::as_continuous() const {
  Multiplier self = *this;
  Multiplier m = continuous([self](double x) { return self(x); }, lo_, hi_);
  m.tag_ = tag_ + "+continuous";
  return m;
}

double Multiplier::operator()(double lambda) const {
  if (!(lambda > lo_ && lambda < hi_)) return 0.0;
  double th = theta_(lambda);
  if (th == 0.0) return 0.0;
  if (kind_ == Kind::Continuous) return th / norm_;
  // j with lo < 2^{-j} lambda < hi
  int jlo = static_cast<int>(std::floor(std::log2(lambda / hi_)));
  int jhi = static_cast<int>(std::ceil(std::log2(lambda / lo_)));
  double s = 0.0;
  for (int j = jlo; j <= jhi; ++j) {
    double v = theta_(std::ldexp(lambda, -j));
    s += v * v;
  }
  return th / std::sqrt(s);
}

double calderon_deviation(const Multiplier& m, double lmin, double lmax, int samples) {
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    double l = lmin * std::pow(lmax / lmin, samples == 1 ? 0.0 : double(k) / (samples - 1));
    double s;
    if (m.kind() == Multiplier::Kind::Discrete) {
      s = 0.0;
      int jlo = static_cast<int>(std::floor(std::log2(l / m.hi()))) - 1;
      int jhi = static_cast<int>(std::ceil(std::log2(l / m.lo()))) + 1;
      for (int j = jlo; j <= jhi; ++j) {
        double v = m(std::ldexp(l, -j));
        s += v * v;
      }
    } else {
      // t l ranges over the support.
      s = log_integral([&](double u) { double v = m(u); return v * v; }, m.lo(), m.hi(), 512);
    }
    worst = std::max(worst, std::fabs(s - 1.0));
  }
  return worst;
}

}  // namespace hogroup
