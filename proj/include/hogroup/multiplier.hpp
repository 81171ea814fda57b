#pragma once

#include <functional>
#include <string>

namespace hogroup {

// Smooth plateau: 0 outside (a, d), 1 on [b, c], exp-type transitions.
class Bump {
 public:
  Bump(double a = 0.5, double b = 0.6, double c = 1.9, double d = 2.0);
  double operator()(double x) const;
  double lo() const { return a_; }
  double hi() const { return d_; }

 private:
  double a_, b_, c_, d_;
};

// C^infinity step: 0 for u <= 0, 1 for u >= 1.
double smooth_step(double u);

// Spectral multiplier m on (0, inf) with support in [lo, hi].
//   discrete:   sum_j m(2^{-j} l)^2 = 1
//   continuous: int_0^inf m(t l)^2 dt/t = 1
class Multiplier {
 public:
  enum class Kind { Discrete, Continuous };

  // theta must be nonnegative, vanish outside [lo, hi] and stay positive on
  // [3/5, 5/3]; otherwise Error("spectral", "theta_vanishes").
  static Multiplier discrete(std::function<double(double)> theta, double lo, double hi);
  static Multiplier continuous(std::function<double(double)> theta, double lo, double hi);
  static Multiplier discrete(const Bump& b);
  static Multiplier continuous(const Bump& b);
  // Same profile with the other normalization: for a discrete m this is
  // m / sqrt(ln 2), which satisfies both conditions.
  Multiplier as_continuous() const;

  double operator()(double lambda) const;
  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::string& tag() const { return tag_; }

 private:
  Multiplier() = default;
  std::function<double(double)> theta_;
  double lo_ = 0.5, hi_ = 2.0;
  double norm_ = 1.0;  // continuous: sqrt of int theta^2 du/u
  Kind kind_ = Kind::Discrete;
  std::string tag_;
};

// int_a^b g(u) du/u by Gauss-Legendre in log u.
double log_integral(const std::function<double(double)>& g, double a, double b,
                    int panels = 256);

// max over `samples` log-spaced l in [lmin, lmax] of the deviation of the
// Calderon sum (discrete) or integral (continuous) from 1.
double calderon_deviation(const Multiplier& m, double lmin, double lmax, int samples);

}  // namespace hogroup
