#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hogroup/group.hpp"
#include "hogroup/polynomial.hpp"

namespace hogroup {

// Rectangular lattice x_k = lo + k h, k = 0..n-1, h = (hi - lo)/n, in
// exponential coordinates. Row-major: the last axis varies fastest.
class Grid {
 public:
  Grid(GradedAlgebra g, std::vector<double> lo, std::vector<double> hi,
       std::vector<int> n);
  // Box [-a_i, a_i) with n_i points per axis.
  static Grid centered(GradedAlgebra g, std::vector<double> half_width,
                       std::vector<int> n);

  const GradedAlgebra& algebra() const { return g_; }
  int dim() const { return g_.dim(); }
  double lo(int i) const { return lo_[i]; }
  double hi(int i) const { return hi_[i]; }
  int n(int i) const { return n_[i]; }
  double spacing(int i) const { return h_[i]; }
  const std::vector<int>& shape() const { return n_; }
  std::size_t size() const { return size_; }
  std::size_t stride(int i) const { return stride_[i]; }
  double cell_volume() const { return vol_; }
  double max_spacing() const;
  // Largest quasi-norm distance between points of the box (upper bound).
  double diameter() const;

  double coord(int axis, int k) const { return lo_[axis] + k * h_[axis]; }
  GroupPoint point(std::size_t flat) const;
  void unflatten(std::size_t flat, int* idx) const;
  std::size_t flatten(const int* idx) const;
  // Lattice index of the identity, or -1 if 0 is not a lattice point.
  long identity_index() const { return identity_index_; }
  bool contains(const GroupPoint& x) const;
  // Same spacing and lattice offsets differing by whole steps.
  bool aligned_with(const Grid& o) const;

  bool operator==(const Grid& o) const;

 private:
  GradedAlgebra g_;
  std::vector<double> lo_, hi_, h_;
  std::vector<int> n_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 0;
  double vol_ = 0.0;
  long identity_index_ = -1;
};

using GridPtr = std::shared_ptr<const Grid>;

// Function sampled on a grid, zero outside the box. The imaginary channel is
// empty for real functions.
class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(GridPtr grid, std::vector<double> values);
  SampledFunction(GridPtr grid, std::vector<double> re, std::vector<double> im);

  static SampledFunction zeros(GridPtr grid);
  static SampledFunction from(GridPtr grid, const std::function<double(const GroupPoint&)>& f);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& imag() const { return imag_; }
  bool is_complex() const { return !imag_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  // Multilinear interpolation with zero extension (real part).
  double sample(const GroupPoint& x) const;

  SampledFunction& operator+=(const SampledFunction& o);
  SampledFunction& operator-=(const SampledFunction& o);
  SampledFunction& operator*=(double s);
  friend SampledFunction operator+(SampledFunction a, const SampledFunction& b) { return a += b; }
  friend SampledFunction operator-(SampledFunction a, const SampledFunction& b) { return a -= b; }
  friend SampledFunction operator*(SampledFunction a, double s) { return a *= s; }
  friend SampledFunction operator*(double s, SampledFunction a) { return a *= s; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
  std::vector<double> imag_;
};

double integrate(const SampledFunction& f);
// p = infinity is accepted as std::numeric_limits<double>::infinity().
double lp_norm(const SampledFunction& f, double p);
double lp_norm(const std::vector<double>& v, double cell_volume, double p);
// x -> f(x^{-1})
SampledFunction involution(const SampledFunction& f);
// x -> f(a^{-1} x)
SampledFunction translate(const SampledFunction& f, const GroupPoint& a);
// x -> t^{-Q} f(delta_{1/t} x)
SampledFunction dilate_function(const SampledFunction& f, double t);
// (alpha, integral of x^alpha f) for [alpha] <= M
std::vector<std::pair<MultiIndex, double>> moments(const SampledFunction& f, int M);
// (f*g)(x) = integral f(y) g(y^{-1} x) dy on f's grid. Abelian groups with
// aligned lattices use an FFT; otherwise the direct sum with g interpolated.
SampledFunction convolve(const SampledFunction& f, const SampledFunction& g);
SampledFunction convolve(const SampledFunction& f,
                         const std::function<double(const GroupPoint&)>& g);
// Direct-sum path regardless of the group, for cross-checks.
SampledFunction convolve_direct(const SampledFunction& f, const SampledFunction& g);

// Binary file: little-endian float64, row-major (re/im interleaved when
// complex), with a JSON sidecar `<path>.json` holding {group, lo, hi, n,
// complex}.
void write_function(const SampledFunction& f, const std::string& path);
SampledFunction read_function(const std::string& path);

}  // namespace hogroup
