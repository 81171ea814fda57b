#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hogroup {

inline constexpr int kMaxDim = 8;

// Point of a graded group in exponential coordinates. Inline storage, since
// products are evaluated inside O(N^2) loops.
class GroupPoint {
 public:
  GroupPoint() = default;
  explicit GroupPoint(int dim);
  GroupPoint(std::initializer_list<double> coords);
  explicit GroupPoint(std::span<const double> coords);

  int dim() const { return dim_; }
  std::size_t size() const { return static_cast<std::size_t>(dim_); }
  double& operator[](int i) { return c_[i]; }
  double operator[](int i) const { return c_[i]; }
  const double* data() const { return c_.data(); }
  double* data() { return c_.data(); }
  std::span<const double> coords() const { return {c_.data(), std::size_t(dim_)}; }

  GroupPoint operator+(const GroupPoint& o) const;
  GroupPoint operator-(const GroupPoint& o) const;
  GroupPoint operator*(double s) const;
  bool operator==(const GroupPoint& o) const;

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

// Structure constant c^k_{ij} (0-based), meaning [e_i, e_j] = sum_k c^k_{ij} e_k.
struct Bracket {
  int i;
  int j;
  int k;
  double c;
};

// Graded nilpotent Lie algebra with basis e_1..e_d of weights v_1<=...<=v_d,
// identified with its simply connected group through the exponential map.
class GradedAlgebra {
 public:
  // Validates every invariant; throws Error("group", <invariant>, ...) with
  // invariant one of: dimension, weights_positive, weights_sorted,
  // index_range, antisymmetry, grading, jacobi, step_limit.
  // Brackets listed only for i<j are completed antisymmetrically.
  static GradedAlgebra create(std::string name, std::vector<int> weights,
                              std::vector<Bracket> brackets);

  static GradedAlgebra euclidean(int n);
  static GradedAlgebra anisotropic(std::vector<int> weights);
  static GradedAlgebra heisenberg();
  static GradedAlgebra engel();

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(weights_.size()); }
  int weight(int i) const { return weights_[i]; }
  const std::vector<int>& weights() const { return weights_; }
  int homogeneous_dimension() const { return q_; }
  int step() const { return step_; }
  bool is_abelian() const { return brackets_.empty(); }
  bool is_stratified() const { return stratified_; }
  // Complete (antisymmetric) list of nonzero structure constants.
  const std::vector<Bracket>& brackets() const { return brackets_; }
  // Only the i<j half, as written to files.
  std::vector<Bracket> upper_brackets() const;

  GroupPoint identity() const { return GroupPoint(dim()); }
  GroupPoint bracket(const GroupPoint& x, const GroupPoint& y) const;
  // Group law through the Baker-Campbell-Hausdorff series, exact for step <= 4.
  GroupPoint multiply(const GroupPoint& x, const GroupPoint& y) const;
  GroupPoint inverse(const GroupPoint& x) const { return x * -1.0; }
  // y^{-1} x
  GroupPoint left_quotient(const GroupPoint& y, const GroupPoint& x) const;
  GroupPoint dilate(const GroupPoint& x, double t) const;

 private:
  GradedAlgebra() = default;

  std::string name_;
  std::vector<int> weights_;
  std::vector<Bracket> brackets_;
  int q_ = 0;
  int step_ = 1;
  bool stratified_ = true;
};

// Homogeneous degree [alpha] = sum alpha_i v_i and length |alpha|.
int hom_degree(const GradedAlgebra& g, std::span<const int> alpha);
int length(std::span<const int> alpha);
// max{|alpha| : [alpha] <= M}
int ceil_floor(const GradedAlgebra& g, int M);

// Homogeneous quasi-norm |x| = (sum |x_i|^{2N/v_i})^{1/(2N)}, 2N = 2 lcm(v).
class QuasiNorm {
 public:
  static QuasiNorm canonical(const GradedAlgebra& g);

  int exponent() const { return exponent_; }
  const std::vector<int>& coordinate_exponents() const { return coord_exp_; }
  // Triangle constant; 1 until measured or set.
  double gamma() const { return gamma_; }
  void set_gamma(double gamma) { gamma_ = gamma; }

  double power(const GroupPoint& x) const;
  double operator()(const GroupPoint& x) const;
  // |y^{-1} x|
  double distance(const GradedAlgebra& g, const GroupPoint& x,
                  const GroupPoint& y) const;
  // Rescales x to quasi-norm 1 along its dilation orbit (x != 0).
  GroupPoint normalize(const GradedAlgebra& g, const GroupPoint& x) const;

 private:
  int exponent_ = 2;
  std::vector<int> coord_exp_;
  double gamma_ = 1.0;
};

struct GammaEstimate {
  double sup_ratio;  // largest |xy|/(|x|+|y|) found
  double gamma;      // max(1, sup_ratio * (1 + margin))
  GroupPoint argmax_x;
  GroupPoint argmax_y;
};

// Monte-Carlo search over pairs, followed by local refinement of the best
// pairs. Deterministic for a given seed.
GammaEstimate estimate_gamma(const GradedAlgebra& g, const QuasiNorm& qn,
                             std::uint64_t seed, int samples = 20000,
                             double margin = 1e-3);

// Haar integral of rho^{s-Q} over the shell r <= |x| < R, evaluated by
// quadrature in exponential coordinates (n cells per axis).
double polar_shell_integral(const GradedAlgebra& g, const QuasiNorm& qn,
                            double r, double R, double s, int n);

// Random point with coordinates distributed N(0, scale^{v_i}).
template <class Rng>
GroupPoint random_point(const GradedAlgebra& g, Rng& rng, double scale = 1.0);

}  // namespace hogroup

#include "hogroup/detail/group_random.hpp"
