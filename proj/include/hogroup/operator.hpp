#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hogroup/grid.hpp"
#include "hogroup/multiplier.hpp"

namespace hogroup {

using SpectralFn = std::function<double(double)>;

// Positive self-adjoint operator on a grid, homogeneous of degree nu, with a
// functional calculus g(A).
class HomOperator {
 public:
  virtual ~HomOperator() = default;

  virtual const GridPtr& grid() const = 0;
  virtual double degree() const = 0;
  virtual std::string name() const = 0;
  // A f
  virtual SampledFunction apply(const SampledFunction& f) const = 0;
  // g_k(A) f for every k, sharing one factorization of f.
  virtual std::vector<SampledFunction> apply_functions(const std::vector<SpectralFn>& gs,
                                                       const SampledFunction& f) const = 0;
  // Bounds [lambda_min, lambda_max] of the discrete spectrum.
  virtual std::pair<double, double> spectral_bounds() const = 0;

  SampledFunction apply_function(const SpectralFn& g, const SampledFunction& f) const;
};

using OperatorPtr = std::shared_ptr<const HomOperator>;

// Euclidean Fourier multiplier sigma(xi) >= 0 on a periodic box (FFT).
class SymbolOperator : public HomOperator {
 public:
  SymbolOperator(GridPtr grid, std::function<double(const std::vector<double>&)> symbol,
                 double degree, std::string name);

  // (-Delta)^{1/2}: |xi|, degree 1.
  static std::shared_ptr<SymbolOperator> sqrt_laplacian(GridPtr grid);
  // -Delta: |xi|^2, degree 2.
  static std::shared_ptr<SymbolOperator> laplacian(GridPtr grid);
  // The singular-integral operator with kernel |x|^{-(n+1)} on isotropic R^n:
  // c_n |xi| with c_n = pi^{(n+1)/2} / Gamma((n+1)/2).
  static std::shared_ptr<SymbolOperator> singular_integral_P(GridPtr grid);
  // sum_j xi_j^{2m/v_j}, m = lcm(v), degree 2m, for abelian graded groups.
  static std::shared_ptr<SymbolOperator> rockland(GridPtr grid);

  const GridPtr& grid() const override { return grid_; }
  double degree() const override { return degree_; }
  std::string name() const override { return name_; }
  SampledFunction apply(const SampledFunction& f) const override;
  std::vector<SampledFunction> apply_functions(const std::vector<SpectralFn>& gs,
                                               const SampledFunction& f) const override;
  std::pair<double, double> spectral_bounds() const override;
  // Symbol values in r2c layout.
  const std::vector<double>& symbol_values() const { return sigma_; }

 private:
  GridPtr grid_;
  double degree_;
  std::string name_;
  std::vector<double> sigma_;
};

// Symmetric matrix on the grid values. Dense eigendecomposition up to
// kDenseLimit points, Lanczos with full reorthogonalization above.
class MatrixOperator : public HomOperator {
 public:
  static constexpr std::size_t kDenseLimit = 4096;
  enum class Engine { Auto, Dense, Lanczos };

  MatrixOperator(GridPtr grid, Eigen::SparseMatrix<double, Eigen::RowMajor> A, double degree,
                 std::string name, Engine engine = Engine::Auto);
  MatrixOperator(GridPtr grid, Eigen::MatrixXd A, double degree, std::string name);

  const GridPtr& grid() const override { return grid_; }
  double degree() const override { return degree_; }
  std::string name() const override { return name_; }
  SampledFunction apply(const SampledFunction& f) const override;
  std::vector<SampledFunction> apply_functions(const std::vector<SpectralFn>& gs,
                                               const SampledFunction& f) const override;
  std::pair<double, double> spectral_bounds() const override;

  bool is_dense_engine() const { return engine_ == Engine::Dense; }
  // max |A - A^T| / max |A| before symmetrization.
  double asymmetry() const { return asymmetry_; }
  // Eigenpairs (dense engine); computed on first use.
  const Eigen::VectorXd& eigenvalues() const;
  const Eigen::MatrixXd& eigenvectors() const;
  // ||A - V L V^T||_F / ||A||_F
  double decomposition_error() const;
  // Lanczos settings.
  void set_lanczos(int max_steps, double tol) { lanczos_max_ = max_steps; lanczos_tol_ = tol; }
  int last_lanczos_steps() const { return last_steps_; }

 private:
  void ensure_eigen() const;
  Eigen::VectorXd multiply(const Eigen::VectorXd& v) const;

  GridPtr grid_;
  double degree_;
  std::string name_;
  Engine engine_;
  bool stored_dense_ = false;
  Eigen::SparseMatrix<double, Eigen::RowMajor> sparse_;
  Eigen::MatrixXd dense_;
  double asymmetry_ = 0.0;
  mutable bool have_eigen_ = false;
  mutable Eigen::VectorXd evals_;
  mutable Eigen::MatrixXd evecs_;
  mutable std::pair<double, double> bounds_{-1.0, -1.0};
  int lanczos_max_ = 400;
  double lanczos_tol_ = 1e-8;
  mutable int last_steps_ = 0;
};

enum class PBoundary { Regional, Periodic };

// (Pf)(x) = sum_{rho(y^{-1}x) >= eps_cut} (f(x) - f(y)) / rho(y^{-1}x)^{Q+1} * vol.
// Regional: y ranges over the box. Periodic (abelian only): the kernel is
// summed over periodic images (closed form on R).
std::shared_ptr<MatrixOperator> assemble_P(GridPtr grid, const QuasiNorm& qn, double eps_cut,
                                           PBoundary boundary = PBoundary::Regional);

// -sum_j X_j^2 over the first stratum, as (1/2) sum_j (F_j^T F_j + B_j^T B_j)
// with F_j, B_j forward/backward differences along X_j and zero extension.
std::shared_ptr<MatrixOperator> assemble_sublaplacian(
    GridPtr grid, MatrixOperator::Engine engine = MatrixOperator::Engine::Auto);

// m(t A^{1/nu}) f
SampledFunction apply_multiplier(const HomOperator& op, const Multiplier& m, double t,
                                 const SampledFunction& f);
std::vector<SampledFunction> apply_multipliers(const HomOperator& op, const Multiplier& m,
                                               const std::vector<double>& ts,
                                               const SampledFunction& f);
// Convolution kernel of m(A): m(A) applied to the unit mass at the identity.
SampledFunction filter_kernel(const HomOperator& op, const Multiplier& m, double t = 1.0);
// Kernel of exp(-t A).
SampledFunction heat_kernel(const HomOperator& op, double t);
// Unit mass at the identity (delta / cell volume). Requires e on the lattice.
SampledFunction identity_mass(const GridPtr& grid);

// Scales t whose multiplier support is resolved by the grid: [4 max h, diameter/4].
std::pair<double, double> resolvable_band(const Grid& grid);

struct CalderonFilter {
  Multiplier m;
  OperatorPtr op;
  SampledFunction kernel;  // phi = kernel of m(A)
};
CalderonFilter build_filter(OperatorPtr op, const Multiplier& m);

}  // namespace hogroup
