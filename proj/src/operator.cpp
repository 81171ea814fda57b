#include "hogroup/operator.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "hogroup/error.hpp"
#include "hogroup/fft.hpp"

namespace hogroup {

SampledFunction HomOperator::apply_function(const SpectralFn& g, const SampledFunction& f) const {
  return apply_functions({g}, f).front();
}

// ---- SymbolOperator ---------------------------------------------------------

SymbolOperator::SymbolOperator(GridPtr grid,
                               std::function<double(const std::vector<double>&)> symbol,
                               double degree, std::string name)
    : grid_(std::move(grid)), degree_(degree), name_(std::move(name)) {
  if (!grid_->algebra().is_abelian())
    throw Error("spectral", "not_abelian", "Fourier symbols need an abelian group");
  const Grid& g = *grid_;
  const int d = g.dim();
  std::vector<int> cdims = g.shape();
  cdims.back() = cdims.back() / 2 + 1;
  std::size_t total = 1;
  for (int n : cdims) total *= n;
  sigma_.resize(total);
  std::vector<int> idx(d, 0);
  std::vector<double> xi(d);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t r = k;
    for (int i = d - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(r % cdims[i]);
      r /= cdims[i];
    }
    for (int i = 0; i < d; ++i) xi[i] = RealFFT::frequency(idx[i], g.n(i), g.spacing(i));
    sigma_[k] = symbol(xi);
  }
}

std::shared_ptr<SymbolOperator> SymbolOperator::sqrt_laplacian(GridPtr grid) {
  return std::make_shared<SymbolOperator>(
      std::move(grid),
      [](const std::vector<double>& xi) {
        return std::sqrt(std::inner_product(xi.begin(), xi.end(), xi.begin(), 0.0));
      },
      1.0, "sqrt_laplacian");
}

std::shared_ptr<SymbolOperator> SymbolOperator::laplacian(GridPtr grid) {
  return std::make_shared<SymbolOperator>(
      std::move(grid),
      [](const std::vector<double>& xi) {
        return std::inner_product(xi.begin(), xi.end(), xi.begin(), 0.0);
      },
      2.0, "laplacian");
}

std::shared_ptr<SymbolOperator> SymbolOperator::singular_integral_P(GridPtr grid) {
  for (int w : grid->algebra().weights())
    if (w != 1) throw Error("spectral", "not_isotropic", "closed-form P symbol needs weights 1");
  const int n = grid->dim();
  const double c = std::pow(M_PI, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
  return std::make_shared<SymbolOperator>(
      std::move(grid),
      [c](const std::vector<double>& xi) {
        return c * std::sqrt(std::inner_product(xi.begin(), xi.end(), xi.begin(), 0.0));
      },
      1.0, "P");
}

std::shared_ptr<SymbolOperator> SymbolOperator::rockland(GridPtr grid) {
  const auto& w = grid->algebra().weights();
  int m = 1;
  for (int v : w) m = std::lcm(m, v);
  std::vector<int> e;
  for (int v : w) e.push_back(2 * m / v);
  return std::make_shared<SymbolOperator>(
      std::move(grid),
      [e](const std::vector<double>& xi) {
        double s = 0.0;
        for (std::size_t i = 0; i < xi.size(); ++i) s += std::pow(xi[i], e[i]);
        return s;
      },
      2.0 * m, "rockland");
}

std::vector<SampledFunction> SymbolOperator::apply_functions(const std::vector<SpectralFn>& gs,
                                                             const SampledFunction& f) const {
  if (f.size() != grid_->size()) throw Error("spectral", "grid", "function on another grid");
  RealFFT fft(grid_->shape());
  std::vector<std::complex<double>> F(fft.complex_size()), G(fft.complex_size());
  fft.forward(f.values().data(), F.data());
  const double inv = 1.0 / static_cast<double>(fft.real_size());
  std::vector<SampledFunction> out;
  out.reserve(gs.size());
  std::vector<double> buf(fft.real_size());
  for (const auto& g : gs) {
    for (std::size_t k = 0; k < F.size(); ++k) G[k] = F[k] * (g(sigma_[k]) * inv);
    fft.inverse(G.data(), buf.data());
    out.emplace_back(grid_, buf);
  }
  return out;
}

SampledFunction SymbolOperator::apply(const SampledFunction& f) const {
  return apply_function([](double l) { return l; }, f);
}

std::pair<double, double> SymbolOperator::spectral_bounds() const {
  auto [mn, mx] = std::minmax_element(sigma_.begin(), sigma_.end());
  return {*mn, *mx};
}

// ---- MatrixOperator ---------------------------------------------------------

MatrixOperator::MatrixOperator(GridPtr grid, Eigen::SparseMatrix<double, Eigen::RowMajor> A,
                               double degree, std::string name, Engine engine)
    : grid_(std::move(grid)), degree_(degree), name_(std::move(name)), engine_(engine) {
  if (A.rows() != static_cast<Eigen::Index>(grid_->size()) || A.cols() != A.rows())
    throw Error("spectral", "shape", "matrix does not match the grid");
  Eigen::SparseMatrix<double, Eigen::RowMajor> At = A.transpose();
  double amax = 0.0, dmax = 0.0;
  for (int k = 0; k < A.outerSize(); ++k)
    for (decltype(A)::InnerIterator it(A, k); it; ++it) amax = std::max(amax, std::fabs(it.value()));
  Eigen::SparseMatrix<double, Eigen::RowMajor> D = A - At;
  for (int k = 0; k < D.outerSize(); ++k)
    for (decltype(D)::InnerIterator it(D, k); it; ++it) dmax = std::max(dmax, std::fabs(it.value()));
  asymmetry_ = amax > 0 ? dmax / amax : 0.0;
  sparse_ = (A + At) * 0.5;
  sparse_.makeCompressed();
  if (engine_ == Engine::Auto)
    engine_ = grid_->size() <= kDenseLimit ? Engine::Dense : Engine::Lanczos;
  if (engine_ == Engine::Dense && grid_->size() > kDenseLimit)
    throw Error("spectral", "too_large", "dense engine limited to 4096 points");
}

MatrixOperator::MatrixOperator(GridPtr grid, Eigen::MatrixXd A, double degree, std::string name)
    : grid_(std::move(grid)), degree_(degree), name_(std::move(name)), engine_(Engine::Dense) {
  if (A.rows() != static_cast<Eigen::Index>(grid_->size()) || A.cols() != A.rows())
    throw Error("spectral", "shape", "matrix does not match the grid");
  if (grid_->size() > kDenseLimit)
    throw Error("spectral", "too_large", "dense engine limited to 4096 points");
  double amax = A.cwiseAbs().maxCoeff();
  asymmetry_ = amax > 0 ? (A - A.transpose()).cwiseAbs().maxCoeff() / amax : 0.0;
  dense_ = (A + A.transpose()) * 0.5;
  stored_dense_ = true;
}

Eigen::VectorXd MatrixOperator::multiply(const Eigen::VectorXd& v) const {
  if (stored_dense_) return dense_ * v;
  return sparse_ * v;
}

void MatrixOperator::ensure_eigen() const {
  if (have_eigen_) return;
  if (engine_ != Engine::Dense) throw Error("spectral", "engine", "eigenpairs need the dense engine");
  Eigen::MatrixXd M = stored_dense_ ? dense_ : Eigen::MatrixXd(sparse_);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) throw Error("spectral", "eigensolver", "did not converge");
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
  have_eigen_ = true;
}

const Eigen::VectorXd& MatrixOperator::eigenvalues() const {
  ensure_eigen();
  return evals_;
}

const Eigen::MatrixXd& MatrixOperator::eigenvectors() const {
  ensure_eigen();
  return evecs_;
}

double MatrixOperator::decomposition_error() const {
  ensure_eigen();
  Eigen::MatrixXd M = stored_dense_ ? dense_ : Eigen::MatrixXd(sparse_);
  Eigen::MatrixXd R = evecs_ * evals_.asDiagonal() * evecs_.transpose() - M;
  return R.norm() / M.norm();
}

SampledFunction MatrixOperator::apply(const SampledFunction& f) const {
  Eigen::Map<const Eigen::VectorXd> v(f.values().data(), f.size());
  Eigen::VectorXd r = multiply(v);
  return SampledFunction(grid_, std::vector<double>(r.data(), r.data() + r.size()));
}

namespace {

struct LanczosBasis {
  std::vector<Eigen::VectorXd> q;
  std::vector<double> alpha, beta;
};

// Coefficients c_g = S g(Theta) S^T e_1 of g(T_k) e_1.
std::vector<Eigen::VectorXd> tridiag_functions(const LanczosBasis& L, std::size_t k,
                                               const std::vector<SpectralFn>& gs,
                                               double lmax) {
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    T(i, i) = L.alpha[i];
    if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = L.beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  const Eigen::MatrixXd& S = es.eigenvectors();
  Eigen::VectorXd th = es.eigenvalues();
  std::vector<Eigen::VectorXd> out;
  for (const auto& g : gs) {
    Eigen::VectorXd w(k);
    for (std::size_t i = 0; i < k; ++i) {
      double l = th[i] < 1e-10 * lmax ? 0.0 : th[i];
      w[i] = g(l) * S(0, i);
    }
    out.push_back(S * w);
  }
  return out;
}

}  // namespace

std::vector<SampledFunction> MatrixOperator::apply_functions(const std::vector<SpectralFn>& gs,
                                                             const SampledFunction& f) const {
  if (f.size() != grid_->size()) throw Error("spectral", "grid", "function on another grid");
  Eigen::Map<const Eigen::VectorXd> v(f.values().data(), f.size());
  std::vector<SampledFunction> out;
  if (engine_ == Engine::Dense) {
    ensure_eigen();
    const double lmax = std::max(std::fabs(evals_.maxCoeff()), 1e-300);
    Eigen::VectorXd c = evecs_.transpose() * v;
    Eigen::VectorXd w(c.size());
    for (const auto& g : gs) {
      for (Eigen::Index i = 0; i < c.size(); ++i) {
        double l = evals_[i] < 1e-10 * lmax ? 0.0 : evals_[i];
        w[i] = g(l) * c[i];
      }
      Eigen::VectorXd r = evecs_ * w;
      out.emplace_back(grid_, std::vector<double>(r.data(), r.data() + r.size()));
    }
    return out;
  }

  // Lanczos: f(A) v ~ |v| Q_k g(T_k) e_1.
  const double beta0 = v.norm();
  if (beta0 == 0.0) {
    for (std::size_t i = 0; i < gs.size(); ++i) out.push_back(SampledFunction::zeros(grid_));
    return out;
  }
  const double lmax = spectral_bounds().second;
  LanczosBasis L;
  L.q.push_back(v / beta0);
  std::vector<Eigen::VectorXd> prev;
  std::size_t k = 0;
  int stable = 0;
  const std::size_t kmax = std::min<std::size_t>(lanczos_max_, grid_->size());
  while (true) {
    Eigen::VectorXd w = multiply(L.q[k]);
    if (k > 0) w -= L.beta[k - 1] * L.q[k - 1];
    double a = L.q[k].dot(w);
    L.alpha.push_back(a);
    w -= a * L.q[k];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qi : L.q) w -= qi.dot(w) * qi;
    double b = w.norm();
    ++k;
    bool done = k >= kmax || b <= 1e-13 * lmax;
    if (!done && k % 10 == 0) {
      auto cur = tridiag_functions(L, k, gs, lmax);
      bool conv = !prev.empty();
      for (std::size_t g = 0; g < gs.size() && conv; ++g) {
        Eigen::VectorXd p = Eigen::VectorXd::Zero(k);
        p.head(prev[g].size()) = prev[g];
        double scale = std::max(cur[g].norm(), p.norm());
        // Zero coefficients only mean the support of g is not resolved yet.
        conv = scale > 0 ? (cur[g] - p).norm() <= lanczos_tol_ * scale : k >= 60;
      }
      stable = conv ? stable + 1 : 0;
      done = stable >= 2;
      prev = std::move(cur);
    }
    if (done) break;
    L.beta.push_back(b);
    L.q.push_back(w / b);
  }
  last_steps_ = static_cast<int>(k);
  auto coef = tridiag_functions(L, k, gs, lmax);
  for (const auto& c : coef) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(v.size());
    for (std::size_t i = 0; i < k; ++i) r += (beta0 * c[i]) * L.q[i];
    out.emplace_back(grid_, std::vector<double>(r.data(), r.data() + r.size()));
  }
  return out;
}

std::pair<double, double> MatrixOperator::spectral_bounds() const {
  if (bounds_.first >= 0.0) return bounds_;
  if (engine_ == Engine::Dense) {
    ensure_eigen();
    bounds_ = {std::max(0.0, evals_.minCoeff()), evals_.maxCoeff()};
    return bounds_;
  }
  // Ritz values from a fixed start vector.
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> nd;
  Eigen::VectorXd q(grid_->size());
  for (Eigen::Index i = 0; i < q.size(); ++i) q[i] = nd(rng);
  q.normalize();
  std::vector<Eigen::VectorXd> Q{q};
  std::vector<double> al, be;
  const int steps = std::min<int>(80, static_cast<int>(grid_->size()));
  for (int k = 0; k < steps; ++k) {
    Eigen::VectorXd w = multiply(Q[k]);
    if (k > 0) w -= be[k - 1] * Q[k - 1];
    double a = Q[k].dot(w);
    al.push_back(a);
    w -= a * Q[k];
    for (const auto& qi : Q) w -= qi.dot(w) * qi;
    double b = w.norm();
    if (b < 1e-12 || k + 1 == steps) break;
    be.push_back(b);
    Q.push_back(w / b);
  }
  const int m = static_cast<int>(al.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    T(i, i) = al[i];
    if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = be[i];
  }
  Eigen::VectorXd th = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(T).eigenvalues();
  // The largest Ritz value converges from below; pad by the last residual.
  bounds_ = {std::max(0.0, th.minCoeff()), th.maxCoeff() * 1.01};
  return bounds_;
}

// ---- helpers ----------------------------------------------------------------

SampledFunction apply_multiplier(const HomOperator& op, const Multiplier& m, double t,
                                 const SampledFunction& f) {
  return apply_multipliers(op, m, {t}, f).front();
}

std::vector<SampledFunction> apply_multipliers(const HomOperator& op, const Multiplier& m,
                                               const std::vector<double>& ts,
                                               const SampledFunction& f) {
  const double inv_nu = 1.0 / op.degree();
  std::vector<SpectralFn> gs;
  for (double t : ts) {
    if (!(t > 0)) throw Error("spectral", "scale", "scale must be positive");
    gs.push_back([&m, t, inv_nu](double l) { return l > 0 ? m(t * std::pow(l, inv_nu)) : 0.0; });
  }
  return op.apply_functions(gs, f);
}

SampledFunction identity_mass(const GridPtr& grid) {
  if (grid->identity_index() < 0)
    throw Error("spectral", "no_identity", "the identity is not a lattice point");
  auto d = SampledFunction::zeros(grid);
  d[grid->identity_index()] = 1.0 / grid->cell_volume();
  return d;
}

SampledFunction filter_kernel(const HomOperator& op, const Multiplier& m, double t) {
  return apply_multiplier(op, m, t, identity_mass(op.grid()));
}

SampledFunction heat_kernel(const HomOperator& op, double t) {
  return op.apply_function([t](double l) { return std::exp(-t * l); }, identity_mass(op.grid()));
}

std::pair<double, double> resolvable_band(const Grid& grid) {
  return {4.0 * grid.max_spacing(), grid.diameter() / 4.0};
}

CalderonFilter build_filter(OperatorPtr op, const Multiplier& m) {
  SampledFunction k = filter_kernel(*op, m);
  return {m, std::move(op), std::move(k)};
}

}  // namespace hogroup
