#include "hogroup/polynomial.hpp"

#include <cmath>
#include <sstream>

#include "hogroup/error.hpp"

namespace hogroup {

int weighted_degree(const MultiIndex& alpha, const std::vector<int>& weights) {
  int s = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += alpha[i] * weights[i];
  return s;
}

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  p.add_term(MultiIndex(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
  MultiIndex a(nvars, 0);
  a[i] = 1;
  return monomial(std::move(a));
}

Polynomial Polynomial::monomial(MultiIndex alpha, double c) {
  Polynomial p(static_cast<int>(alpha.size()));
  p.add_term(alpha, c);
  return p;
}

double Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::constant_term() const {
  return coefficient(MultiIndex(nvars_, 0));
}

void Polynomial::add_term(const MultiIndex& alpha, double c) {
  if (static_cast<int>(alpha.size()) != nvars_)
    throw Error("polynomials", "nvars", "multi-index length mismatch");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(std::max(a.nvars_, b.nvars_));
  MultiIndex m(r.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < r.nvars_; ++i) m[i] = ea[i] + eb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial r(nvars_);
  for (const auto& [a, c] : terms_) {
    if (a[var] == 0) continue;
    MultiIndex b = a;
    b[var] -= 1;
    r.add_term(b, c * a[var]);
  }
  return r;
}

double Polynomial::evaluate(std::span<const double> x) const {
  double s = 0.0;
  for (const auto& [a, c] : terms_) {
    double t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < a[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& values) const {
  if (static_cast<int>(values.size()) != nvars_)
    throw Error("polynomials", "nvars", "substitution arity mismatch");
  int nv = values.empty() ? 0 : values[0].nvars();
  Polynomial r(nv);
  // Cache powers of each substituted value.
  std::vector<std::vector<Polynomial>> pw(nvars_);
  for (const auto& [a, c] : terms_) {
    Polynomial t = Polynomial::constant(nv, c);
    for (int i = 0; i < nvars_; ++i) {
      if (a[i] == 0) continue;
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(Polynomial::constant(nv, 1.0));
      while (static_cast<int>(cache.size()) <= a[i]) cache.push_back(cache.back() * values[i]);
      t = t * cache[a[i]];
    }
    r += t;
  }
  return r;
}

Polynomial Polynomial::truncate(const std::vector<int>& weights, int cap) const {
  Polynomial r(nvars_);
  for (const auto& [a, c] : terms_)
    if (weighted_degree(a, weights) <= cap) r.terms_.emplace(a, c);
  return r;
}

int Polynomial::degree(const std::vector<int>& weights) const {
  int d = -1;
  for (const auto& [a, c] : terms_) d = std::max(d, weighted_degree(a, weights));
  return d;
}

bool Polynomial::is_homogeneous(const std::vector<int>& weights, int deg) const {
  for (const auto& [a, c] : terms_)
    if (weighted_degree(a, weights) != deg) return false;
  return true;
}

Polynomial& Polynomial::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = std::fabs(it->second) <= tol ? terms_.erase(it) : std::next(it);
  return *this;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (int i = 0; i < nvars_; ++i)
      if (a[i] > 0) os << "*x" << i + 1 << (a[i] > 1 ? "^" + std::to_string(a[i]) : "");
  }
  return os.str();
}

// ---- Jet --------------------------------------------------------------------

Jet::Jet(std::shared_ptr<const Context> ctx, Polynomial p)
    : ctx_(std::move(ctx)), p_(std::move(p)) {
  p_ = p_.truncate(ctx_->weights, ctx_->cap);
}

Jet::Jet(std::shared_ptr<const Context> ctx, double c)
    : ctx_(std::move(ctx)),
      p_(Polynomial::constant(static_cast<int>(ctx_->weights.size()), c)) {}

Jet& Jet::operator+=(const Jet& o) {
  if (!ctx_) ctx_ = o.ctx_;
  p_ += o.p_;
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (!ctx_) ctx_ = o.ctx_;
  p_ -= o.p_;
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  if (!ctx_) ctx_ = o.ctx_;
  Polynomial r(p_.nvars());
  MultiIndex m(p_.nvars());
  for (const auto& [ea, ca] : p_.terms()) {
    int da = weighted_degree(ea, ctx_->weights);
    for (const auto& [eb, cb] : o.p_.terms()) {
      if (da + weighted_degree(eb, ctx_->weights) > ctx_->cap) continue;
      for (int i = 0; i < p_.nvars(); ++i) m[i] = ea[i] + eb[i];
      r.add_term(m, ca * cb);
    }
  }
  p_ = std::move(r);
  return *this;
}

Jet& Jet::operator+=(double c) {
  p_.add_term(MultiIndex(p_.nvars(), 0), c);
  return *this;
}

Jet& Jet::operator*=(double c) {
  p_ *= c;
  return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(Jet a, const Jet& b) { return a *= b; }
Jet operator/(const Jet& a, const Jet& b) { return a * pow(b, -1.0); }
Jet operator+(Jet a, double c) { return a += c; }
Jet operator+(double c, Jet a) { return a += c; }
Jet operator-(Jet a, double c) { return a += -c; }
Jet operator-(double c, const Jet& a) { return (a * -1.0) + c; }
Jet operator*(Jet a, double c) { return a *= c; }
Jet operator*(double c, Jet a) { return a *= c; }
Jet operator/(Jet a, double c) { return a *= 1.0 / c; }
Jet operator/(double c, const Jet& a) { return pow(a, -1.0) * c; }
Jet operator-(const Jet& a) { return a * -1.0; }

namespace {

// sum_n coef[n] u^n where u = a - a(0); u^n vanishes beyond n = cap.
Jet series(const Jet& a, const std::vector<double>& coef) {
  Jet u = a - a.value();
  Jet result(a.context(), coef[0]);
  Jet power(a.context(), 1.0);
  for (std::size_t n = 1; n < coef.size(); ++n) {
    power *= u;
    if (power.poly().is_zero()) break;
    Jet term = power * coef[n];
    result += term;
  }
  return result;
}

int series_len(const Jet& a) { return a.context()->cap + 1; }

}  // namespace

Jet exp(const Jet& a) {
  int n = series_len(a);
  std::vector<double> c(n);
  double e = std::exp(a.value()), f = 1.0;
  for (int k = 0; k < n; ++k) {
    if (k > 0) f *= k;
    c[k] = e / f;
  }
  return series(a, c);
}

Jet log(const Jet& a) {
  double v = a.value();
  if (!(v > 0)) throw Error("polynomials", "domain", "log of nonpositive jet");
  int n = series_len(a);
  std::vector<double> c(n);
  c[0] = std::log(v);
  for (int k = 1; k < n; ++k) c[k] = (k % 2 ? 1.0 : -1.0) / (k * std::pow(v, k));
  return series(a, c);
}

Jet sin(const Jet& a) {
  int n = series_len(a);
  std::vector<double> c(n);
  double s = std::sin(a.value()), co = std::cos(a.value()), f = 1.0;
  const double cyc[4] = {s, co, -s, -co};
  for (int k = 0; k < n; ++k) {
    if (k > 0) f *= k;
    c[k] = cyc[k % 4] / f;
  }
  return series(a, c);
}

Jet cos(const Jet& a) {
  int n = series_len(a);
  std::vector<double> c(n);
  double s = std::sin(a.value()), co = std::cos(a.value()), f = 1.0;
  const double cyc[4] = {co, -s, -co, s};
  for (int k = 0; k < n; ++k) {
    if (k > 0) f *= k;
    c[k] = cyc[k % 4] / f;
  }
  return series(a, c);
}

Jet pow(const Jet& a, double r) {
  double v = a.value();
  if (v == 0.0) throw Error("polynomials", "domain", "pow of a jet with zero value");
  if (v < 0.0 && r != std::floor(r))
    throw Error("polynomials", "domain", "fractional pow of a negative jet");
  int n = series_len(a);
  std::vector<double> c(n);
  double binom = 1.0;
  for (int k = 0; k < n; ++k) {
    c[k] = binom * std::pow(v, r - k);
    binom *= (r - k) / (k + 1);
  }
  return series(a, c);
}

Jet sqrt(const Jet& a) { return pow(a, 0.5); }

}  // namespace hogroup
