#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hogroup {

using MultiIndex = std::vector<int>;

// Sparse real polynomial in a fixed number of variables.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, double c);
  static Polynomial variable(int nvars, int i);
  static Polynomial monomial(MultiIndex alpha, double c = 1.0);

  int nvars() const { return nvars_; }
  const std::map<MultiIndex, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  double coefficient(const MultiIndex& alpha) const;
  double constant_term() const;
  void add_term(const MultiIndex& alpha, double c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  Polynomial derivative(int var) const;
  double evaluate(std::span<const double> x) const;
  // Replaces variable i by values[i]; all values share one variable count.
  Polynomial substitute(const std::vector<Polynomial>& values) const;
  // Drops terms of weighted degree above cap.
  Polynomial truncate(const std::vector<int>& weights, int cap) const;
  // Largest weighted degree of a term; -1 for the zero polynomial.
  int degree(const std::vector<int>& weights) const;
  bool is_homogeneous(const std::vector<int>& weights, int deg) const;
  Polynomial& prune(double tol = 0.0);
  std::string to_string() const;

 private:
  int nvars_ = 0;
  std::map<MultiIndex, double> terms_;
};

int weighted_degree(const MultiIndex& alpha, const std::vector<int>& weights);

// Truncated power series at a point: a polynomial in the displacement
// variables, with terms of weighted degree above `cap` discarded. Used for
// exact derivatives of smooth test functions.
class Jet {
 public:
  struct Context {
    std::vector<int> weights;
    int cap;
  };

  Jet() = default;
  Jet(std::shared_ptr<const Context> ctx, Polynomial p);
  Jet(std::shared_ptr<const Context> ctx, double c);

  const Polynomial& poly() const { return p_; }
  double value() const { return p_.constant_term(); }
  const std::shared_ptr<const Context>& context() const { return ctx_; }

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator+=(double c);
  Jet& operator*=(double c);

 private:
  std::shared_ptr<const Context> ctx_;
  Polynomial p_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(Jet a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(Jet a, double c);
Jet operator+(double c, Jet a);
Jet operator-(Jet a, double c);
Jet operator-(double c, const Jet& a);
Jet operator*(Jet a, double c);
Jet operator*(double c, Jet a);
Jet operator/(Jet a, double c);
Jet operator/(double c, const Jet& a);
Jet operator-(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, double r);

}  // namespace hogroup
