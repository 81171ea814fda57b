#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hogroup/group.hpp"
#include "hogroup/polynomial.hpp"

namespace hogroup {

// A smooth function on the group. `jet`, when present, evaluates the function
// on truncated power series and gives exact derivatives; otherwise
// derivatives fall back to central differences of `value`.
struct SmoothFunction {
  std::function<double(const GroupPoint&)> value;
  std::function<Jet(const std::vector<Jet>&)> jet;

  bool has_jet() const { return static_cast<bool>(jet); }
  double operator()(const GroupPoint& x) const { return value(x); }
};

// f must be callable on a GroupPoint and on std::vector<Jet>.
template <class F>
SmoothFunction make_smooth(F f) {
  SmoothFunction s;
  s.value = [f](const GroupPoint& x) { return static_cast<double>(f(x)); };
  s.jet = [f](const std::vector<Jet>& x) { return f(x); };
  return s;
}

SmoothFunction smooth_from_polynomial(Polynomial p);
SmoothFunction smooth_from_callable(std::function<double(const GroupPoint&)> f);

// First-order differential operator sum_i coeffs[i](x) d/dx_i.
struct VectorField {
  std::vector<Polynomial> coeffs;
  Polynomial apply(const Polynomial& f) const;
};

// BCH(x, y) as polynomials in (x_1..x_d, y_1..y_d).
std::vector<Polynomial> bch_polynomials(const GradedAlgebra& g);
// X_j f(x) = d/dt f(x exp(t e_j)) and Y_j f(x) = d/dt f(exp(t e_j) x).
std::vector<VectorField> left_invariant_fields(const GradedAlgebra& g);
std::vector<VectorField> right_invariant_fields(const GradedAlgebra& g);

// fields[w_0] ... fields[w_{k-1}] f; the rightmost field acts first.
Polynomial apply_word(const std::vector<VectorField>& fields,
                      const std::vector<int>& word, const Polynomial& f);

// y -> f(x y) as a jet in y, truncated at weighted degree cap.
Polynomial left_translate_jet(const GradedAlgebra& g, const SmoothFunction& f,
                              const GroupPoint& x, int cap);

// X_{w_0} ... X_{w_{k-1}} f(x), exact through jets when available.
double left_word_derivative(const GradedAlgebra& g, const std::vector<int>& word,
                            const SmoothFunction& f, const GroupPoint& x);
// Same, by tensor central differences of t -> f(x exp(t_0 e_{w_0}) ...).
// h <= 0 selects a step from the word length.
double left_word_derivative_fd(const GradedAlgebra& g, const std::vector<int>& word,
                               const std::function<double(const GroupPoint&)>& f,
                               const GroupPoint& x, double h = 0.0);
// X^alpha = X_1^{alpha_1} ... X_d^{alpha_d}
std::vector<int> pbw_word(const MultiIndex& alpha);

// Multi-indices with [alpha] <= M, ordered by degree then lexicographically.
std::vector<MultiIndex> multi_indices_upto(const GradedAlgebra& g, int M);

// Left Taylor polynomial of homogeneous degree M at x, from
// sum_k 1/k! sum_{words, sum of weights <= M} X_w f(x) y_w.
Polynomial taylor_polynomial(const GradedAlgebra& g, const SmoothFunction& f,
                             const GroupPoint& x, int M);
// Same polynomial, from the linear system X^beta P(0) = X^beta f(x),
// [beta] <= M, in the monomial basis.
Polynomial taylor_polynomial_defining(const GradedAlgebra& g, const SmoothFunction& f,
                                      const GroupPoint& x, int M);
// max_{[beta] <= M} |X^beta P(0) - X^beta f(x)|
double taylor_defining_residual(const GradedAlgebra& g, const SmoothFunction& f,
                                const GroupPoint& x, int M, const Polynomial& P);

struct RemainderCheck {
  double constant;  // smallest C with LHS <= C * RHS on all samples
  double slope;     // log-log slope of the worst-direction remainder
  double eta;       // smallest eta >= 1 with t y in B(0, eta |y|), t in [0,1]
  std::vector<double> radii;
  std::vector<double> lhs;  // worst-direction |f(xy) - P(y)| per radius
};

RemainderCheck taylor_remainder_check(const GradedAlgebra& g, const QuasiNorm& qn,
                                      const SmoothFunction& f, const GroupPoint& x,
                                      int M, const std::vector<double>& radii,
                                      int directions = 16, std::uint64_t seed = 1);

}  // namespace hogroup
