#pragma once

// The group Aut(G) = (W<S> / (S^2 = p, sigma(w) S = S w))^x and its action on
// the Lubin-Tate ring W(F_{q^2})[[u1]][u^{+-1}].

#include <optional>
#include <string>
#include <vector>

#include "ltaction/series.hpp"

namespace ltaction::stabilizer {

using series::ScaledSeries;

// alpha0 + alpha1 S with alpha0 a unit.
struct GroupElem {
  witt::Elem alpha0;
  witt::Elem alpha1;

  const witt::ParamsPtr& params() const { return alpha0.params(); }
};

// Throws witt::ArithmeticError if alpha0 is not a unit, std::invalid_argument on mixed rings.
GroupElem make_group_elem(witt::Elem alpha0, witt::Elem alpha1);
GroupElem identity(const witt::ParamsPtr& params);

/// (a0 + a1 S)(b0 + b1 S) = (a0 b0 + p a1 sigma(b1)) + (a0 b1 + a1 sigma(b0)) S.
GroupElem group_mul(const GroupElem& g, const GroupElem& h);

/// Ring for results modulo (p^M, u1^W): every summand has denominator at most p^W.
witt::ParamsPtr working_params(int p, int f, int M, int W);

enum class Method { Recursive, Trees, Functional, WittAlternating, WittRecursion, LowDegree, Closed };
enum class Target { U1, U };

std::string to_string(Method m);
std::string to_string(Target t);

struct ActionResult {
  ScaledSeries series;  // indexed by u1-degree
  Method method = Method::Recursive;
  Target target = Target::U1;
  int M = 0;
  int W = 0;

  // Coefficient of u1^n modulo p^M.
  witt::Elem coefficient(int n) const;
  std::vector<witt::Elem> coefficients() const;
};

// Raised for operations that need an odd residue degree f (or q = p) when it is not.
class UnsupportedResidueDegree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Every act_* below computes in g's ring, of precision N, and returns results
// modulo p^M (M = N - W when negative). Each coefficient must come out
// integral and known modulo p^M, else PrecisionBudgetExceeded is thrown.

/// gamma_n from alpha0 gamma_n = sum over (K, H, I) != ((n), (0), ()) of
/// c(H, I) prod gamma_k, with the sum over K collapsed into powers of Gamma.
ActionResult act_u1_recursive(const GroupElem& g, int W, int M = -1);

/// Gamma_n as the weight-n part of the tree generating function
/// Z = sum_(H,I) c(H, I) u1^QI Z^QH / alpha0. Weights up to kTreeCheckWeight
/// are also summed over enumerated trees.
ActionResult act_u1_trees(const GroupElem& g, int W, int M = -1);
inline constexpr int kTreeCheckWeight = 5;

/// Gamma solving f1(Gamma) (sigma(a1) f1 + a0 f) = f(Gamma) (sigma(a0) f1 + p a1 f),
/// with f and f1 from the transfer-matrix product.
ActionResult act_u1_functional(const GroupElem& g, int W, int M = -1);

enum class MethodChoice { Recursive, Trees, Functional, Auto };
ActionResult act_u1(const GroupElem& g, int W, MethodChoice method = MethodChoice::Auto, int M = -1);

/// theta_n with g.u = (sum theta_n u1^n) u; needs odd residue degree f.
ActionResult act_u(const GroupElem& g, int W, int M = -1);

// theta_n = x_n - sum_{i<n} theta_i y_{n-i}, solved directly...
std::vector<Scaled> solve_recursive(const std::vector<Scaled>& x, const std::vector<Scaled>& y);
// ...and in closed form, sum_i x_i sum over compositions K of n - i of (-1)^|K| prod y_k.
std::vector<Scaled> solve_closed(const std::vector<Scaled>& x, const std::vector<Scaled>& y);

/// alpha.u1 for alpha in W(F_{q^2})^x, summed over q-alternating trees; f odd.
ActionResult witt_act_u1(const witt::Elem& alpha, int W, int M = -1);

/// delta_0 .. delta_{p-1} at degrees 1 + (p+1) m, valid below u1^(p^2+1); q = p.
ActionResult witt_act_u1_recursion(const witt::Elem& alpha, int M = -1);

/// tau_n with alpha.u = (sum tau_n u1^((p+1) n)) u; f odd.
ActionResult witt_act_u(const witt::Elem& alpha, int W, int M = -1);

struct LowDegreeTerm {
  int degree;
  Scaled value;
  bool valid;  // degree < min(4p + 5, p^2)
};

/// The closed forms at degrees 1, p+2, 2p+3, 3p+4 in beta = sigma(alpha)/alpha; q = p.
std::vector<LowDegreeTerm> low_degree_closed(const witt::Elem& alpha);

/// s(g.u1) (g.u)^d, the image of s u^d.
ScaledSeries act_on_ring_element(const GroupElem& g, const ScaledSeries& s, int d, int W);

struct Linearity {
  bool linear = false;
  int witness = 0;                        // first degree >= 2 with a nonzero coefficient
  std::optional<bool> beta_criterion;     // (sigma(a)/a)^(p+1) == 1, when alpha1 = 0 and q = p
};

Linearity classify_linear(const GroupElem& g, int W, int M = -1);

}  // namespace ltaction::stabilizer
