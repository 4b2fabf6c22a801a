#pragma once

// Truncated arithmetic in the unramified ring W(F_{q^2}) / p^N, q = p^f.
//
// Elements are polynomials of degree < 2f in a fixed Teichmuller generator t
// (a primitive (q^2 - 1)st root of unity) with coefficients in Z / p^N.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ltaction::witt {

class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

class Params {
 public:
  int p() const { return p_; }
  int f() const { return f_; }
  int N() const { return N_; }
  int degree() const { return degree_; }
  std::int64_t q() const { return q_; }
  const mpz_class& modulus_pN() const { return pow_p_.back(); }
  const mpz_class& p_power(int k) const { return pow_p_.at(static_cast<std::size_t>(k)); }

  // Monic, degree() + 1 coefficients, lowest degree first.
  const std::vector<mpz_class>& modulus() const { return modulus_; }
  // Residue of modulus() mod p before the Teichmuller lift (Conway or smallest primitive).
  const std::vector<int>& residue_modulus() const { return residue_modulus_; }
  bool conway() const { return conway_; }

  // Coordinates of t^(degree() + k), k = 0 .. degree() - 2.
  const std::vector<std::vector<mpz_class>>& reduction_table() const { return reduce_; }
  // Coordinates of sigma(t^i) = t^(i q), i = 0 .. degree() - 1.
  const std::vector<std::vector<mpz_class>>& frobenius_table() const { return frob_; }

  bool same_ring(const Params& other) const;

 private:
  friend std::shared_ptr<const Params> make_params(int p, int f, int N);

  int p_ = 0;
  int f_ = 0;
  int N_ = 0;
  int degree_ = 0;
  std::int64_t q_ = 0;
  bool conway_ = false;
  std::vector<mpz_class> pow_p_;
  std::vector<int> residue_modulus_;
  std::vector<mpz_class> modulus_;
  std::vector<std::vector<mpz_class>> reduce_;
  std::vector<std::vector<mpz_class>> frob_;
};

using ParamsPtr = std::shared_ptr<const Params>;

/// Builds the ring W(F_{q^2}) / p^N with q = p^f.
///
/// The residue polynomial is the Conway polynomial where tabulated (p <= 7,
/// 2f <= 4) and otherwise the smallest primitive polynomial under the integer
/// encoding sum c_i p^i. It is then replaced by the minimal polynomial of the
/// Teichmuller lift of its root, so the generator t satisfies t^(q^2-1) = 1.
ParamsPtr make_params(int p, int f, int N);

bool is_prime(std::int64_t n);

class Elem {
 public:
  Elem() = default;
  explicit Elem(ParamsPtr params);
  Elem(ParamsPtr params, long value);
  Elem(ParamsPtr params, std::vector<mpz_class> coeffs);

  static Elem generator(ParamsPtr params);

  const ParamsPtr& params() const { return params_; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& operator[](std::size_t i) const { return c_[i]; }

  bool is_zero() const;
  bool is_unit() const;
  // True when every coordinate except the constant one vanishes.
  bool in_prime_subring() const;

  Elem& operator+=(const Elem& b);
  Elem& operator-=(const Elem& b);
  Elem& operator*=(const Elem& b);
  Elem& operator*=(long k);

  friend bool operator==(const Elem& a, const Elem& b);
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

 private:
  void reduce();
  void check_same(const Elem& b) const;

  ParamsPtr params_;
  std::vector<mpz_class> c_;
};

Elem operator+(Elem a, const Elem& b);
Elem operator-(Elem a, const Elem& b);
Elem operator-(const Elem& a);
Elem operator*(const Elem& a, const Elem& b);
Elem operator*(Elem a, long k);
Elem operator*(long k, Elem a);

Elem add(const Elem& a, const Elem& b);
Elem sub(const Elem& a, const Elem& b);
Elem mul(const Elem& a, const Elem& b);
Elem neg(const Elem& a);
Elem pow(const Elem& a, const mpz_class& e);
Elem pow(const Elem& a, std::uint64_t e);

/// sigma: t -> t^q, the lift of the generator of Gal(F_{q^2} / F_q).
Elem frobenius(const Elem& a);
Elem frobenius(const Elem& a, int times);

/// Inverse by Newton iteration; throws ArithmeticError on non-units.
Elem inv(const Elem& a);

/// a * sigma(a).
Elem norm(const Elem& a);

/// Largest e <= N with p^e dividing every coordinate, kInfiniteValuation for 0.
int valuation(const Elem& a);

/// Exact division by p^k; throws ArithmeticError if some coordinate is not divisible.
Elem divide_by_p_power(const Elem& a, int k);

/// Reduction modulo p^k (k <= N), still an element of the same ring.
Elem truncate(const Elem& a, int k);

// Grammar: integer literals, the symbol z, + - * ^, parentheses.
Elem parse_elem(std::string_view text, const ParamsPtr& params);
std::string format_elem(const Elem& a);

/// Coordinates modulo p^k as integers in (-p^k/2, p^k/2].
std::vector<mpz_class> balanced_coeffs(const Elem& a, int k);
std::string format_balanced(const Elem& a, int k);

}  // namespace ltaction::witt
