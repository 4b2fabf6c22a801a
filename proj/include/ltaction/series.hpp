#pragma once

// Power series in u1 truncated below degree wmax, with coefficients in
// W(F_{q^2})[1/p] carried as Scaled values.

#include <cstdint>
#include <vector>

#include "ltaction/scaled.hpp"

namespace ltaction::series {

class ScaledSeries {
 public:
  ScaledSeries() = default;
  // The zero series with wmax coefficients.
  ScaledSeries(witt::ParamsPtr params, int wmax);

  static ScaledSeries one(const witt::ParamsPtr& params, int wmax);
  // c * u1^degree; zero when degree >= wmax.
  static ScaledSeries monomial(const witt::ParamsPtr& params, int wmax, std::int64_t degree, const Scaled& c);
  static ScaledSeries monomial(const witt::ParamsPtr& params, int wmax, std::int64_t degree);

  const witt::ParamsPtr& params() const { return params_; }
  int wmax() const { return static_cast<int>(c_.size()); }
  const Scaled& operator[](int n) const { return c_[static_cast<std::size_t>(n)]; }
  Scaled& operator[](int n) { return c_[static_cast<std::size_t>(n)]; }
  const std::vector<Scaled>& coeffs() const { return c_; }

  // Largest denominator exponent among the coefficients.
  int max_den() const;
  // Smallest absolute precision among the coefficients.
  int min_prec() const;
  ScaledSeries truncated(int wmax) const;

  ScaledSeries& operator+=(const ScaledSeries& b);
  ScaledSeries& operator-=(const ScaledSeries& b);

 private:
  void check_same(const ScaledSeries& b) const;

  witt::ParamsPtr params_;
  std::vector<Scaled> c_;
};

ScaledSeries operator+(ScaledSeries a, const ScaledSeries& b);
ScaledSeries operator-(ScaledSeries a, const ScaledSeries& b);
ScaledSeries operator-(const ScaledSeries& a);
// Cauchy product truncated to min(wmax).
ScaledSeries operator*(const ScaledSeries& a, const ScaledSeries& b);
ScaledSeries scale(const ScaledSeries& s, const Scaled& c);

/// outer(inner(u1)), truncated to inner.wmax(). The inner series must have
/// zero constant term; throws std::invalid_argument otherwise.
ScaledSeries compose(const ScaledSeries& outer, const ScaledSeries& inner);

/// Multiplicative inverse; the constant term must be a p-adic unit.
ScaledSeries invert_unit(const ScaledSeries& s);

// Coefficientwise agreement modulo p^M.
bool agree(const ScaledSeries& a, const ScaledSeries& b, int M);

/// f = sum over even-length I in Lambda of u1^QI / pi^(|I|/2).
ScaledSeries f_series(const witt::ParamsPtr& params, int wmax);
/// f1 = sum over odd-length I in Lambda of u1^QI / pi^((|I|-1)/2).
ScaledSeries f1_series(const witt::ParamsPtr& params, int wmax);

/// m_0 .. m_{count-1} from m_n = (u1^(q^(n-1)) / pi) m_{n-1} + m_{n-2} / pi.
std::vector<ScaledSeries> m_sequence(const witt::ParamsPtr& params, int count, int wmax);
// The normalized terms: pi^n m_{2n} and pi^(n+1) m_{2n+1}.
std::vector<ScaledSeries> normalized_m_sequence(const witt::ParamsPtr& params, int count, int wmax);

struct Limits {
  ScaledSeries f1;
  ScaledSeries f;
  int iterations = 0;  // terms or factors used before two successive iterates agreed
};

// f1 and f as limits of the normalized m-sequence.
Limits limits_from_m_sequence(const witt::ParamsPtr& params, int wmax);

struct Series2x2 {
  ScaledSeries a, b, c, d;
};

Series2x2 operator*(const Series2x2& x, const Series2x2& y);

/// T_i = [[1 + u1^(q^(2i) + q^(2i-1)) / pi, u1^(q^(2i))], [u1^(q^(2i-1)) / pi, 1]].
Series2x2 transfer_matrix(const witt::ParamsPtr& params, int i, int wmax);

/// T_n ... T_1.
Series2x2 matrix_partial_product(const witt::ParamsPtr& params, int n, int wmax);

/// f1 = a u1 + b and f = c u1 + d from the stabilized product T_n ... T_1.
Limits limits_from_matrix_product(const witt::ParamsPtr& params, int wmax);

/// w1 = f1 / f.
ScaledSeries w1_series(const witt::ParamsPtr& params, int wmax);

/// M_{2n+1} / M_{2n}, the n-th approximation of w1.
ScaledSeries F_term(const witt::ParamsPtr& params, int n, int wmax);

// q^e, or a value >= cap if that exceeds cap.
std::int64_t capped_power(std::int64_t q, std::int64_t e, std::int64_t cap);

}  // namespace ltaction::series
