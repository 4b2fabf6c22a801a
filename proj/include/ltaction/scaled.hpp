#pragma once

// Values num / p^den with num in W(F_{q^2}) / p^N and an absolute precision:
// the represented quantity is known modulo p^prec W(F_{q^2}).

#include <stdexcept>

#include "ltaction/witt.hpp"

namespace ltaction {

class PrecisionBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Scaled {
 public:
  Scaled() = default;
  // Exact element of the ring: prec = N.
  explicit Scaled(witt::Elem num);
  Scaled(witt::Elem num, int den, int prec);

  static Scaled zero(const witt::ParamsPtr& params);
  static Scaled one(const witt::ParamsPtr& params);
  static Scaled integer(const witt::ParamsPtr& params, long value);
  // 1 / p^k; negative k gives p^(-k).
  static Scaled inv_p_power(const witt::ParamsPtr& params, int k);

  const witt::ParamsPtr& params() const { return num_.params(); }
  const witt::Elem& num() const { return num_; }
  int den() const { return den_; }
  int prec() const { return prec_; }

  // Zero modulo p^prec.
  bool is_zero() const { return num_.is_zero(); }
  // Lower bound for the valuation of the value; prec() when zero.
  int valuation() const;
  bool is_integral() const { return den_ == 0; }

  // The value as a ring element; throws PrecisionBudgetExceeded unless it is
  // integral and known modulo p^M.
  witt::Elem to_elem(int M) const;

  Scaled& operator+=(const Scaled& b);
  Scaled& operator-=(const Scaled& b);
  Scaled& operator*=(const Scaled& b);

 private:
  void normalize();

  witt::Elem num_;
  int den_ = 0;
  int prec_ = 0;
  int vnum_ = 0;
};

Scaled operator+(Scaled a, const Scaled& b);
Scaled operator-(Scaled a, const Scaled& b);
Scaled operator-(const Scaled& a);
Scaled operator*(const Scaled& a, const Scaled& b);

Scaled frobenius(const Scaled& a);
Scaled frobenius(const Scaled& a, int times);
// Throws witt::ArithmeticError when the value is zero to its precision.
Scaled inv(const Scaled& a);
Scaled pow(const Scaled& a, unsigned long e);
Scaled times_p_power(const Scaled& a, int k);

// a and b agree modulo p^M and both are known that far.
bool agree(const Scaled& a, const Scaled& b, int M);

}  // namespace ltaction
