#include "ltaction/scaled.hpp"

#include <algorithm>

namespace ltaction {

using witt::Elem;
using witt::kInfiniteValuation;

namespace {

int min_precision(int a, int b) { return std::min(a, b); }

// a + b for valuation-like quantities, where kInfiniteValuation absorbs.
int add_sat(int a, int b) {
  if (a == kInfiniteValuation || b == kInfiniteValuation) return kInfiniteValuation;
  return a + b;
}

Elem scale_up(const Elem& a, int k) {
  if (k == 0) return a;
  std::vector<mpz_class> coeffs = a.coeffs();
  for (auto& x : coeffs) x *= a.params()->p_power(std::min(k, a.params()->N()));
  return Elem(a.params(), std::move(coeffs));
}

}  // namespace

Scaled::Scaled(Elem num) : num_(std::move(num)), den_(0), prec_(num_.params()->N()) { normalize(); }

Scaled::Scaled(Elem num, int den, int prec) : num_(std::move(num)), den_(den), prec_(prec) {
  prec_ = std::min(prec_, num_.params()->N() - den_);
  normalize();
}

Scaled Scaled::zero(const witt::ParamsPtr& params) { return Scaled(Elem(params)); }
Scaled Scaled::one(const witt::ParamsPtr& params) { return Scaled(Elem(params, 1)); }
Scaled Scaled::integer(const witt::ParamsPtr& params, long value) { return Scaled(Elem(params, value)); }

Scaled Scaled::inv_p_power(const witt::ParamsPtr& params, int k) {
  if (k <= 0) return Scaled(scale_up(Elem(params, 1), -k));
  return Scaled(Elem(params, 1), k, params->N() - k);
}

void Scaled::normalize() {
  const int N = num_.params()->N();
  if (prec_ + den_ < N) num_ = witt::truncate(num_, prec_ + den_);
  if (num_.is_zero()) {
    den_ = 0;
    vnum_ = kInfiniteValuation;
    prec_ = std::min(prec_, N);
    return;
  }
  vnum_ = witt::valuation(num_);
  const int k = std::min(vnum_, den_);
  if (k > 0) {
    num_ = witt::divide_by_p_power(num_, k);
    den_ -= k;
    vnum_ -= k;
  }
}

int Scaled::valuation() const { return is_zero() ? prec_ : vnum_ - den_; }

Elem Scaled::to_elem(int M) const {
  if (prec_ < M) {
    throw PrecisionBudgetExceeded("value known only modulo p^" + std::to_string(prec_) + ", need p^" + std::to_string(M));
  }
  if (den_ != 0) throw PrecisionBudgetExceeded("value is not integral: denominator p^" + std::to_string(den_));
  return witt::truncate(num_, M);
}

Scaled& Scaled::operator+=(const Scaled& b) {
  const int D = std::max(den_, b.den_);
  const int N = num_.params()->N();
  Elem sum = scale_up(num_, D - den_);
  sum += scale_up(b.num_, D - b.den_);
  num_ = std::move(sum);
  den_ = D;
  prec_ = std::min({prec_, b.prec_, N - D});
  normalize();
  return *this;
}

Scaled& Scaled::operator-=(const Scaled& b) { return *this += -b; }

Scaled& Scaled::operator*=(const Scaled& b) {
  const int N = num_.params()->N();
  const int va = valuation();
  const int vb = b.valuation();
  const int p1 = add_sat(prec_, vb);
  const int p2 = add_sat(b.prec_, va);
  num_ *= b.num_;
  den_ += b.den_;
  prec_ = min_precision(min_precision(p1, p2), N - den_);
  normalize();
  return *this;
}

Scaled operator+(Scaled a, const Scaled& b) { return a += b; }
Scaled operator-(Scaled a, const Scaled& b) { return a -= b; }
Scaled operator-(const Scaled& a) { return Scaled(-a.num(), a.den(), a.prec()); }
Scaled operator*(const Scaled& a, const Scaled& b) {
  Scaled r = a;
  r *= b;
  return r;
}

Scaled frobenius(const Scaled& a) { return Scaled(witt::frobenius(a.num()), a.den(), a.prec()); }
Scaled frobenius(const Scaled& a, int times) { return (times % 2 == 0) ? a : frobenius(a); }

Scaled inv(const Scaled& a) {
  if (a.is_zero()) throw witt::ArithmeticError("inverse of a value that is zero to its precision");
  const int v = a.valuation();
  const int N = a.params()->N();
  if (v >= 0) {
    Elem u = witt::divide_by_p_power(a.num(), v);
    return Scaled(witt::inv(u), v, a.prec() - 2 * v);
  }
  Elem r = witt::inv(a.num());
  return Scaled(scale_up(r, -v), 0, std::min(a.prec() - 2 * v, N));
}

Scaled pow(const Scaled& a, unsigned long e) {
  Scaled result = Scaled::one(a.params());
  Scaled base = a;
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1UL;
    if (e > 0) base *= base;
  }
  return result;
}

Scaled times_p_power(const Scaled& a, int k) { return a * Scaled::inv_p_power(a.params(), -k); }

bool agree(const Scaled& a, const Scaled& b, int M) {
  if (a.prec() < M || b.prec() < M) return false;
  const Scaled d = a - b;
  return d.prec() >= M && (d.is_zero() || d.valuation() >= M);
}

}  // namespace ltaction
