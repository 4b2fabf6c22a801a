#include "ltaction/series.hpp"

#include <algorithm>
#include <stdexcept>

#include "ltaction/lambda.hpp"

namespace ltaction::series {

using lambda::Parity;

namespace {

// Zero known to full precision; products with it can be skipped.
bool exact_zero(const Scaled& x) { return x.is_zero() && x.prec() >= x.params()->N(); }

}  // namespace

std::int64_t capped_power(std::int64_t q, std::int64_t e, std::int64_t cap) {
  std::int64_t r = 1;
  for (std::int64_t k = 0; k < e; ++k) {
    r *= q;
    if (r >= cap) return cap;
  }
  return r;
}

ScaledSeries::ScaledSeries(witt::ParamsPtr params, int wmax) : params_(std::move(params)) {
  if (wmax < 1) throw std::invalid_argument("series truncation must be at least 1");
  c_.assign(static_cast<std::size_t>(wmax), Scaled::zero(params_));
}

ScaledSeries ScaledSeries::one(const witt::ParamsPtr& params, int wmax) {
  ScaledSeries s(params, wmax);
  s[0] = Scaled::one(params);
  return s;
}

ScaledSeries ScaledSeries::monomial(const witt::ParamsPtr& params, int wmax, std::int64_t degree, const Scaled& c) {
  ScaledSeries s(params, wmax);
  if (degree < 0) throw std::invalid_argument("negative degree");
  if (degree < wmax) s[static_cast<int>(degree)] = c;
  return s;
}

ScaledSeries ScaledSeries::monomial(const witt::ParamsPtr& params, int wmax, std::int64_t degree) {
  return monomial(params, wmax, degree, Scaled::one(params));
}

int ScaledSeries::max_den() const {
  int d = 0;
  for (const auto& x : c_) d = std::max(d, x.den());
  return d;
}

int ScaledSeries::min_prec() const {
  int p = params_->N();
  for (const auto& x : c_) p = std::min(p, x.prec());
  return p;
}

ScaledSeries ScaledSeries::truncated(int wmax) const {
  ScaledSeries s(params_, std::min(wmax, this->wmax()));
  for (int n = 0; n < s.wmax(); ++n) s[n] = (*this)[n];
  return s;
}

void ScaledSeries::check_same(const ScaledSeries& b) const {
  if (!params_->same_ring(*b.params_)) throw std::invalid_argument("series over different rings");
}

ScaledSeries& ScaledSeries::operator+=(const ScaledSeries& b) {
  check_same(b);
  c_.resize(std::min(c_.size(), b.c_.size()), Scaled::zero(params_));
  for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += b.c_[n];
  return *this;
}

ScaledSeries& ScaledSeries::operator-=(const ScaledSeries& b) { return *this += -b; }

ScaledSeries operator+(ScaledSeries a, const ScaledSeries& b) { return a += b; }
ScaledSeries operator-(ScaledSeries a, const ScaledSeries& b) { return a -= b; }

ScaledSeries operator-(const ScaledSeries& a) {
  ScaledSeries r = a;
  for (int n = 0; n < r.wmax(); ++n) r[n] = -a[n];
  return r;
}

ScaledSeries operator*(const ScaledSeries& a, const ScaledSeries& b) {
  if (!a.params()->same_ring(*b.params())) throw std::invalid_argument("series over different rings");
  const int w = std::min(a.wmax(), b.wmax());
  ScaledSeries r(a.params(), w);
  for (int i = 0; i < w; ++i) {
    if (exact_zero(a[i])) continue;
    for (int j = 0; i + j < w; ++j) {
      if (exact_zero(b[j])) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

ScaledSeries scale(const ScaledSeries& s, const Scaled& c) {
  ScaledSeries r = s;
  for (int n = 0; n < r.wmax(); ++n) r[n] *= c;
  return r;
}

ScaledSeries compose(const ScaledSeries& outer, const ScaledSeries& inner) {
  if (!exact_zero(inner[0])) throw std::invalid_argument("inner series must have zero constant term");
  const int w = inner.wmax();
  ScaledSeries r(inner.params(), w);
  // Horner from the top coefficient that can still contribute below w.
  for (int k = std::min(outer.wmax(), w) - 1; k >= 0; --k) {
    r = r * inner;
    r[0] += outer[k];
  }
  return r;
}

ScaledSeries invert_unit(const ScaledSeries& s) {
  if (s[0].is_zero() || s[0].valuation() != 0) throw witt::ArithmeticError("constant term is not a unit");
  const Scaled i0 = inv(s[0]);
  ScaledSeries r(s.params(), s.wmax());
  r[0] = i0;
  for (int n = 1; n < s.wmax(); ++n) {
    Scaled acc = Scaled::zero(s.params());
    for (int i = 1; i <= n; ++i) {
      if (exact_zero(s[i])) continue;
      acc += s[i] * r[n - i];
    }
    r[n] = -(acc * i0);
  }
  return r;
}

bool agree(const ScaledSeries& a, const ScaledSeries& b, int M) {
  if (a.wmax() != b.wmax()) return false;
  for (int n = 0; n < a.wmax(); ++n) {
    if (!agree(a[n], b[n], M)) return false;
  }
  return true;
}

namespace {

ScaledSeries lambda_sum(const witt::ParamsPtr& params, int wmax, Parity parity) {
  ScaledSeries s(params, wmax);
  for (int n = 0; n < wmax; ++n) {
    for (const auto& I : lambda::enumerate_lambda(params->q(), n, parity)) {
      const int k = static_cast<int>(I.size()) / 2;  // |I|/2 or (|I|-1)/2
      s[n] += Scaled::inv_p_power(params, k);
    }
  }
  return s;
}

bool stable(const ScaledSeries& a, const ScaledSeries& b) {
  return agree(a, b, std::min(a.min_prec(), b.min_prec()));
}

}  // namespace

ScaledSeries f_series(const witt::ParamsPtr& params, int wmax) { return lambda_sum(params, wmax, Parity::Even); }
ScaledSeries f1_series(const witt::ParamsPtr& params, int wmax) { return lambda_sum(params, wmax, Parity::Odd); }

std::vector<ScaledSeries> m_sequence(const witt::ParamsPtr& params, int count, int wmax) {
  if (count < 2) throw std::invalid_argument("m_sequence needs at least two terms");
  const Scaled inv_pi = Scaled::inv_p_power(params, 1);
  std::vector<ScaledSeries> m;
  m.push_back(ScaledSeries::one(params, wmax));
  m.push_back(ScaledSeries::monomial(params, wmax, 1, inv_pi));
  for (int n = 2; n < count; ++n) {
    const std::int64_t e = capped_power(params->q(), n - 1, wmax);
    auto next = ScaledSeries::monomial(params, wmax, e, inv_pi) * m[static_cast<std::size_t>(n - 1)];
    next += scale(m[static_cast<std::size_t>(n - 2)], inv_pi);
    m.push_back(std::move(next));
  }
  return m;
}

std::vector<ScaledSeries> normalized_m_sequence(const witt::ParamsPtr& params, int count, int wmax) {
  auto m = m_sequence(params, count, wmax);
  for (int n = 0; n < count; ++n) {
    const int k = (n % 2 == 0) ? n / 2 : n / 2 + 1;
    m[static_cast<std::size_t>(n)] = scale(m[static_cast<std::size_t>(n)], Scaled::inv_p_power(params, -k));
  }
  return m;
}

Limits limits_from_m_sequence(const witt::ParamsPtr& params, int wmax) {
  // Each pair of new terms needs q^(2n-1) < wmax to change anything, so the
  // loop ends after about log_q(wmax) / 2 rounds.
  for (int pairs = 2;; ++pairs) {
    auto M = normalized_m_sequence(params, 2 * pairs + 2, wmax);
    const auto n = static_cast<std::size_t>(2 * pairs);
    if (stable(M[n], M[n - 2]) && stable(M[n + 1], M[n - 1])) return Limits{M[n + 1], M[n], pairs};
    if (pairs > 64) throw std::runtime_error("m-sequence failed to stabilize");
  }
}

Series2x2 operator*(const Series2x2& x, const Series2x2& y) {
  return Series2x2{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Series2x2 transfer_matrix(const witt::ParamsPtr& params, int i, int wmax) {
  if (i < 1) throw std::invalid_argument("transfer matrix index starts at 1");
  const Scaled inv_pi = Scaled::inv_p_power(params, 1);
  const std::int64_t even = capped_power(params->q(), 2 * i, wmax);
  const std::int64_t odd = capped_power(params->q(), 2 * i - 1, wmax);
  return Series2x2{
      ScaledSeries::one(params, wmax) + ScaledSeries::monomial(params, wmax, std::min<std::int64_t>(even + odd, wmax), inv_pi),
      ScaledSeries::monomial(params, wmax, even),
      ScaledSeries::monomial(params, wmax, odd, inv_pi),
      ScaledSeries::one(params, wmax),
  };
}

Series2x2 matrix_partial_product(const witt::ParamsPtr& params, int n, int wmax) {
  if (n < 1) throw std::invalid_argument("partial product needs n >= 1");
  Series2x2 P = transfer_matrix(params, 1, wmax);
  for (int i = 2; i <= n; ++i) P = transfer_matrix(params, i, wmax) * P;
  return P;
}

Limits limits_from_matrix_product(const witt::ParamsPtr& params, int wmax) {
  // T_i is the identity below u1^wmax once q^(2i-1) >= wmax.
  int n = 1;
  while (capped_power(params->q(), 2 * n + 1, wmax) < wmax) ++n;
  const Series2x2 P = matrix_partial_product(params, n, wmax);
  const auto u1 = ScaledSeries::monomial(params, wmax, 1);
  return Limits{P.a * u1 + P.b, P.c * u1 + P.d, n};
}

ScaledSeries w1_series(const witt::ParamsPtr& params, int wmax) {
  return f1_series(params, wmax) * invert_unit(f_series(params, wmax));
}

ScaledSeries F_term(const witt::ParamsPtr& params, int n, int wmax) {
  auto M = normalized_m_sequence(params, std::max(2, 2 * n + 2), wmax);
  return M[static_cast<std::size_t>(2 * n + 1)] * invert_unit(M[static_cast<std::size_t>(2 * n)]);
}

}  // namespace ltaction::series
