#include "ltaction/witt.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ltaction::witt {

namespace {

using Coeffs = std::vector<mpz_class>;

// Conway polynomials, lowest degree first, without the leading 1.
struct ConwayEntry {
  int p;
  int degree;
  std::vector<int> low;
};

const std::vector<ConwayEntry>& conway_table() {
  static const std::vector<ConwayEntry> table = {
      {2, 2, {1, 1}},       {2, 4, {1, 1, 0, 0}}, {3, 2, {2, 2}},
      {3, 4, {2, 0, 0, 2}}, {5, 2, {2, 4}},       {5, 4, {2, 4, 4, 0}},
      {7, 2, {3, 6}},       {7, 4, {3, 4, 5, 0}},
  };
  return table;
}

// ---- F_p[x] / (g) with small integers, used to test primitivity.

using SmallPoly = std::vector<std::int64_t>;

SmallPoly small_mulmod(const SmallPoly& a, const SmallPoly& b, const std::vector<int>& g, int p) {
  const std::size_t h = g.size() - 1;
  std::vector<std::int64_t> prod(2 * h - 1, 0);
  for (std::size_t i = 0; i < h; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < h; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (std::size_t k = prod.size(); k-- > h;) {
    const std::int64_t c = prod[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i < h; ++i) prod[k - h + i] = ((prod[k - h + i] - c * g[i]) % p + p) % p;
    prod[k] = 0;
  }
  prod.resize(h);
  return prod;
}

SmallPoly small_pow_x(const std::vector<int>& g, int p, std::uint64_t e) {
  const std::size_t h = g.size() - 1;
  SmallPoly result(h, 0), base(h, 0);
  result[0] = 1;
  if (h == 1) {
    base[0] = (p - g[0]) % p;
  } else {
    base[1] = 1;
  }
  while (e > 0) {
    if (e & 1U) result = small_mulmod(result, base, g, p);
    base = small_mulmod(base, base, g, p);
    e >>= 1U;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_primitive(const std::vector<int>& g, int p) {
  const std::size_t h = g.size() - 1;
  if (g[0] == 0) return false;
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < h; ++i) order *= static_cast<std::uint64_t>(p);
  order -= 1;
  SmallPoly one(h, 0);
  one[0] = 1;
  if (small_pow_x(g, p, order) != one) return false;
  for (std::uint64_t r : prime_factors(order)) {
    if (small_pow_x(g, p, order / r) == one) return false;
  }
  return true;
}

std::vector<int> residue_polynomial(int p, int degree, bool& conway) {
  for (const auto& e : conway_table()) {
    if (e.p == p && e.degree == degree) {
      conway = true;
      std::vector<int> g = e.low;
      g.push_back(1);
      return g;
    }
  }
  conway = false;
  std::uint64_t count = 1;
  for (int i = 0; i < degree; ++i) count *= static_cast<std::uint64_t>(p);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<int> g(static_cast<std::size_t>(degree) + 1, 0);
    std::uint64_t rest = code;
    for (int i = 0; i < degree; ++i) {
      g[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(p));
      rest /= static_cast<std::uint64_t>(p);
    }
    g.back() = 1;
    if (is_primitive(g, p)) return g;
  }
  throw ArithmeticError("no primitive polynomial found");
}

// ---- (Z / p^N)[x] / (monic) with mpz coefficients.

void reduce_mod(Coeffs& c, const mpz_class& m) {
  for (auto& x : c) {
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  }
}

Coeffs raw_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& monic, const mpz_class& m) {
  const std::size_t h = monic.size() - 1;
  Coeffs prod(2 * h - 1, 0);
  for (std::size_t i = 0; i < h; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < h; ++j) prod[i + j] += a[i] * b[j];
  }
  for (std::size_t k = prod.size(); k-- > h;) {
    mpz_fdiv_r(prod[k].get_mpz_t(), prod[k].get_mpz_t(), m.get_mpz_t());
    if (prod[k] == 0) continue;
    for (std::size_t i = 0; i < h; ++i) prod[k - h + i] -= prod[k] * monic[i];
  }
  prod.resize(h);
  reduce_mod(prod, m);
  return prod;
}

Coeffs raw_pow(Coeffs base, mpz_class e, const Coeffs& monic, const mpz_class& m) {
  const std::size_t h = monic.size() - 1;
  Coeffs result(h, 0);
  result[0] = 1;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = raw_mulmod(result, base, monic, m);
    base = raw_mulmod(base, base, monic, m);
    e >>= 1;
  }
  return result;
}

Coeffs x_class(const Coeffs& monic, const mpz_class& m) {
  const std::size_t h = monic.size() - 1;
  Coeffs x(h, 0);
  if (h == 1) {
    x[0] = -monic[0];
    reduce_mod(x, m);
  } else {
    x[1] = 1;
  }
  return x;
}

int mpz_valuation(const mpz_class& c, int p, int cap) {
  if (c == 0) return cap;
  mpz_class tmp = c;
  int v = 0;
  while (v < cap && mpz_divisible_ui_p(tmp.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(tmp.get_mpz_t(), tmp.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool Params::same_ring(const Params& other) const {
  if (this == &other) return true;
  return p_ == other.p_ && f_ == other.f_ && N_ == other.N_ && modulus_ == other.modulus_;
}

ParamsPtr make_params(int p, int f, int N) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
  if (f < 1) throw std::invalid_argument("residue degree f must be positive");
  if (N < 1) throw std::invalid_argument("precision N must be positive");

  auto params = std::shared_ptr<Params>(new Params());
  Params& P = *params;
  P.p_ = p;
  P.f_ = f;
  P.N_ = N;
  P.degree_ = 2 * f;
  P.q_ = 1;
  for (int i = 0; i < f; ++i) P.q_ *= p;
  P.pow_p_.resize(static_cast<std::size_t>(N) + 1);
  P.pow_p_[0] = 1;
  for (int k = 1; k <= N; ++k) P.pow_p_[static_cast<std::size_t>(k)] = P.pow_p_[static_cast<std::size_t>(k) - 1] * p;
  const mpz_class& m = P.pow_p_.back();
  const std::size_t h = static_cast<std::size_t>(P.degree_);

  P.residue_modulus_ = residue_polynomial(p, P.degree_, P.conway_);
  Coeffs naive(P.residue_modulus_.begin(), P.residue_modulus_.end());

  // Teichmuller lift of the class of x: each x -> x^(q^2) step gains one p-adic digit.
  const mpz_class q2 = mpz_class(P.q_) * P.q_;
  Coeffs omega = x_class(naive, m);
  for (int i = 0; i < N; ++i) omega = raw_pow(omega, q2, naive, m);

  // Minimal polynomial prod_j (X - omega^(p^j)); its coefficients are Frobenius invariant.
  std::vector<Coeffs> poly{Coeffs(h, 0)};
  poly[0][0] = 1;
  Coeffs root = omega;
  for (std::size_t j = 0; j < h; ++j) {
    std::vector<Coeffs> next(poly.size() + 1, Coeffs(h, 0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      for (std::size_t i = 0; i < h; ++i) next[k + 1][i] += poly[k][i];
      Coeffs term = raw_mulmod(poly[k], root, naive, m);
      for (std::size_t i = 0; i < h; ++i) next[k][i] -= term[i];
    }
    for (auto& c : next) reduce_mod(c, m);
    poly = std::move(next);
    root = raw_pow(root, mpz_class(p), naive, m);
  }
  P.modulus_.assign(h + 1, 0);
  for (std::size_t k = 0; k <= h; ++k) {
    for (std::size_t i = 1; i < h; ++i) {
      if (poly[k][i] != 0) throw ArithmeticError("Teichmuller minimal polynomial is not defined over Z_p");
    }
    P.modulus_[k] = poly[k][0];
  }

  // t^(h + k) for k = 0 .. h - 2.
  const Coeffs t = x_class(P.modulus_, m);
  Coeffs power(h, 0);
  power[0] = 1;
  for (std::size_t k = 0; k < h; ++k) power = raw_mulmod(power, t, P.modulus_, m);
  for (std::size_t k = 0; k + 1 < h; ++k) {
    P.reduce_.push_back(power);
    power = raw_mulmod(power, t, P.modulus_, m);
  }

  const Coeffs tq = raw_pow(t, mpz_class(P.q_), P.modulus_, m);
  Coeffs img(h, 0);
  img[0] = 1;
  for (std::size_t i = 0; i < h; ++i) {
    P.frob_.push_back(img);
    img = raw_mulmod(img, tq, P.modulus_, m);
  }
  return params;
}

// ---- Elem

Elem::Elem(ParamsPtr params) : params_(std::move(params)), c_(static_cast<std::size_t>(params_->degree()), 0) {}

Elem::Elem(ParamsPtr params, long value) : Elem(std::move(params)) {
  c_[0] = value;
  reduce();
}

Elem::Elem(ParamsPtr params, std::vector<mpz_class> coeffs) : params_(std::move(params)), c_(std::move(coeffs)) {
  if (c_.size() != static_cast<std::size_t>(params_->degree())) {
    throw std::invalid_argument("coordinate count does not match the ring degree");
  }
  reduce();
}

Elem Elem::generator(ParamsPtr params) {
  Elem t(params);
  if (params->degree() == 1) {
    t.c_[0] = -params->modulus()[0];
    t.reduce();
  } else {
    t.c_[1] = 1;
  }
  return t;
}

void Elem::reduce() { reduce_mod(c_, params_->modulus_pN()); }

void Elem::check_same(const Elem& b) const {
  if (!params_ || !b.params_ || !params_->same_ring(*b.params_)) {
    throw std::invalid_argument("Witt elements belong to different rings");
  }
}

bool Elem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpz_class& x) { return x == 0; });
}

bool Elem::is_unit() const {
  const unsigned long p = static_cast<unsigned long>(params_->p());
  return std::any_of(c_.begin(), c_.end(), [p](const mpz_class& x) { return !mpz_divisible_ui_p(x.get_mpz_t(), p); });
}

bool Elem::in_prime_subring() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const mpz_class& x) { return x == 0; });
}

Elem& Elem::operator+=(const Elem& b) {
  check_same(b);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    c_[i] += b.c_[i];
    if (c_[i] >= params_->modulus_pN()) c_[i] -= params_->modulus_pN();
  }
  return *this;
}

Elem& Elem::operator-=(const Elem& b) {
  check_same(b);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    c_[i] -= b.c_[i];
    if (c_[i] < 0) c_[i] += params_->modulus_pN();
  }
  return *this;
}

Elem& Elem::operator*=(const Elem& b) {
  check_same(b);
  const std::size_t h = c_.size();
  if (h == 1) {
    c_[0] *= b.c_[0];
    reduce();
    return *this;
  }
  Coeffs prod(2 * h - 1, 0);
  for (std::size_t i = 0; i < h; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < h; ++j) {
      if (b.c_[j] != 0) mpz_addmul(prod[i + j].get_mpz_t(), c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  const auto& table = params_->reduction_table();
  const mpz_class& m = params_->modulus_pN();
  for (std::size_t k = 0; k + 1 < h; ++k) {
    mpz_class& hi = prod[h + k];
    if (hi == 0) continue;
    mpz_fdiv_r(hi.get_mpz_t(), hi.get_mpz_t(), m.get_mpz_t());
    for (std::size_t i = 0; i < h; ++i) mpz_addmul(prod[i].get_mpz_t(), hi.get_mpz_t(), table[k][i].get_mpz_t());
  }
  for (std::size_t i = 0; i < h; ++i) c_[i].swap(prod[i]);
  reduce();
  return *this;
}

Elem& Elem::operator*=(long k) {
  for (auto& x : c_) x *= k;
  reduce();
  return *this;
}

bool operator==(const Elem& a, const Elem& b) {
  if (!a.params_ || !b.params_) return !a.params_ && !b.params_;
  return a.params_->same_ring(*b.params_) && a.c_ == b.c_;
}

Elem operator+(Elem a, const Elem& b) { return a += b; }
Elem operator-(Elem a, const Elem& b) { return a -= b; }
Elem operator-(const Elem& a) { return Elem(a.params()) -= a; }
Elem operator*(const Elem& a, const Elem& b) {
  Elem r = a;
  r *= b;
  return r;
}
Elem operator*(Elem a, long k) { return a *= k; }
Elem operator*(long k, Elem a) { return a *= k; }

Elem add(const Elem& a, const Elem& b) { return a + b; }
Elem sub(const Elem& a, const Elem& b) { return a - b; }
Elem mul(const Elem& a, const Elem& b) { return a * b; }
Elem neg(const Elem& a) { return -a; }

Elem pow(const Elem& a, const mpz_class& e) {
  if (e < 0) return pow(inv(a), mpz_class(-e));
  Elem result(a.params(), 1);
  Elem base = a;
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Elem pow(const Elem& a, std::uint64_t e) {
  Elem result(a.params(), 1);
  Elem base = a;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Elem frobenius(const Elem& a) {
  const auto& table = a.params()->frobenius_table();
  const std::size_t h = a.coeffs().size();
  Coeffs out(h, 0);
  for (std::size_t i = 0; i < h; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < h; ++j) mpz_addmul(out[j].get_mpz_t(), a[i].get_mpz_t(), table[i][j].get_mpz_t());
  }
  return Elem(a.params(), std::move(out));
}

Elem frobenius(const Elem& a, int times) { return (times % 2 == 0) ? a : frobenius(a); }

Elem inv(const Elem& a) {
  if (!a.is_unit()) throw ArithmeticError("element is not a unit: " + format_elem(a));
  const auto& P = *a.params();
  // a^(q^2 - 2) inverts a modulo p; Newton doubles the number of correct digits.
  const mpz_class e = mpz_class(P.q()) * P.q() - 2;
  Elem x = pow(a, e);
  const Elem one(a.params(), 1);
  const Elem two(a.params(), 2);
  for (int iter = 0; iter < 64; ++iter) {
    const Elem ax = a * x;
    if (ax == one) return x;
    x = x * (two - ax);
  }
  throw ArithmeticError("Newton inversion failed to converge");
}

Elem norm(const Elem& a) { return a * frobenius(a); }

int valuation(const Elem& a) {
  const int N = a.params()->N();
  int v = N;
  for (const auto& c : a.coeffs()) v = std::min(v, mpz_valuation(c, a.params()->p(), N));
  return v >= N ? kInfiniteValuation : v;
}

Elem divide_by_p_power(const Elem& a, int k) {
  if (k == 0) return a;
  const mpz_class& pk = a.params()->p_power(k);
  Coeffs out = a.coeffs();
  for (auto& c : out) {
    if (!mpz_divisible_p(c.get_mpz_t(), pk.get_mpz_t())) throw ArithmeticError("element not divisible by p^k");
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
  }
  return Elem(a.params(), std::move(out));
}

Elem truncate(const Elem& a, int k) {
  if (k >= a.params()->N()) return a;
  Coeffs out = a.coeffs();
  reduce_mod(out, a.params()->p_power(std::max(k, 0)));
  return Elem(a.params(), std::move(out));
}

// ---- parsing and formatting

namespace {

class ElemParser {
 public:
  ElemParser(std::string_view text, const ParamsPtr& params) : s_(text), params_(params) {}

  Elem parse() {
    Elem v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << what << " at offset " << pos_ << " in \"" << s_ << "\"";
    throw ParseError(os.str());
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Elem expr() {
    Elem v = term();
    for (;;) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  Elem term() {
    Elem v = unary();
    while (accept('*')) v *= unary();
    return v;
  }

  Elem unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Elem power() {
    Elem base = primary();
    if (accept('^')) {
      skip_ws();
      mpz_class e = literal();
      return pow(base, e);
    }
    return base;
  }

  mpz_class literal() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer literal");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Elem primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Elem v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (c == 'z') {
      ++pos_;
      return Elem::generator(params_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class value = literal();
      mpz_fdiv_r(value.get_mpz_t(), value.get_mpz_t(), params_->modulus_pN().get_mpz_t());
      Coeffs coeffs(static_cast<std::size_t>(params_->degree()), 0);
      coeffs[0] = value;
      return Elem(params_, std::move(coeffs));
    }
    fail("unexpected character");
  }

  std::string_view s_;
  const ParamsPtr& params_;
  std::size_t pos_ = 0;
};

}  // namespace

Elem parse_elem(std::string_view text, const ParamsPtr& params) { return ElemParser(text, params).parse(); }

std::string format_elem(const Elem& a) {
  std::string out;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += a[i].get_str();
    if (i == 1) {
      out += "*z";
    } else if (i > 1) {
      out += "*z^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<mpz_class> balanced_coeffs(const Elem& a, int k) {
  if (k < 1 || k > a.params()->N()) throw std::invalid_argument("balanced residues need 1 <= k <= N");
  const mpz_class& pk = a.params()->p_power(k);
  const mpz_class half = pk / 2;
  std::vector<mpz_class> out = truncate(a, k).coeffs();
  for (auto& c : out) {
    if (c > half) c -= pk;
  }
  return out;
}

std::string format_balanced(const Elem& a, int k) {
  std::string out;
  const auto c = balanced_coeffs(a, k);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += c[i] < 0 ? " - " : " + ";
    else if (c[i] < 0) out += "-";
    out += mpz_class(abs(c[i])).get_str();
    if (i == 1) {
      out += "*z";
    } else if (i > 1) {
      out += "*z^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace ltaction::witt
