#include "doctest.h"

#include <random>

#include "ltaction/scaled.hpp"

using namespace ltaction;
using witt::Elem;

namespace {

int padic_val(mpz_class x, int p) {
  if (x == 0) return witt::kInfiniteValuation;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

// v_p(x - y) >= prec for rationals whose denominators may contain p.
bool close(const mpq_class& x, const mpq_class& y, int p, int prec) {
  mpq_class d = x - y;
  d.canonicalize();
  if (d == 0) return true;
  return padic_val(d.get_num(), p) - padic_val(d.get_den(), p) >= prec;
}

mpq_class as_rational(const Scaled& s) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(s.params()->p()), static_cast<unsigned long>(s.den()));
  return mpq_class(s.num()[0], den);
}

struct Sample {
  Scaled s;
  mpq_class q;
};

}  // namespace

TEST_CASE("prime-subring arithmetic matches rationals") {
  std::mt19937_64 rng(5);
  for (int p : {2, 3, 5}) {
    auto P = witt::make_params(p, 1, 40);
    auto random_sample = [&] {
      const long a = static_cast<long>(rng() % 2001) - 1000;
      const int k = static_cast<int>(rng() % 5);
      mpz_class pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
      return Sample{Scaled::integer(P, a) * Scaled::inv_p_power(P, k), mpq_class(mpz_class(a), pk)};
    };
    for (int trial = 0; trial < 300; ++trial) {
      Sample x = random_sample(), y = random_sample();
      Sample r;
      switch (rng() % 4) {
        case 0: r = {x.s + y.s, x.q + y.q}; break;
        case 1: r = {x.s - y.s, x.q - y.q}; break;
        case 2: r = {x.s * y.s, x.q * y.q}; break;
        default:
          if (x.q == 0) continue;
          r = {inv(x.s), 1 / x.q};
      }
      r.q.canonicalize();
      REQUIRE(r.s.prec() > 20);
      CHECK(close(as_rational(r.s), r.q, p, r.s.prec()));
    }
  }
}

TEST_CASE("precision bookkeeping") {
  auto P = witt::make_params(3, 1, 20);
  Scaled third = Scaled::inv_p_power(P, 1);
  CHECK(third.den() == 1);
  CHECK(third.prec() == 19);
  Scaled three = Scaled::integer(P, 3);
  Scaled one = third * three;
  CHECK(one.den() == 0);
  CHECK(agree(one, Scaled::one(P), 19));
  CHECK_FALSE(agree(one, Scaled::one(P), 20));
  CHECK_THROWS_AS(third.to_elem(5), PrecisionBudgetExceeded);
  CHECK_THROWS_AS(one.to_elem(20), PrecisionBudgetExceeded);
  CHECK(one.to_elem(19) == Elem(P, 1));
  // 1/9 - 1/9 vanishes but is only known modulo p^(N - 2).
  Scaled ninth = Scaled::inv_p_power(P, 2);
  Scaled z = ninth - ninth;
  CHECK(z.is_zero());
  CHECK(z.prec() == 18);
  CHECK_THROWS_AS(inv(Scaled::zero(P)), witt::ArithmeticError);
}

TEST_CASE("frobenius and powers") {
  auto P = witt::make_params(2, 1, 30);
  Elem z = Elem::generator(P);
  Scaled s(z, 2, 28);
  CHECK(frobenius(s, 2).num() == s.num());
  CHECK(agree(frobenius(s * s), frobenius(s) * frobenius(s), 20));
  CHECK(agree(pow(s, 3), s * s * s, 20));
  CHECK(agree(times_p_power(s, 2), Scaled(z), 28));
}
