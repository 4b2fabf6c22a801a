#include "doctest.h"

#include <random>

#include "ltaction/series.hpp"

using namespace ltaction;
using namespace ltaction::series;
using witt::Elem;

namespace {

std::int64_t qpow(std::int64_t q, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= q;
  return r;
}

ScaledSeries mono(const witt::ParamsPtr& P, int w, std::int64_t deg, int den = 0) {
  return ScaledSeries::monomial(P, w, deg, Scaled::inv_p_power(P, den));
}

// Sum of u1^QI / pi^den(|I|) over strictly increasing parity-alternating I drawn
// from {lo, ..., hi}, with the requested first-entry and length parities.
template <class Den>
ScaledSeries subset_sum(const witt::ParamsPtr& P, int w, int lo, int hi, int first_parity, int length_parity,
                        Den den) {
  ScaledSeries s(P, w);
  const int span = hi - lo + 1;
  for (unsigned mask = 0; mask < (1U << span); ++mask) {
    std::vector<int> I;
    for (int b = 0; b < span; ++b) {
      if (mask & (1U << b)) I.push_back(lo + b);
    }
    if (static_cast<int>(I.size() % 2) != length_parity) continue;
    if (!I.empty() && I[0] % 2 != first_parity) continue;
    bool ok = true;
    for (std::size_t j = 1; j < I.size(); ++j) ok = ok && (I[j] - I[j - 1]) % 2 == 1;
    if (!ok) continue;
    std::int64_t e = 0;
    for (int i : I) e += qpow(P->q(), i);
    s += mono(P, w, std::min<std::int64_t>(e, w), den(static_cast<int>(I.size())));
  }
  return s;
}

ScaledSeries random_series(const witt::ParamsPtr& P, int w, std::mt19937_64& rng, int max_den = 2) {
  ScaledSeries s(P, w);
  for (int n = 0; n < w; ++n) {
    std::vector<mpz_class> c;
    for (int i = 0; i < P->degree(); ++i) c.emplace_back(std::to_string(rng() % 10007));
    s[n] = Scaled(Elem(P, c)) * Scaled::inv_p_power(P, static_cast<int>(rng() % static_cast<unsigned>(max_den + 1)));
  }
  return s;
}

}  // namespace

TEST_CASE("ring operations") {
  auto P = witt::make_params(3, 1, 30);
  const int w = 8;
  std::mt19937_64 rng(1);
  auto s = random_series(P, w, rng);
  auto one = ScaledSeries::one(P, w);
  auto u = mono(P, w, 1);
  CHECK(agree(s + ScaledSeries(P, w), s, 25));
  CHECK(agree(s * one, s, 25));
  CHECK(agree(u * u, mono(P, w, 2), 30));
  CHECK(agree(compose(s, u), s, 25));
  CHECK(agree(compose(u, s - ScaledSeries::monomial(P, w, 0, s[0])), s - ScaledSeries::monomial(P, w, 0, s[0]), 25));
  auto u2 = u * u;
  CHECK(agree(compose(u2, u + u2), u2 + scale(mono(P, w, 3), Scaled::integer(P, 2)) + mono(P, w, 4), 30));
  CHECK_THROWS_AS(compose(u, one), std::invalid_argument);
  CHECK(agree(invert_unit(one), one, 30));
  CHECK(agree(invert_unit(one + u) * (one + u), one, 30));
  CHECK_THROWS_AS(invert_unit(u), witt::ArithmeticError);
  CHECK_THROWS_AS(invert_unit(scale(one, Scaled::integer(P, 3))), witt::ArithmeticError);
}

TEST_CASE("associativity and distributivity") {
  std::mt19937_64 rng(2);
  for (int p : {2, 5}) {
    auto P = witt::make_params(p, 1, 40);
    const int w = 10;
    for (int trial = 0; trial < 5; ++trial) {
      auto a = random_series(P, w, rng), b = random_series(P, w, rng), c = random_series(P, w, rng);
      CHECK(agree((a * b) * c, a * (b * c), 25));
      CHECK(agree(a * (b + c), a * b + a * c, 25));
      // Integral series for composition, where denominators would compound.
      a = random_series(P, w, rng, 0);
      b = random_series(P, w, rng, 0);
      c = random_series(P, w, rng, 0);
      b[0] = Scaled::zero(P);
      c[0] = Scaled::zero(P);
      CHECK(agree(compose(compose(a, b), c), compose(a, compose(b, c)), 40));
      CHECK(agree(compose(a + b, c), compose(a, c) + compose(b, c), 40));
      CHECK(agree(compose(a * b, c), compose(a, c) * compose(b, c), 40));
    }
  }
}

TEST_CASE("displayed quotient below u1^(q^5)") {
  for (int q : {2, 3}) {
    auto P = witt::make_params(q, 1, 30);
    const int w = static_cast<int>(qpow(q, 5));
    auto Q = [&](std::initializer_list<int> I) {
      std::int64_t e = 0;
      for (int i : I) e += qpow(q, i);
      return e;
    };
    auto num = mono(P, w, Q({0, 1, 2, 3, 4}), 2) + mono(P, w, Q({0, 1, 2}), 1) + mono(P, w, Q({0, 1, 4}), 1) +
               mono(P, w, Q({0, 3, 4}), 1) + mono(P, w, Q({2, 3, 4}), 1) + mono(P, w, Q({0})) + mono(P, w, Q({2})) +
               mono(P, w, Q({4}));
    auto den = mono(P, w, Q({0, 1, 2, 3}), 2) + mono(P, w, Q({0, 1}), 1) + mono(P, w, Q({0, 3}), 1) +
               mono(P, w, Q({2, 3}), 1) + ScaledSeries::one(P, w);
    CHECK(agree(f1_series(P, w), num, 25));
    CHECK(agree(f_series(P, w), den, 25));
    if (q == 2) CHECK(agree(w1_series(P, w), num * invert_unit(den), 20));
  }
}

TEST_CASE("closed formula, m-sequence and matrix product agree") {
  for (int q : {2, 3, 4, 5}) {
    auto P = witt::make_params(static_cast<int>(q == 4 ? 2 : q), q == 4 ? 2 : 1, 60);
    const int w = static_cast<int>(std::min<std::int64_t>(qpow(q, 5), 200));
    const auto f = f_series(P, w), f1 = f1_series(P, w);
    const auto from_m = limits_from_m_sequence(P, w);
    const auto from_T = limits_from_matrix_product(P, w);
    CHECK(agree(from_m.f, f, 30));
    CHECK(agree(from_m.f1, f1, 30));
    CHECK(agree(from_T.f, f, 30));
    CHECK(agree(from_T.f1, f1, 30));

    int log_q = 0;
    while (qpow(q, log_q + 1) <= w) ++log_q;
    CHECK(f.max_den() <= log_q + 1);
    CHECK(f1.max_den() <= log_q + 1);
    CHECK(agree(f[0], Scaled::one(P), 60));
  }
}

TEST_CASE("m-sequence initial terms") {
  auto P = witt::make_params(2, 1, 40);
  const int w = 16;
  auto m = m_sequence(P, 6, w);
  CHECK(agree(m[0], ScaledSeries::one(P, w), 40));
  CHECK(agree(m[1], mono(P, w, 1, 1), 39));
  // m_2 = u1^3 / 4 + 1 / 2.
  CHECK(agree(m[2], mono(P, w, 3, 2) + mono(P, w, 0, 1), 38));
  // pi^2 m_4 matches f below u1^(q^3).
  auto M = normalized_m_sequence(P, 6, w);
  CHECK(agree(M[4].truncated(8), f_series(P, 8), 30));
}

TEST_CASE("partial products follow the sequence census") {
  for (int q : {2, 3}) {
    auto P = witt::make_params(q, 1, 40);
    const int w = 120;
    for (int n = 1; n <= 3; ++n) {
      auto T = matrix_partial_product(P, n, w);
      auto half = [](int len) { return len / 2; };
      auto plus_half = [](int len) { return (len + 1) / 2; };
      CHECK(agree(T.a, subset_sum(P, w, 1, 2 * n, 1, 0, half), 30));
      CHECK(agree(T.b, subset_sum(P, w, 1, 2 * n, 0, 1, half), 30));
      CHECK(agree(T.c, subset_sum(P, w, 1, 2 * n - 1, 1, 1, plus_half), 30));
      CHECK(agree(T.d, subset_sum(P, w, 1, 2 * n - 1, 0, 0, half), 30));
      CHECK(agree(T.d[0], Scaled::one(P), 40));
      // a u1 + b approximates f1 below u1^(q^(2n+1)), c u1 + d approximates f below u1^(q^(2n)).
      auto u = mono(P, w, 1);
      const int w1 = static_cast<int>(std::min<std::int64_t>(qpow(q, 2 * n + 1), w));
      const int w0 = static_cast<int>(std::min<std::int64_t>(qpow(q, 2 * n), w));
      CHECK(agree((T.a * u + T.b).truncated(w1), f1_series(P, w1), 30));
      CHECK(agree((T.c * u + T.d).truncated(w0), f_series(P, w0), 30));
    }
    CHECK(agree(matrix_partial_product(P, 1, 20).a, transfer_matrix(P, 1, 20).a, 39));
  }
}

TEST_CASE("F_n converges to w1") {
  for (int q : {2, 3}) {
    // w1 is far from integral: denominators reach p^32 below degree 100 at q = 2.
    auto P = witt::make_params(q, 1, 90);
    const int w = 100;
    const auto w1 = w1_series(P, w);
    int n = 0;
    while (qpow(q, 2 * n + 1) < w) ++n;
    CHECK(agree(F_term(P, n, w), w1, 25));
    CHECK(agree(F_term(P, 0, w), mono(P, w, 1), 80));
    CHECK(agree(w1.truncated(2), mono(P, 2, 1), 80));
  }
}
