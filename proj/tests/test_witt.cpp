#include "doctest.h"

#include <random>

#include "ltaction/witt.hpp"

using namespace ltaction::witt;

namespace {

Elem random_elem(const ParamsPtr& P, std::mt19937_64& rng) {
  std::vector<mpz_class> c;
  for (int i = 0; i < P->degree(); ++i) {
    mpz_class x = 0;
    for (int k = 0; k < 4; ++k) x = (x << 64) + mpz_class(std::to_string(rng()));
    c.push_back(x);
  }
  return Elem(P, c);
}

// Order of x in F_p[x]/(g) by repeated multiplication; g lowest degree first, monic.
long brute_order(const std::vector<int>& g, int p) {
  const std::size_t h = g.size() - 1;
  std::vector<long> cur(h, 0), one(h, 0);
  one[0] = 1;
  cur = one;
  for (long k = 1; k < 100000; ++k) {
    std::vector<long> next(h + 1, 0);
    for (std::size_t i = 0; i < h; ++i) next[i + 1] = cur[i];
    for (std::size_t i = 0; i < h; ++i) next[i] = ((next[i] - next[h] * g[i]) % p + p) % p;
    next.resize(h);
    cur = next;
    if (cur == one) return k;
  }
  return -1;
}

}  // namespace

TEST_CASE("make_params examples") {
  auto P2 = make_params(2, 1, 8);
  CHECK(P2->residue_modulus() == std::vector<int>{1, 1, 1});
  Elem t = Elem::generator(P2);
  CHECK(pow(t, std::uint64_t{3}) == Elem(P2, 1));

  auto P3 = make_params(3, 1, 8);
  Elem t3 = Elem::generator(P3);
  CHECK(pow(t3, std::uint64_t{8}) == Elem(P3, 1));
  CHECK(pow(t3, std::uint64_t{4}) != Elem(P3, 1));

  auto P5 = make_params(5, 1, 4);
  CHECK(pow(Elem::generator(P5), std::uint64_t{24}) == Elem(P5, 1));

  CHECK_THROWS_AS(make_params(4, 1, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_params(2, 1, 0), std::invalid_argument);
}

TEST_CASE("residue polynomial generates the multiplicative group") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}, {5, 2}, {7, 1}, {7, 2}, {11, 1}, {2, 3}, {13, 1}}) {
    auto P = make_params(p, f, 6);
    long q2 = P->q() * P->q();
    CHECK(brute_order(P->residue_modulus(), p) == q2 - 1);
    CHECK(pow(Elem::generator(P), static_cast<std::uint64_t>(q2 - 1)) == Elem(P, 1));
    for (std::size_t i = 0; i + 1 < P->modulus().size(); ++i) {
      mpz_class r = P->modulus()[i] % p;
      CHECK(r == P->residue_modulus()[i]);
    }
  }
  CHECK(make_params(2, 2, 4)->conway());
  CHECK_FALSE(make_params(11, 1, 4)->conway());
}

TEST_CASE("arithmetic examples at p = 2") {
  auto P = make_params(2, 1, 10);
  Elem a = parse_elem("1+2*z", P);
  CHECK(a + Elem(P) == a);
  CHECK(a * (-a) == -(a * a));
  CHECK(a * parse_elem("1+2*z^2", P) == Elem(P, 3));
  CHECK(norm(a) == Elem(P, 3));
  CHECK(frobenius(Elem::generator(P)) == parse_elem("-1-z", P));
  CHECK(frobenius(a) * inv(a) == Elem(P, -1));
  CHECK(inv(Elem(P, 1)) == Elem(P, 1));
  CHECK(valuation(Elem(P, 2)) == 1);
  CHECK(valuation(a) == 0);
  CHECK(valuation(Elem(P)) == kInfiniteValuation);
  CHECK_THROWS_AS(inv(Elem(P, 2)), ArithmeticError);
}

TEST_CASE("ring and Frobenius properties") {
  std::mt19937_64 rng(7);
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {5, 1}, {3, 2}}) {
    auto P = make_params(p, f, 20);
    for (int trial = 0; trial < 20; ++trial) {
      Elem a = random_elem(P, rng), b = random_elem(P, rng), c = random_elem(P, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(frobenius(a * b) == frobenius(a) * frobenius(b));
      CHECK(frobenius(a + b) == frobenius(a) + frobenius(b));
      CHECK(frobenius(frobenius(a)) == a);
      CHECK(frobenius(norm(a)) == norm(a));
      if (a.is_unit()) CHECK(valuation(a * inv(a) - Elem(P, 1)) == kInfiniteValuation);
      CHECK(parse_elem(format_elem(a), P) == a);
    }
    CHECK(frobenius(Elem(P, 17)) == Elem(P, 17));
  }
}

TEST_CASE("norm of the generator has order dividing q - 1") {
  auto P = make_params(3, 1, 10);
  Elem t = Elem::generator(P);
  CHECK(norm(t) == pow(t, std::uint64_t{4}));
  CHECK(pow(norm(t), std::uint64_t{2}) == Elem(P, 1));
}

TEST_CASE("parse and format") {
  auto P = make_params(3, 1, 8);
  CHECK(parse_elem("0", P).is_zero());
  CHECK(format_elem(Elem(P)) == "0");
  Elem i = parse_elem("z^2", P);
  CHECK(i * i == Elem(P, -1));
  CHECK(parse_elem("-4-3*z^2", P) == Elem(P, -4) - Elem(P, 3) * i);
  CHECK(parse_elem("(1 + z) * (1 - z)", P) == Elem(P, 1) - i);
  CHECK(parse_elem("2*3^2", P) == Elem(P, 18));
  CHECK(format_elem(parse_elem("1+2*z", P)) == "1 + 2*z");
  CHECK(format_elem(Elem(P, -1)) == "6560");
  CHECK_THROWS_AS(parse_elem("1+", P), ParseError);
  CHECK_THROWS_AS(parse_elem("x", P), ParseError);
  CHECK_THROWS_AS(parse_elem("(1", P), ParseError);
  CHECK_THROWS_AS(parse_elem("z^", P), ParseError);
}

TEST_CASE("mismatched rings are rejected") {
  auto A = make_params(2, 1, 8);
  auto B = make_params(2, 1, 9);
  CHECK_THROWS_AS(Elem(A, 1) + Elem(B, 1), std::invalid_argument);
}

TEST_CASE("balanced residues") {
  auto P = make_params(3, 1, 10);
  Elem a = parse_elem("-4 + 5*z", P);
  auto c = balanced_coeffs(a, 2);
  CHECK(c[0] == -4);
  CHECK(c[1] == -4);
  CHECK(format_balanced(a, 2) == "-4 - 4*z");
  CHECK(format_balanced(a, 10) == "-4 + 5*z");
  CHECK(format_balanced(Elem(P, 81), 4) == "0");
  CHECK_THROWS_AS(balanced_coeffs(a, 11), std::invalid_argument);
}
