#include "doctest.h"

#include <random>
#include <set>

#include "ltaction/trees.hpp"

using namespace ltaction;
using namespace ltaction::trees;
using witt::Elem;

namespace {

Elem random_unit(const witt::ParamsPtr& P, std::mt19937_64& rng) {
  for (;;) {
    std::vector<mpz_class> c;
    for (int i = 0; i < P->degree(); ++i) c.emplace_back(std::to_string(rng() % 1000003));
    Elem e(P, c);
    if (e.is_unit()) return e;
  }
}

TreePtr leaf() { return make_tree({{}, {0}}); }

Scaled S(const Elem& e) { return Scaled(e); }
Scaled sig(const Elem& e) { return Scaled(witt::frobenius(e)); }
Scaled inv_pi(const witt::ParamsPtr& P) { return Scaled::inv_p_power(P, 1); }

}  // namespace

TEST_CASE("weights") {
  CHECK(weight(*leaf(), 2) == 1);
  auto chain3 = make_tree({{0}, {0}}, {make_tree({{0}, {0}}, {leaf()})});
  CHECK(weight(*chain3, 5) == 3);
  auto example_tree = make_tree({{0, 1}, {}}, {make_tree({{0, 1}, {}}, {leaf(), leaf(), leaf()}), leaf(),
                                             make_tree({{0}, {0}}, {leaf()})});
  CHECK(weight(*example_tree, 2) == 6);
  CHECK(vertex_count(*example_tree) == 8);
  CHECK_FALSE(validate(*example_tree, 2));
}

TEST_CASE("validate reports violations") {
  CHECK_FALSE(validate(*leaf(), 3));
  auto childless = make_tree({{0}, {}});
  auto v = validate(*childless, 2);
  REQUIRE(v);
  CHECK(v->path.empty());
  auto flat = make_tree({{0}, {}}, {leaf()});
  v = validate(*flat, 2);
  REQUIRE(v);
  CHECK(v->path == std::vector<int>{0});
  CHECK(validate(*make_tree({{1, 4}, {0}}), 2));
  auto bad_inner = make_tree({{0}, {0}}, {make_tree({{0}, {}})});
  v = validate(*bad_inner, 2);
  REQUIRE(v);
  CHECK(v->path == std::vector<int>{0});
  CHECK(validate(*make_tree({{0}, {0}}, {leaf()}), 2, true));
}

TEST_CASE("census in low weights") {
  for (std::int64_t q : {2, 3, 4, 5, 7}) {
    CHECK(enumerate_trees(q, 1).size() == 1);
    CHECK(enumerate_trees(q, 2).size() == 1);
  }
  CHECK(enumerate_trees(2, 3).size() == 3);
  CHECK(enumerate_trees(3, 3).size() == 1);
  CHECK(enumerate_trees(5, 3).size() == 1);
  CHECK(enumerate_trees(3, 4).size() == 3);
  CHECK(enumerate_trees(2, 4).size() == 10);
  CHECK(*enumerate_trees(2, 1).front() == *leaf());
}

TEST_CASE("enumeration emits valid distinct trees") {
  for (auto [q, wmax] : std::vector<std::pair<int, int>>{{2, 7}, {3, 6}, {4, 6}, {5, 7}}) {
    for (int n = 1; n <= wmax; ++n) {
      for (bool alt : {false, true}) {
        auto list = enumerate_trees(q, n, alt);
        std::set<std::string> seen;
        for (const auto& t : list) {
          CHECK_FALSE(validate(*t, q, alt));
          CHECK(weight(*t, q) == n);
          seen.insert(serialize(*t));
        }
        CHECK(seen.size() == list.size());
      }
    }
  }
}

TEST_CASE("alternating trees with odd residue degree have weight 1 mod p + 1") {
  for (auto [q, p] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {5, 5}, {8, 2}}) {
    for (int n = 1; n <= 12; ++n) {
      if (n % (p + 1) != 1) CHECK(enumerate_trees(q, n, true).empty());
    }
  }
  // q = p: two alternating trees of weight p + 2 below p^2.
  CHECK(enumerate_trees(3, 5, true).size() == 2);
  CHECK(enumerate_trees(5, 7, true).size() == 2);
  // Weight 2p + 3: 2p + 4 of them.
  CHECK(enumerate_trees(5, 13, true).size() == 14);
}

TEST_CASE("index examples") {
  std::mt19937_64 rng(11);
  auto P = witt::make_params(2, 1, 30);
  const int M = 20;
  for (int trial = 0; trial < 5; ++trial) {
    Elem a0 = random_unit(P, rng), a1 = random_unit(P, rng);
    Scaled i0 = inv(S(a0));
    CHECK(agree(index(*leaf(), a0, a1), sig(a0) * i0, M));
    auto w2 = make_tree({{0}, {0}}, {leaf()});
    CHECK(agree(index(*w2, a0, a1), -(sig(a0) * sig(a1) * i0 * i0), M));
    auto example_tree = make_tree({{0, 1}, {}}, {make_tree({{0, 1}, {}}, {leaf(), leaf(), leaf()}), leaf(),
                                               make_tree({{0}, {0}}, {leaf()})});
    Scaled expected = -(pow(sig(a0), 5) * S(a1) * S(a1) * sig(a1) * pow(i0, 8));
    CHECK(agree(index(*example_tree, a0, a1), expected, M));

    auto star3 = make_tree({{0, 1}, {0}}, {leaf(), leaf(), leaf()});
    CHECK(agree(index(*star3, a0, a1), inv_pi(P) * pow(sig(a0) * i0, 4), M));
    CHECK_THROWS_AS(index(*leaf(), Elem(P, 2), a1), witt::ArithmeticError);
  }
}

TEST_CASE("alpha-index examples") {
  std::mt19937_64 rng(12);
  for (int p : {3, 5}) {
    auto P = witt::make_params(p, 1, 30);
    Elem a = random_unit(P, rng);
    Scaled beta = sig(a) * inv(S(a));
    CHECK(agree(index_alt(*leaf(), a), beta, 20));
    auto chain = make_tree({{0}, {0, 1}}, {leaf()});
    CHECK(agree(index_alt(*chain, a), -(inv_pi(P) * beta), 20));
    std::vector<TreePtr> leaves(static_cast<std::size_t>(p + 1), leaf());
    auto star = make_tree({{0, 1}, {0}}, leaves);
    CHECK(agree(index_alt(*star, a), inv_pi(P) * pow(beta, static_cast<unsigned long>(p + 2)), 20));
    CHECK_THROWS_AS(index_alt(*make_tree({{0}, {0}}, {leaf()}), a), std::invalid_argument);
  }
}

TEST_CASE("permuted children give distinct trees with equal index") {
  auto list = enumerate_trees(2, 4);
  std::mt19937_64 rng(3);
  auto P = witt::make_params(2, 1, 30);
  Elem a0 = random_unit(P, rng), a1 = random_unit(P, rng);
  int copies = 0;
  Scaled target = -(pow(sig(a0), 3) * S(a1) * sig(a1) * pow(inv(S(a0)), 5));
  for (const auto& t : list) {
    if (agree(index(*t, a0, a1), target, 20)) ++copies;
  }
  // Three orderings of the (0,1)-rooted tree, plus the (0)-rooted tree over the star.
  CHECK(copies == 4);
}

TEST_CASE("ceiling") {
  CHECK_THROWS_AS(enumerate_trees(2, 9, false, 50), TreeCeilingExceeded);
}

TEST_CASE("render and serialize") {
  auto t = make_tree({{0}, {0}}, {leaf()});
  CHECK(render(*t, 2) == "H=(0) I=(0) wt=2\n  H=() I=(0) wt=1\n");
  CHECK(serialize(*t) == "[[[0],[0]],[[[[],[0]],[]]]]");
}
