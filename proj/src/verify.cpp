#include "ltaction/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ltaction/golden.hpp"
#include "ltaction/stabilizer.hpp"
#include "ltaction/trees.hpp"

namespace ltaction::verify {

using stabilizer::GroupElem;
using witt::Elem;

bool Report::passed() const { return failures() == 0; }

int Report::failures() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"paper-p2",      "paper-p3",     "cross-oracle",
                                                 "witt-low-degree", "trees-census", "axioms"};
  return names;
}

namespace {

using Task = std::function<Check()>;

std::vector<Check> run_tasks(const std::vector<Task>& tasks, unsigned threads) {
  std::vector<Check> out(tasks.size());
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out[i] = tasks[i]();
      } catch (const std::exception& e) {
        out[i] = Check{"task " + std::to_string(i), false, e.what()};
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

// Checks that throw keep their name.
Task named(std::string name, std::function<Check()> body) {
  return [name = std::move(name), body = std::move(body)]() {
    try {
      Check c = body();
      c.name = name;
      return c;
    } catch (const std::exception& e) {
      return Check{name, false, e.what()};
    }
  };
}

Check result(bool ok, std::string detail = {}) { return Check{{}, ok, std::move(detail)}; }

bool eq_mod(const Elem& a, const Elem& b, int M) { return witt::truncate(a - b, M).is_zero(); }

Elem random_elem(const witt::ParamsPtr& P, std::mt19937_64& rng, bool unit) {
  for (;;) {
    std::vector<mpz_class> c;
    for (int i = 0; i < P->degree(); ++i) {
      mpz_class x;
      for (int k = 0; k < 4; ++k) x = (x << 32) + static_cast<unsigned long>(rng() & 0xffffffffULL);
      c.push_back(x);
    }
    Elem e(P, std::move(c));
    if (!unit || e.is_unit()) return e;
  }
}

std::pair<int, int> pf_of(int q) {
  for (int p : {2, 3, 5, 7, 11, 13}) {
    int f = 0;
    long v = 1;
    while (v < q) {
      v *= p;
      ++f;
    }
    if (v == q) return {p, f};
  }
  throw std::invalid_argument("q = " + std::to_string(q) + " is not a supported prime power");
}

std::vector<int> sweep(const Options& o, std::vector<int> defaults) {
  if (o.q) return {*o.q};
  return defaults;
}

std::string first_mismatch(const stabilizer::ActionResult& a, const stabilizer::ActionResult& b, int M) {
  for (int n = 0; n < std::min(a.series.wmax(), b.series.wmax()); ++n) {
    if (!eq_mod(a.coefficient(n), b.coefficient(n), M)) return "first mismatch at u1^" + std::to_string(n);
  }
  return {};
}

std::vector<Task> golden_tasks(const golden::Series& g) {
  auto shared = std::make_shared<golden::Series>(g);
  auto computed = std::make_shared<std::vector<Elem>>();
  auto compute = [shared, computed] {
    auto elem = stabilizer::make_group_elem(witt::parse_elem(shared->alpha0, shared->params),
                                            witt::parse_elem(shared->alpha1, shared->params));
    *computed = stabilizer::act_u1(elem, shared->W, stabilizer::MethodChoice::Auto, shared->M).coefficients();
  };
  // One computation, then one check per listed coefficient.
  std::vector<Task> tasks;
  tasks.push_back([shared, computed, compute]() {
    compute();
    std::vector<bool> listed(static_cast<std::size_t>(shared->W), false);
    for (const auto& c : shared->coefficients) listed[static_cast<std::size_t>(c.n)] = true;
    int ok = 0;
    std::ostringstream bad;
    for (const auto& c : shared->coefficients) {
      if (eq_mod((*computed)[static_cast<std::size_t>(c.n)], c.value, shared->M)) {
        ++ok;
      } else {
        bad << " u1^" << c.n;
      }
    }
    int stray = 0;
    for (int n = 0; n < shared->W; ++n) {
      if (!listed[static_cast<std::size_t>(n)] && !(*computed)[static_cast<std::size_t>(n)].is_zero()) ++stray;
    }
    std::ostringstream d;
    d << ok << "/" << shared->coefficients.size() << " coefficients matched mod p^" << shared->M;
    if (!bad.str().empty()) d << "; mismatched:" << bad.str();
    d << "; " << stray << " unexpected nonzero coefficients below u1^" << shared->W;
    return Check{shared->name, ok == static_cast<int>(shared->coefficients.size()) && stray == 0, d.str()};
  });
  return tasks;
}

std::vector<Task> cross_oracle_tasks(const Options& o) {
  std::vector<Task> tasks;
  const int M = 20, W = 40;
  std::mt19937_64 rng(o.seed);
  for (int q : sweep(o, {2, 3, 4, 5})) {
    const auto [p, f] = pf_of(q);
    auto P = stabilizer::working_params(p, f, M, W);
    for (int k = 0; k < 5; ++k) {
      auto g = stabilizer::make_group_elem(random_elem(P, rng, true), random_elem(P, rng, false));
      tasks.push_back(named("q=" + std::to_string(q) + " element " + std::to_string(k + 1), [g, W, M] {
        auto a = stabilizer::act_u1_recursive(g, W, M);
        auto b = stabilizer::act_u1_trees(g, W, M);
        auto c = stabilizer::act_u1_functional(g, W, M);
        std::string ab = first_mismatch(a, b, M), ac = first_mismatch(a, c, M);
        if (ab.empty() && ac.empty()) return result(true, "recursive = trees = functional mod (p^20, u1^40)");
        return result(false, "trees: " + (ab.empty() ? "ok" : ab) + ", functional: " + (ac.empty() ? "ok" : ac));
      }));
    }
  }
  return tasks;
}

std::vector<Task> witt_low_degree_tasks(const Options& o) {
  std::vector<Task> tasks;
  const int M = 20, W = 40;
  std::mt19937_64 rng(o.seed);
  for (int p : sweep(o, {2, 3, 5})) {
    auto P = stabilizer::working_params(p, 1, M, W);
    for (int k = 0; k < 3; ++k) {
      const Elem a = random_elem(P, rng, true);
      const std::string tag = "p=" + std::to_string(p) + " alpha " + std::to_string(k + 1) + ": ";
      auto general = std::make_shared<stabilizer::ActionResult>(
          stabilizer::act_u1_recursive(stabilizer::make_group_elem(a, Elem(P)), W, M));
      tasks.push_back(named(tag + "degree concentration", [general, p] {
        for (int n = 0; n < general->series.wmax(); ++n) {
          if (n % (p + 1) != 1 && !general->coefficient(n).is_zero()) {
            return result(false, "nonzero coefficient at u1^" + std::to_string(n));
          }
        }
        return result(true, "gamma_n = 0 for n != 1 mod p+1 below u1^40");
      }));
      tasks.push_back(named(tag + "closed low-degree terms", [general, a, M] {
        std::ostringstream d;
        bool ok = true;
        for (const auto& t : stabilizer::low_degree_closed(a)) {
          if (!t.valid) continue;
          const bool hit = agree(t.value, general->series[t.degree], M);
          ok = ok && hit;
          d << "u1^" << t.degree << (hit ? " ok " : " MISMATCH ");
        }
        return result(ok, d.str());
      }));
      tasks.push_back(named(tag + "delta recursion through u1^(p^2)", [general, a, p, M] {
        auto D = stabilizer::witt_act_u1_recursion(a, M);
        for (int n = 0; n <= p * p; ++n) {
          if (!eq_mod(D.coefficient(n), general->coefficient(n), M)) {
            return result(false, "mismatch at u1^" + std::to_string(n));
          }
        }
        return result(true);
      }));
      tasks.push_back(named(tag + "tau through u1^(2p+2)", [a, p, W, M] {
        const auto& Pa = a.params();
        auto T = stabilizer::witt_act_u(a, W, M);
        const Scaled A(a), one = Scaled::one(Pa);
        const Scaled b1 = pow(frobenius(A) * inv(A), static_cast<unsigned long>(p + 1));
        bool ok = agree(T.series[0], A, M) && agree(T.series[p + 1], A * Scaled::inv_p_power(Pa, 1) * (one - b1), M);
        std::string d = "tau_0, tau_1";
        if (2 * p + 2 < std::min(3 * p + 3, p * p)) {
          ok = ok && agree(T.series[2 * p + 2],
                           A * Scaled::integer(Pa, p) * Scaled::inv_p_power(Pa, 2) * b1 * (one - b1), M);
          d += ", tau_2";
        }
        return result(ok, d);
      }));
    }
  }
  return tasks;
}

std::vector<Task> trees_census_tasks(const Options& o) {
  std::vector<Task> tasks;
  for (int q : sweep(o, {2, 3, 5})) {
    // Appendix census; weight 4 at q = 2 is the brute-force count.
    const std::vector<std::size_t> expected = {1, 1, q == 2 ? 3U : 1U, q == 2 ? 10U : q == 3 ? 3U : 1U};
    for (int w = 1; w <= 4; ++w) {
      tasks.push_back(named("q=" + std::to_string(q) + " weight " + std::to_string(w), [q, w, expected] {
        const auto ts = trees::enumerate_trees(q, w);
        const std::size_t want = expected[static_cast<std::size_t>(w - 1)];
        return result(ts.size() == want, std::to_string(ts.size()) + " trees, expected " + std::to_string(want));
      }));
    }
    tasks.push_back(named("q=" + std::to_string(q) + " summed index vs action", [q, seed = o.seed] {
      const auto [p, f] = pf_of(q);
      const int M = 20, W = 8;
      auto P = stabilizer::working_params(p, f, M, W);
      std::mt19937_64 rng(seed + static_cast<unsigned long>(q));
      auto g = stabilizer::make_group_elem(random_elem(P, rng, true), random_elem(P, rng, false));
      auto r = stabilizer::act_u1_recursive(g, W, M);
      const int top = q == 2 ? 7 : q == 3 ? 6 : 5;
      for (int n = 1; n <= top; ++n) {
        Scaled sum = Scaled::zero(P);
        for (const auto& t : trees::enumerate_trees(q, n)) sum += trees::index(*t, g.alpha0, g.alpha1);
        if (!eq_mod(sum.to_elem(M), r.coefficient(n), M)) return result(false, "mismatch at weight " + std::to_string(n));
      }
      return result(true, "weights 1.." + std::to_string(top));
    }));
  }
  return tasks;
}

std::vector<Task> axiom_tasks(const Options& o) {
  std::vector<Task> tasks;
  const int M = 16, W = 20;
  std::mt19937_64 rng(o.seed);
  for (int q : sweep(o, {2, 3})) {
    const auto [p, f] = pf_of(q);
    auto P = stabilizer::working_params(p, f, M, W);
    const std::string tag = "q=" + std::to_string(q) + ": ";
    tasks.push_back(named(tag + "identity acts trivially", [P, W, M, f] {
      auto e = stabilizer::identity(P);
      auto G = stabilizer::act_u1_recursive(e, W, M);
      for (int n = 0; n < W; ++n) {
        if (!eq_mod(G.coefficient(n), Elem(P, n == 1 ? 1 : 0), M)) return result(false, "u1 not fixed");
      }
      if (f % 2 == 1) {
        auto T = stabilizer::act_u(e, W, M);
        for (int n = 0; n < W; ++n) {
          if (!eq_mod(T.coefficient(n), Elem(P, n == 0 ? 1 : 0), M)) return result(false, "u not fixed");
        }
      }
      return result(true);
    }));
    for (bool witt_only : {true, false}) {
      std::vector<std::pair<GroupElem, GroupElem>> pairs;
      for (int k = 0; k < 20; ++k) {
        auto a1 = witt_only ? Elem(P) : random_elem(P, rng, false);
        auto b1 = witt_only ? Elem(P) : random_elem(P, rng, false);
        pairs.emplace_back(stabilizer::make_group_elem(random_elem(P, rng, true), a1),
                           stabilizer::make_group_elem(random_elem(P, rng, true), b1));
      }
      const std::string which = witt_only ? "Witt-subgroup pairs" : "general pairs";
      tasks.push_back(named(tag + "composition Gamma_gh = Gamma_h(Gamma_g), 20 " + which, [pairs, W, M] {
        int ok = 0;
        for (const auto& [g, h] : pairs) {
          auto Gg = stabilizer::act_u1_recursive(g, W).series, Gh = stabilizer::act_u1_recursive(h, W).series;
          auto Ggh = stabilizer::act_u1_recursive(stabilizer::group_mul(g, h), W).series;
          ok += agree(series::compose(Gh, Gg), Ggh, M) ? 1 : 0;
        }
        return result(ok == static_cast<int>(pairs.size()), std::to_string(ok) + "/20 pairs");
      }));
      tasks.push_back(named(tag + "gamma_0 = 0, theta_0 = alpha0, integrality, 20 " + which, [pairs, W, M, f] {
        int ok = 0;
        std::string first_error;
        for (const auto& [g, h] : pairs) {
          try {
            auto G = stabilizer::act_u1_recursive(g, W, M);
            bool good = G.coefficient(0).is_zero();
            if (f % 2 == 1) good = good && eq_mod(stabilizer::act_u(g, W, M).coefficient(0), g.alpha0, M);
            ok += good ? 1 : 0;
          } catch (const PrecisionBudgetExceeded& e) {
            if (first_error.empty()) first_error = e.what();
          }
        }
        std::string d = std::to_string(ok) + "/20 elements";
        if (!first_error.empty()) d += "; " + first_error;
        return result(ok == static_cast<int>(pairs.size()), d);
      }));
    }
  }
  return tasks;
}

}  // namespace

Report run_suite(const std::string& name, const Options& options) {
  std::vector<Task> tasks;
  if (name == "paper-p2") {
    tasks = golden_tasks(golden::paper_p2());
  } else if (name == "paper-p3") {
    tasks = golden_tasks(golden::paper_p3());
  } else if (name == "cross-oracle") {
    tasks = cross_oracle_tasks(options);
  } else if (name == "witt-low-degree") {
    tasks = witt_low_degree_tasks(options);
  } else if (name == "trees-census") {
    tasks = trees_census_tasks(options);
  } else if (name == "axioms") {
    tasks = axiom_tasks(options);
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  return Report{name, run_tasks(tasks, options.threads)};
}

}  // namespace ltaction::verify
