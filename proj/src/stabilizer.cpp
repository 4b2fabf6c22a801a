#include "ltaction/stabilizer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "ltaction/lambda.hpp"
#include "ltaction/trees.hpp"

namespace ltaction::stabilizer {

using lambda::Parity;
using series::capped_power;
using witt::Elem;

namespace {

bool exact_zero(const Scaled& x) { return x.is_zero() && x.prec() >= x.params()->N(); }

int resolve_M(const witt::ParamsPtr& P, int W, int M) {
  if (W < 1) throw std::invalid_argument("truncation W must be at least 1");
  if (M < 0) M = P->N() - W;
  if (M < 1 || M > P->N()) {
    throw std::invalid_argument("output precision p^" + std::to_string(M) + " is not available in a ring known modulo p^" +
                                std::to_string(P->N()));
  }
  return M;
}

ActionResult finish(ScaledSeries s, Method method, Target target, int M, int W) {
  ActionResult r{std::move(s), method, target, M, W};
  for (int n = 0; n < r.series.wmax(); ++n) r.series[n].to_elem(M);
  return r;
}

void require_odd_f(const witt::ParamsPtr& P, const char* what) {
  if (P->f() % 2 == 0) {
    throw UnsupportedResidueDegree(std::string(what) + " needs an odd residue degree f; got f = " + std::to_string(P->f()));
  }
}

void require_q_equals_p(const witt::ParamsPtr& P, const char* what) {
  if (P->f() != 1) throw UnsupportedResidueDegree(std::string(what) + " needs q = p (f = 1)");
}

// Coefficients [u1^n] G^L for L in a set closed under L -> (L/2, L - L/2),
// filled one degree at a time as the coefficients of G = P_1 become known.
class PowerTable {
 public:
  PowerTable(const witt::ParamsPtr& P, int W, const std::vector<std::int64_t>& exponents)
      : zero_(Scaled::zero(P)), one_(Scaled::one(P)) {
    std::set<int> closure{1};
    std::vector<int> todo;
    for (auto e : exponents) {
      if (e >= 1 && e < W && closure.insert(static_cast<int>(e)).second) todo.push_back(static_cast<int>(e));
    }
    while (!todo.empty()) {
      const int L = todo.back();
      todo.pop_back();
      for (int part : {L / 2, L - L / 2}) {
        if (part >= 1 && closure.insert(part).second) todo.push_back(part);
      }
    }
    for (int L : closure) {
      index_[L] = static_cast<int>(order_.size());
      order_.push_back(L);
    }
    rows_.assign(order_.size(), std::vector<Scaled>(static_cast<std::size_t>(W), zero_));
  }

  void set_base(int n, const Scaled& v) { rows_[0][static_cast<std::size_t>(n)] = v; }

  // Fills degree n of every power L >= 2 from lower degrees.
  void advance(int n) {
    for (std::size_t k = 1; k < order_.size(); ++k) {
      const int L = order_[k];
      if (n < L) continue;
      const int a = L / 2, b = L - a;
      const auto& ra = row(a);
      const auto& rb = row(b);
      Scaled acc = zero_;
      for (int j = a; j <= n - b; ++j) {
        const Scaled& x = ra[static_cast<std::size_t>(j)];
        const Scaled& y = rb[static_cast<std::size_t>(n - j)];
        if (exact_zero(x) || exact_zero(y)) continue;
        acc += x * y;
      }
      rows_[k][static_cast<std::size_t>(n)] = std::move(acc);
    }
  }

  const Scaled& at(int L, int n) const {
    if (L == 0) return n == 0 ? one_ : zero_;
    if (n < L) return zero_;
    return row(L)[static_cast<std::size_t>(n)];
  }

 private:
  const std::vector<Scaled>& row(int L) const { return rows_[static_cast<std::size_t>(index_.at(L))]; }

  Scaled zero_, one_;
  std::vector<int> order_;
  std::map<int, int> index_;
  std::vector<std::vector<Scaled>> rows_;
};

struct LabelTerm {
  int qh;
  int qi;
  Scaled c;
};

// c(H, I) for all labels with QH + QI < W, except ((), ()).
std::vector<LabelTerm> label_terms(const witt::ParamsPtr& P, const Scaled& a0, const Scaled& a1, int W, bool alternating) {
  const auto values = lambda::lambda_values(P->q(), W - 1);
  std::vector<LabelTerm> out;
  for (auto qi : values) {
    for (const auto& I : lambda::enumerate_lambda(P->q(), qi)) {
      for (auto qh : values) {
        if (qh + qi >= W) break;
        for (const auto& H : lambda::enumerate_lambda(P->q(), qh)) {
          if (H.empty() && I.empty()) continue;
          if (alternating && H.size() % 2 == I.size() % 2) continue;
          Scaled c = trees::label_coefficient(H.size(), I.size(), a0, a1);
          if (exact_zero(c)) continue;
          out.push_back({static_cast<int>(qh), static_cast<int>(qi), std::move(c)});
        }
      }
    }
  }
  return out;
}

std::vector<std::int64_t> qh_values(const std::vector<LabelTerm>& terms) {
  std::set<std::int64_t> s;
  for (const auto& t : terms) s.insert(t.qh);
  return {s.begin(), s.end()};
}

// Gamma_n = (1/a0) sum over labels of c(H, I) [u1^(n - QI)] Gamma^QH, where the
// label ((0), ()) with its single child of weight n is left out.
std::vector<Scaled> tree_generating_function(const witt::ParamsPtr& P, const Scaled& a0, const Scaled& a1, int W,
                                             bool alternating) {
  const auto terms = label_terms(P, a0, a1, W, alternating);
  const Scaled inv_a0 = inv(a0);
  PowerTable T(P, W, qh_values(terms));
  std::vector<Scaled> z(static_cast<std::size_t>(W), Scaled::zero(P));
  for (int n = 1; n < W; ++n) {
    T.advance(n);
    Scaled acc = Scaled::zero(P);
    for (const auto& t : terms) {
      if (t.qi > n) continue;
      const Scaled& pw = T.at(t.qh, n - t.qi);
      if (exact_zero(pw)) continue;
      acc += t.c * pw;
    }
    z[static_cast<std::size_t>(n)] = acc * inv_a0;
    T.set_base(n, z[static_cast<std::size_t>(n)]);
  }
  return z;
}

ScaledSeries to_series(const witt::ParamsPtr& P, const std::vector<Scaled>& v) {
  ScaledSeries s(P, static_cast<int>(v.size()));
  for (int n = 0; n < s.wmax(); ++n) s[n] = v[static_cast<std::size_t>(n)];
  return s;
}

// y_k = [u1^k] (f(Gamma) - 1) with f the closed-form series.
std::vector<Scaled> f_of_gamma_minus_one(const witt::ParamsPtr& P, const std::vector<Scaled>& gamma, int W) {
  const auto f = series::f_series(P, W);
  std::vector<std::int64_t> exps;
  for (int m = 1; m < W; ++m) {
    if (!exact_zero(f[m])) exps.push_back(m);
  }
  PowerTable T(P, W, exps);
  std::vector<Scaled> y(static_cast<std::size_t>(W), Scaled::zero(P));
  for (int k = 1; k < W; ++k) {
    T.set_base(k - 1, gamma[static_cast<std::size_t>(k - 1)]);
    T.set_base(k, gamma[static_cast<std::size_t>(k)]);
    T.advance(k);
    for (auto m : exps) {
      if (m > k) break;
      const Scaled& pw = T.at(static_cast<int>(m), k);
      if (!exact_zero(pw)) y[static_cast<std::size_t>(k)] += f[static_cast<int>(m)] * pw;
    }
  }
  return y;
}

}  // namespace

GroupElem make_group_elem(Elem alpha0, Elem alpha1) {
  if (!alpha0.params()->same_ring(*alpha1.params())) throw std::invalid_argument("alpha0 and alpha1 lie in different rings");
  if (!alpha0.is_unit()) throw witt::ArithmeticError("alpha0 must be a unit");
  return GroupElem{std::move(alpha0), std::move(alpha1)};
}

GroupElem identity(const witt::ParamsPtr& params) { return GroupElem{Elem(params, 1), Elem(params)}; }

GroupElem group_mul(const GroupElem& g, const GroupElem& h) {
  if (!g.params()->same_ring(*h.params())) throw std::invalid_argument("group elements lie in different rings");
  const long p = g.params()->p();
  Elem c0 = g.alpha0 * h.alpha0 + (g.alpha1 * witt::frobenius(h.alpha1)) * p;
  Elem c1 = g.alpha0 * h.alpha1 + g.alpha1 * witt::frobenius(h.alpha0);
  return GroupElem{std::move(c0), std::move(c1)};
}

witt::ParamsPtr working_params(int p, int f, int M, int W) {
  if (M < 1 || W < 1) throw std::invalid_argument("M and W must be positive");
  return witt::make_params(p, f, M + W);
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Recursive: return "recursive";
    case Method::Trees: return "trees";
    case Method::Functional: return "functional";
    case Method::WittAlternating: return "witt-alt";
    case Method::WittRecursion: return "witt-recursion";
    case Method::LowDegree: return "low-degree";
    case Method::Closed: return "closed";
  }
  return "unknown";
}

std::string to_string(Target t) { return t == Target::U1 ? "u1" : "u"; }

Elem ActionResult::coefficient(int n) const { return series[n].to_elem(M); }

std::vector<Elem> ActionResult::coefficients() const {
  std::vector<Elem> out;
  for (int n = 0; n < series.wmax(); ++n) out.push_back(coefficient(n));
  return out;
}

ActionResult act_u1_recursive(const GroupElem& g, int W, int M) {
  const auto& P = g.params();
  M = resolve_M(P, W, M);
  const Scaled a0(g.alpha0), a1(g.alpha1);
  const Scaled inv_a0 = inv(a0);

  // C[L][r] = sum of c(H, I) over QH = L, QI = r.
  std::map<int, std::vector<Scaled>> C;
  for (auto& t : label_terms(P, a0, a1, W, false)) {
    auto& row = C.try_emplace(t.qh, static_cast<std::size_t>(W), Scaled::zero(P)).first->second;
    row[static_cast<std::size_t>(t.qi)] += t.c;
  }
  std::vector<std::int64_t> Ls;
  for (const auto& [L, row] : C) Ls.push_back(L);
  PowerTable T(P, W, Ls);

  ScaledSeries gamma(P, W);
  for (int n = 1; n < W; ++n) {
    T.advance(n);
    // The K = (n) term sits at L = 1, s = n, where the table still holds 0.
    Scaled acc = Scaled::zero(P);
    for (const auto& [L, row] : C) {
      for (int s = L; s <= n; ++s) {
        const Scaled& pw = T.at(L, s);
        const Scaled& c = row[static_cast<std::size_t>(n - s)];
        if (exact_zero(pw) || exact_zero(c)) continue;
        acc += pw * c;
      }
    }
    gamma[n] = acc * inv_a0;
    T.set_base(n, gamma[n]);
  }
  return finish(std::move(gamma), Method::Recursive, Target::U1, M, W);
}

ActionResult act_u1_trees(const GroupElem& g, int W, int M) {
  const auto& P = g.params();
  M = resolve_M(P, W, M);
  auto z = tree_generating_function(P, Scaled(g.alpha0), Scaled(g.alpha1), W, false);
  for (int n = 1; n < W && n <= kTreeCheckWeight; ++n) {
    Scaled sum = Scaled::zero(P);
    for (const auto& t : trees::enumerate_trees(P->q(), n)) sum += trees::index(*t, g.alpha0, g.alpha1);
    const Scaled& gf = z[static_cast<std::size_t>(n)];
    if (!agree(sum, gf, std::min(sum.prec(), gf.prec()))) {
      throw std::logic_error("tree generating function disagrees with enumeration at weight " + std::to_string(n));
    }
  }
  return finish(to_series(P, z), Method::Trees, Target::U1, M, W);
}

ActionResult act_u1_functional(const GroupElem& g, int W, int M) {
  const auto& P = g.params();
  M = resolve_M(P, W, M);
  const Scaled a0(g.alpha0), a1(g.alpha1);
  const auto lim = series::limits_from_matrix_product(P, W);
  const auto& f1 = lim.f1;
  const auto& f = lim.f;
  const auto A = scale(f1, frobenius(a1)) + scale(f, a0);
  const auto B = scale(f1, frobenius(a0)) + scale(f, a1 * Scaled::integer(P, P->p()));

  std::vector<std::int64_t> exps;
  for (int k = 1; k < W; ++k) {
    if (!exact_zero(f1[k]) || !exact_zero(f[k])) exps.push_back(k);
  }
  PowerTable T(P, W, exps);
  // Only the u1^1 terms of f1(Gamma) and f(Gamma) see gamma_n at degree n.
  const Scaled lead = (W > 1 ? f1[1] * A[0] - f[1] * B[0] : A[0]);
  const Scaled inv_lead = inv(lead);

  std::vector<Scaled> f1g(static_cast<std::size_t>(W), Scaled::zero(P)), fg = f1g;
  f1g[0] = f1[0];
  fg[0] = f[0];
  ScaledSeries gamma(P, W);
  for (int n = 1; n < W; ++n) {
    T.advance(n);
    Scaled x = Scaled::zero(P), y = Scaled::zero(P);
    for (auto k : exps) {
      if (k > n) break;
      const Scaled& pw = T.at(static_cast<int>(k), n);
      if (exact_zero(pw)) continue;
      x += f1[static_cast<int>(k)] * pw;
      y += f[static_cast<int>(k)] * pw;
    }
    f1g[static_cast<std::size_t>(n)] = x;
    fg[static_cast<std::size_t>(n)] = y;
    Scaled lhs = Scaled::zero(P), rhs = Scaled::zero(P);
    for (int j = 0; j <= n; ++j) {
      lhs += f1g[static_cast<std::size_t>(j)] * A[n - j];
      rhs += fg[static_cast<std::size_t>(j)] * B[n - j];
    }
    gamma[n] = (rhs - lhs) * inv_lead;
    T.set_base(n, gamma[n]);
    f1g[static_cast<std::size_t>(n)] += f1[1] * gamma[n];
    fg[static_cast<std::size_t>(n)] += f[1] * gamma[n];
  }
  return finish(std::move(gamma), Method::Functional, Target::U1, M, W);
}

ActionResult act_u1(const GroupElem& g, int W, MethodChoice method, int M) {
  switch (method) {
    case MethodChoice::Trees: return act_u1_trees(g, W, M);
    case MethodChoice::Functional: return act_u1_functional(g, W, M);
    case MethodChoice::Recursive:
    case MethodChoice::Auto: break;
  }
  return act_u1_recursive(g, W, M);
}

std::vector<Scaled> solve_recursive(const std::vector<Scaled>& x, const std::vector<Scaled>& y) {
  std::vector<Scaled> theta;
  for (std::size_t n = 0; n < x.size(); ++n) {
    Scaled t = x[n];
    for (std::size_t i = 0; i < n; ++i) {
      if (!exact_zero(y[n - i])) t -= theta[i] * y[n - i];
    }
    theta.push_back(std::move(t));
  }
  return theta;
}

std::vector<Scaled> solve_closed(const std::vector<Scaled>& x, const std::vector<Scaled>& y) {
  if (x.empty()) return {};
  const auto& P = x[0].params();
  // z_m = sum over compositions K of m of (-1)^|K| prod y_k, by first part.
  std::vector<Scaled> z{Scaled::one(P)};
  for (std::size_t m = 1; m < x.size(); ++m) {
    Scaled acc = Scaled::zero(P);
    for (std::size_t k = 1; k <= m; ++k) {
      if (!exact_zero(y[k])) acc += y[k] * z[m - k];
    }
    z.push_back(-acc);
  }
  std::vector<Scaled> theta;
  for (std::size_t n = 0; n < x.size(); ++n) {
    Scaled t = Scaled::zero(P);
    for (std::size_t i = 0; i <= n; ++i) {
      if (!exact_zero(x[i])) t += x[i] * z[n - i];
    }
    theta.push_back(std::move(t));
  }
  return theta;
}

ActionResult act_u(const GroupElem& g, int W, int M) {
  const auto& P = g.params();
  require_odd_f(P, "the action on u");
  M = resolve_M(P, W, M);
  const Scaled a0(g.alpha0), a1(g.alpha1);
  const auto gamma = tree_generating_function(P, a0, a1, W, false);
  const auto f = series::f_series(P, W), f1 = series::f1_series(P, W);
  std::vector<Scaled> x;
  for (int i = 0; i < W; ++i) x.push_back(frobenius(a1) * f1[i] + a0 * f[i]);
  const auto theta = solve_closed(x, f_of_gamma_minus_one(P, gamma, W));
  return finish(to_series(P, theta), Method::Closed, Target::U, M, W);
}

ActionResult witt_act_u1(const Elem& alpha, int W, int M) {
  const auto& P = alpha.params();
  require_odd_f(P, "the Witt-subgroup action");
  if (!alpha.is_unit()) throw witt::ArithmeticError("alpha must be a unit");
  M = resolve_M(P, W, M);
  auto z = tree_generating_function(P, Scaled(alpha), Scaled::zero(P), W, true);
  return finish(to_series(P, z), Method::WittAlternating, Target::U1, M, W);
}

ActionResult witt_act_u1_recursion(const Elem& alpha, int M) {
  const auto& P = alpha.params();
  require_q_equals_p(P, "the delta recursion");
  if (!alpha.is_unit()) throw witt::ArithmeticError("alpha must be a unit");
  const int p = P->p();
  const int W = p * p + 1;
  M = resolve_M(P, W, M);
  const Scaled beta = frobenius(Scaled(alpha)) * inv(Scaled(alpha));
  const Scaled inv_pi = Scaled::inv_p_power(P, 1);
  std::vector<Scaled> delta{beta};
  for (int m = 1; m <= p - 1; ++m) {
    Scaled d = -(delta[static_cast<std::size_t>(m - 1)] * inv_pi);
    for (const auto& K : lambda::enumerate_weak_compositions(m - 1, p + 1)) {
      Scaled prod = beta * inv_pi;
      for (int k : K) prod *= delta[static_cast<std::size_t>(k)];
      d += prod;
    }
    if (m == p - 1) d += beta - pow(beta, static_cast<unsigned long>(p * p));
    delta.push_back(std::move(d));
  }
  ScaledSeries s(P, W);
  for (int m = 0; m < p; ++m) s[1 + (p + 1) * m] = delta[static_cast<std::size_t>(m)];
  return finish(std::move(s), Method::WittRecursion, Target::U1, M, W);
}

ActionResult witt_act_u(const Elem& alpha, int W, int M) {
  const auto& P = alpha.params();
  require_odd_f(P, "the Witt-subgroup action on u");
  if (!alpha.is_unit()) throw witt::ArithmeticError("alpha must be a unit");
  M = resolve_M(P, W, M);
  const int step = P->p() + 1;
  const auto z = tree_generating_function(P, Scaled(alpha), Scaled::zero(P), W, true);
  const auto y_all = f_of_gamma_minus_one(P, z, W);
  const auto f = series::f_series(P, W);
  std::vector<Scaled> x, y;
  for (int n = 0; n * step < W; ++n) {
    x.push_back(Scaled(alpha) * f[n * step]);
    y.push_back(y_all[static_cast<std::size_t>(n * step)]);
  }
  const auto tau = solve_closed(x, y);
  ScaledSeries s(P, W);
  for (std::size_t n = 0; n < tau.size(); ++n) s[static_cast<int>(n) * step] = tau[n];
  return finish(std::move(s), Method::Closed, Target::U, M, W);
}

std::vector<LowDegreeTerm> low_degree_closed(const Elem& alpha) {
  const auto& P = alpha.params();
  require_q_equals_p(P, "the low-degree closed forms");
  if (!alpha.is_unit()) throw witt::ArithmeticError("alpha must be a unit");
  const int p = P->p();
  const Scaled beta = frobenius(Scaled(alpha)) * inv(Scaled(alpha));
  const Scaled one = Scaled::one(P);
  const Scaled b = pow(beta, static_cast<unsigned long>(p + 1));
  const Scaled e = b - one;
  const Scaled r = Scaled::integer(P, p + 1) * b - one;
  const Scaled binom = Scaled::integer(P, static_cast<long>(p) * (p + 1) / 2);
  auto inv_pi = [&](int k) { return Scaled::inv_p_power(P, k); };
  const int limit = std::min(4 * p + 5, p * p);
  std::vector<LowDegreeTerm> out;
  auto add = [&](int degree, Scaled v) { out.push_back({degree, std::move(v), degree < limit}); };
  add(1, beta);
  add(p + 2, inv_pi(1) * beta * e);
  add(2 * p + 3, inv_pi(2) * beta * e * r);
  add(3 * p + 4, inv_pi(3) * beta * e * (r * r + binom * b * e));
  return out;
}

ScaledSeries act_on_ring_element(const GroupElem& g, const ScaledSeries& s, int d, int W) {
  const auto gamma = act_u1_recursive(g, W).series;
  ScaledSeries out = series::compose(s.truncated(W), gamma);
  if (d == 0) return out;
  ScaledSeries theta = act_u(g, W).series;
  if (d < 0) theta = series::invert_unit(theta);
  for (int k = 0; k < std::abs(d); ++k) out = out * theta;
  return out;
}

Linearity classify_linear(const GroupElem& g, int W, int M) {
  const auto r = act_u1_recursive(g, W, M);
  Linearity out;
  out.linear = true;
  for (int n = 2; n < W; ++n) {
    if (!r.coefficient(n).is_zero()) {
      out.linear = false;
      out.witness = n;
      break;
    }
  }
  const auto& P = g.params();
  if (g.alpha1.is_zero() && P->f() == 1) {
    const Elem beta = witt::frobenius(g.alpha0) * witt::inv(g.alpha0);
    const Elem b = witt::truncate(witt::pow(beta, static_cast<std::uint64_t>(P->p() + 1)), r.M);
    out.beta_criterion = b == witt::truncate(Elem(P, 1), r.M);
  }
  return out;
}

}  // namespace ltaction::stabilizer
