#include "ltaction/trees.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace ltaction::trees {

using lambda::enumerate_lambda;
using lambda::q_value;

bool operator==(const Tree& a, const Tree& b) {
  if (!(a.label == b.label) || a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!(*a.children[i] == *b.children[i])) return false;
  }
  return true;
}

TreePtr make_tree(Label label, std::vector<TreePtr> children) {
  return std::make_shared<const Tree>(Tree{std::move(label), std::move(children)});
}

std::int64_t weight(const Tree& t, std::int64_t q) {
  std::int64_t w = q_value(t.label.I, q);
  for (const auto& c : t.children) w += weight(*c, q);
  return w;
}

std::size_t vertex_count(const Tree& t) {
  std::size_t n = 1;
  for (const auto& c : t.children) n += vertex_count(*c);
  return n;
}

namespace {

std::optional<Violation> check(const Tree& t, std::int64_t q, bool alternating, std::vector<int>& path) {
  auto fail = [&](std::string reason) { return std::optional<Violation>(Violation{path, std::move(reason)}); };
  if (!lambda::is_lambda(t.label.H)) return fail("H is not in Lambda");
  if (!lambda::is_lambda(t.label.I)) return fail("I is not in Lambda");
  if (alternating && t.label.H.size() % 2 == t.label.I.size() % 2) return fail("|H| and |I| have the same parity");
  if (q_value(t.label.H, q) != static_cast<std::int64_t>(t.children.size())) {
    return fail("child count " + std::to_string(t.children.size()) + " differs from QH = " +
                std::to_string(q_value(t.label.H, q)));
  }
  const std::int64_t w = weight(t, q);
  if (w <= 0) return fail("vertex weight is not positive");
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (weight(*t.children[i], q) >= w) {
      path.push_back(static_cast<int>(i));
      auto v = fail("child weight is not smaller than its parent's");
      path.pop_back();
      return v;
    }
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (auto v = check(*t.children[i], q, alternating, path)) return v;
    path.pop_back();
  }
  return std::nullopt;
}

struct TreeCache {
  std::mutex mutex;
  std::map<std::tuple<std::int64_t, int, bool>, std::vector<TreePtr>> lists;
};

TreeCache& tree_cache() {
  static TreeCache c;
  return c;
}

class Enumerator {
 public:
  Enumerator(std::int64_t q, bool alternating, std::size_t ceiling) : q_(q), alt_(alternating), ceiling_(ceiling) {}

  const std::vector<TreePtr>& list(int n) {
    auto key = std::make_tuple(q_, n, alt_);
    {
      std::lock_guard lock(tree_cache().mutex);
      auto it = tree_cache().lists.find(key);
      if (it != tree_cache().lists.end()) return it->second;
    }
    for (int w = 1; w < n; ++w) list(w);
    std::vector<TreePtr> out = build(n);
    std::lock_guard lock(tree_cache().mutex);
    return tree_cache().lists.emplace(key, std::move(out)).first->second;
  }

 private:
  std::vector<TreePtr> build(int n) {
    std::vector<std::vector<TreePtr>> lower(static_cast<std::size_t>(n));
    for (int w = 1; w < n; ++w) {
      std::lock_guard lock(tree_cache().mutex);
      lower[static_cast<std::size_t>(w)] = tree_cache().lists.at(std::make_tuple(q_, w, alt_));
    }
    std::vector<TreePtr> out;
    for (int qi = 0; qi <= n; ++qi) {
      for (const auto& I : enumerate_lambda(q_, qi)) {
        const int rest = n - qi;
        for (int m = 0; m <= rest; ++m) {
          if (m == 0 && rest != 0) continue;
          for (const auto& H : enumerate_lambda(q_, m)) {
            if (alt_ && H.size() % 2 == I.size() % 2) continue;
            std::vector<TreePtr> kids;
            tuples(lower, Label{H, I}, m, rest, n, kids, out);
          }
        }
      }
    }
    return out;
  }

  void tuples(const std::vector<std::vector<TreePtr>>& lower, const Label& label, int slots, int rest, int n,
              std::vector<TreePtr>& kids, std::vector<TreePtr>& out) {
    if (slots == 0) {
      if (rest == 0) {
        if (++built_ > ceiling_) {
          throw TreeCeilingExceeded("tree enumeration exceeded the ceiling of " + std::to_string(ceiling_));
        }
        out.push_back(make_tree(label, kids));
      }
      return;
    }
    // Each remaining slot needs weight at least 1.
    for (int w = 1; w < n && w <= rest - (slots - 1); ++w) {
      for (const auto& t : lower[static_cast<std::size_t>(w)]) {
        kids.push_back(t);
        tuples(lower, label, slots - 1, rest - w, n, kids, out);
        kids.pop_back();
      }
    }
  }

  std::int64_t q_;
  bool alt_;
  std::size_t ceiling_;
  std::size_t built_ = 0;
};

int floor_half(int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

void render_into(const Tree& t, std::int64_t q, int depth, std::ostringstream& os) {
  auto seq = [](const Seq& s) {
    std::string r = "(";
    for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i]);
    return r + ")";
  };
  os << std::string(static_cast<std::size_t>(2 * depth), ' ') << "H=" << seq(t.label.H) << " I=" << seq(t.label.I)
     << " wt=" << weight(t, q) << "\n";
  for (const auto& c : t.children) render_into(*c, q, depth + 1, os);
}

void serialize_into(const Tree& t, std::ostringstream& os) {
  auto seq = [&](const Seq& s) {
    os << "[";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "]";
  };
  os << "[[";
  seq(t.label.H);
  os << ",";
  seq(t.label.I);
  os << "],[";
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) os << ",";
    serialize_into(*t.children[i], os);
  }
  os << "]]";
}

}  // namespace

std::optional<Violation> validate(const Tree& t, std::int64_t q, bool alternating) {
  std::vector<int> path;
  return check(t, q, alternating, path);
}

std::size_t default_tree_ceiling() {
  if (const char* env = std::getenv("LTACTION_TREE_CEILING")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 10'000'000;
}

std::vector<TreePtr> enumerate_trees(std::int64_t q, int n, bool alternating, std::size_t ceiling) {
  if (n < 1) throw std::invalid_argument("tree weight must be positive");
  Enumerator e(q, alternating, ceiling);
  return e.list(n);
}

Scaled label_coefficient(std::size_t h_len, std::size_t i_len, const Scaled& alpha0, const Scaled& alpha1) {
  const int s = static_cast<int>(h_len + i_len) - 1;
  const Scaled& a = (s % 2 == 0) ? alpha0 : alpha1;
  Scaled c = frobenius(a, static_cast<int>(i_len % 2));
  if (h_len % 2 == 1) c = -c;
  return c * Scaled::inv_p_power(a.params(), floor_half(s));
}

Scaled index(const Tree& t, const witt::Elem& alpha0, const witt::Elem& alpha1) {
  if (!alpha0.is_unit()) throw witt::ArithmeticError("alpha0 must be a unit");
  const Scaled a0(alpha0), a1(alpha1);
  const Scaled inv_a0 = inv(a0);
  std::function<Scaled(const Tree&)> walk = [&](const Tree& v) {
    Scaled r = label_coefficient(v.label.H.size(), v.label.I.size(), a0, a1) * inv_a0;
    for (const auto& c : v.children) r *= walk(*c);
    return r;
  };
  return walk(t);
}

Scaled index_alt(const Tree& t, const witt::Elem& alpha) {
  std::function<bool(const Tree&)> alt = [&](const Tree& v) {
    if (v.label.H.size() % 2 == v.label.I.size() % 2) return false;
    for (const auto& c : v.children) {
      if (!alt(*c)) return false;
    }
    return true;
  };
  if (!alt(t)) throw std::invalid_argument("tree is not q-alternating");
  return index(t, alpha, witt::Elem(alpha.params()));
}

std::string render(const Tree& t, std::int64_t q) {
  std::ostringstream os;
  render_into(t, q, 0, os);
  return os.str();
}

std::string serialize(const Tree& t) {
  std::ostringstream os;
  serialize_into(t, os);
  return os.str();
}

}  // namespace ltaction::trees
