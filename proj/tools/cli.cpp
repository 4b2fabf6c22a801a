#include "cli.hpp"

#include <algorithm>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ltaction/serialize.hpp"
#include "ltaction/stabilizer.hpp"
#include "ltaction/trees.hpp"
#include "ltaction/verify.hpp"

namespace ltaction::cli {

namespace {

using nlohmann::json;
using witt::Elem;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ActConfig {
  int p = 2, f = 1, M = 20, W = 20;
  std::string alpha0, alpha1 = "0", alpha;
  std::string target = "u1", method = "auto", format = "table";
};

struct TreesConfig {
  long q = 2;
  int weight = 1, M = 20;
  bool alternating = false;
  std::string alpha0, alpha1 = "0", alpha, format = "table";
};

struct VerifyConfig {
  std::string suite, format = "json";
  int q = 0;
  unsigned threads = 0;
  unsigned long seed = 1;
};

std::pair<int, int> split_prime_power(long q) {
  for (long p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    int f = 0;
    long v = q;
    while (v % p == 0) {
      v /= p;
      ++f;
    }
    if (v != 1) break;
    return {static_cast<int>(p), f};
  }
  throw UsageError("--q must be a prime power, got " + std::to_string(q));
}

Elem parse(const std::string& text, const witt::ParamsPtr& P, const char* flag) {
  try {
    return witt::parse_elem(text, P);
  } catch (const witt::ParseError& e) {
    throw UsageError(std::string("cannot parse ") + flag + " '" + text + "': " + e.what());
  }
}

// Balanced integers for the prime subring, coordinates in z otherwise.
std::string show(const Elem& a, int M) { return witt::format_balanced(a, M); }

void print_table(const stabilizer::ActionResult& r, const std::string& a0, const std::string& a1, std::ostream& out) {
  const auto& P = r.series.params();
  out << "# target=" << stabilizer::to_string(r.target) << " method=" << stabilizer::to_string(r.method) << " p=" << P->p()
      << " f=" << P->f() << " q=" << P->q() << " M=" << r.M << " W=" << r.W << "\n";
  out << "# alpha0 = " << a0 << ", alpha1 = " << a1 << "\n";
  out << "# coefficients of u1^n" << (r.target == stabilizer::Target::U ? " u" : "") << " modulo " << P->p() << "^" << r.M
      << "; every other n < " << r.W << " is 0\n";
  for (int n = 0; n < r.W; ++n) {
    const Elem c = r.coefficient(n);
    if (c.is_zero()) continue;
    out << n << "\t" << show(c, r.M) << "\n";
  }
}

int cmd_act(const ActConfig& c, std::ostream& out) {
  if (c.M < 1 || c.W < 1) throw UsageError("--m and --w must be positive");
  if (!c.alpha.empty() && (!c.alpha0.empty() || c.alpha1 != "0")) {
    throw UsageError("--alpha cannot be combined with --alpha0/--alpha1");
  }
  if (c.alpha.empty() && c.alpha0.empty()) throw UsageError("one of --alpha0 or --alpha is required");
  auto P = stabilizer::working_params(c.p, c.f, c.M, c.W);
  const bool witt_only = !c.alpha.empty();
  const Elem a0 = parse(witt_only ? c.alpha : c.alpha0, P, witt_only ? "--alpha" : "--alpha0");
  const Elem a1 = witt_only ? Elem(P) : parse(c.alpha1, P, "--alpha1");

  stabilizer::ActionResult r;
  if (c.target == "u") {
    if (witt_only) {
      r = stabilizer::witt_act_u(a0, c.W, c.M);
    } else {
      r = stabilizer::act_u(stabilizer::make_group_elem(a0, a1), c.W, c.M);
    }
  } else if (witt_only && c.method == "auto") {
    r = stabilizer::witt_act_u1(a0, c.W, c.M);
  } else {
    using stabilizer::MethodChoice;
    const MethodChoice m = c.method == "recursive"  ? MethodChoice::Recursive
                           : c.method == "trees"      ? MethodChoice::Trees
                           : c.method == "functional" ? MethodChoice::Functional
                                                      : MethodChoice::Auto;
    r = stabilizer::act_u1(stabilizer::make_group_elem(a0, a1), c.W, m, c.M);
  }

  if (c.format == "json") {
    out << serialize::action_document(r, a0, a1).dump(2) << "\n";
  } else {
    print_table(r, witt::format_balanced(a0, c.M), witt::format_balanced(a1, c.M), out);
  }
  return kOk;
}

int cmd_trees(const TreesConfig& c, std::ostream& out) {
  if (c.weight < 1) throw UsageError("--weight must be at least 1");
  const auto [p, f] = split_prime_power(c.q);
  const auto list = trees::enumerate_trees(c.q, c.weight, c.alternating);

  const bool with_index = !c.alpha0.empty() || !c.alpha.empty();
  if (!c.alpha.empty() && !c.alternating) throw UsageError("--alpha needs --alternating; use --alpha0/--alpha1");
  if (!c.alpha0.empty() && c.alternating) throw UsageError("alternating trees take --alpha");
  witt::ParamsPtr P;
  Elem a0, a1;
  if (with_index) {
    P = stabilizer::working_params(p, f, c.M, c.weight);
    a0 = parse(c.alternating ? c.alpha : c.alpha0, P, c.alternating ? "--alpha" : "--alpha0");
    a1 = c.alternating ? Elem(P) : parse(c.alpha1, P, "--alpha1");
    if (!a0.is_unit()) throw witt::ArithmeticError("alpha0 must be a unit");
  }

  json doc = {{"q", c.q}, {"weight", c.weight}, {"alternating", c.alternating}, {"count", list.size()}};
  json items = json::array();
  Scaled total = with_index ? Scaled::zero(P) : Scaled();
  std::size_t k = 0;
  for (const auto& t : list) {
    ++k;
    json item = {{"tree", json::parse(trees::serialize(*t))}};
    std::string idx;
    if (with_index) {
      const Scaled v = c.alternating ? trees::index_alt(*t, a0) : trees::index(*t, a0, a1);
      total += v;
      item["index"] = {{"denom_exp", v.den()}, {"coeff", serialize::elem_coords(Scaled(v.num(), v.den(), c.M).num())}};
      idx = v.den() == 0 ? show(v.to_elem(c.M), c.M)
                         : "(" + witt::format_elem(Scaled(v.num(), v.den(), c.M).num()) + ") / " + std::to_string(p) +
                               "^" + std::to_string(v.den());
    }
    if (c.format == "table") {
      out << "tree " << k << " (weight " << c.weight << ")";
      if (with_index) out << "  index " << idx;
      out << "\n" << trees::render(*t, c.q);
    }
    items.push_back(std::move(item));
  }
  std::string summed;
  if (with_index) summed = show(total.to_elem(c.M), c.M);
  if (c.format == "json") {
    doc["trees"] = std::move(items);
    if (with_index) doc["summed_index"] = serialize::elem_coords(total.to_elem(c.M));
    out << doc.dump(2) << "\n";
  } else {
    out << "count: " << list.size() << "\n";
    if (with_index) out << "summed index: " << summed << " (mod " << p << "^" << c.M << ")\n";
  }
  return kOk;
}

int cmd_verify(const VerifyConfig& c, std::ostream& out) {
  verify::Options o;
  if (c.q != 0) o.q = c.q;
  o.threads = c.threads;
  o.seed = c.seed;
  const auto report = verify::run_suite(c.suite, o);
  if (c.format == "json") {
    json checks = json::array();
    for (const auto& ch : report.checks) checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
    out << json{{"suite", report.suite},
                {"passed", report.passed()},
                {"failures", report.failures()},
                {"checks", checks}}
               .dump(2)
        << "\n";
  } else {
    for (const auto& ch : report.checks) {
      out << (ch.passed ? "PASS " : "FAIL ") << ch.name << (ch.detail.empty() ? "" : ": " + ch.detail) << "\n";
    }
    out << report.suite << ": " << report.checks.size() - static_cast<std::size_t>(report.failures()) << "/"
        << report.checks.size() << " checks passed\n";
  }
  return report.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Action of the height-2 Morava stabilizer group on the Lubin-Tate ring"};
  app.require_subcommand(1);

  ActConfig act;
  auto* a = app.add_subcommand("act", "Compute g.u1 or g.u as a power series in u1");
  a->add_option("--p", act.p, "Prime p")->check(CLI::Range(2, 1000));
  a->add_option("--f", act.f, "Residue degree f, q = p^f")->check(CLI::Range(1, 16));
  a->add_option("--m", act.M, "Output precision: coefficients modulo p^M");
  a->add_option("--w", act.W, "Truncation: coefficients of u1^n for n < W");
  a->add_option("--alpha0", act.alpha0, "alpha0 as an expression in z, e.g. \"1 + 2*z\"");
  a->add_option("--alpha1", act.alpha1, "alpha1 as an expression in z");
  a->add_option("--alpha", act.alpha, "Element of the Witt subgroup (alpha1 = 0)");
  a->add_option("--target", act.target, "Coordinate to act on")->check(CLI::IsMember({"u1", "u"}));
  a->add_option("--method", act.method, "Method for u1")->check(CLI::IsMember({"recursive", "trees", "functional", "auto"}));
  a->add_option("--format", act.format, "Output format")->check(CLI::IsMember({"table", "json"}));

  TreesConfig tr;
  auto* t = app.add_subcommand("trees", "Enumerate labelled trees of one weight");
  t->add_option("--q", tr.q, "Residue field size q")->required();
  t->add_option("--weight", tr.weight, "Tree weight")->required();
  t->add_flag("--alternating", tr.alternating, "q-alternating trees only");
  t->add_option("--alpha0", tr.alpha0, "alpha0 for the index");
  t->add_option("--alpha1", tr.alpha1, "alpha1 for the index");
  t->add_option("--alpha", tr.alpha, "alpha for the index of alternating trees");
  t->add_option("--m", tr.M, "Index precision: modulo p^M");
  t->add_option("--format", tr.format, "Output format")->check(CLI::IsMember({"table", "json"}));

  VerifyConfig vc;
  auto* v = app.add_subcommand("verify", "Run a verification suite");
  v->add_option("--suite", vc.suite, "Suite name")->required()->check(CLI::IsMember(verify::suite_names()));
  v->add_option("--q", vc.q, "Restrict suites that sweep over q");
  v->add_option("--threads", vc.threads, "Worker threads (0: all cores)");
  v->add_option("--seed", vc.seed, "Seed for random elements");
  v->add_option("--format", vc.format, "Output format")->check(CLI::IsMember({"table", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*a) return cmd_act(act, out);
    if (*t) return cmd_trees(tr, out);
    return cmd_verify(vc, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const stabilizer::UnsupportedResidueDegree& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const witt::ArithmeticError& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const PrecisionBudgetExceeded& e) {
    err << "error: precision budget exceeded: " << e.what() << "\n";
    return kPrecision;
  } catch (const trees::TreeCeilingExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kTreeCeiling;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace ltaction::cli
