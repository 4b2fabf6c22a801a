#include "doctest.h"

#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "ltaction/serialize.hpp"

using namespace ltaction;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Data rows of an act table: "n<TAB>value".
std::map<int, std::string> rows(const std::string& table) {
  std::map<int, std::string> out;
  std::istringstream in(table);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    out[std::stoi(line.substr(0, tab))] = line.substr(tab + 1);
  }
  return out;
}

}  // namespace

TEST_CASE("act table for the p=2 example") {
  auto r = run({"act", "--target", "u1", "--p", "2", "--f", "1", "--alpha0", "1+2*z", "--alpha1", "0", "--w", "73", "--m",
                "64"});
  REQUIRE(r.code == cli::kOk);
  auto t = rows(r.out);
  CHECK(t.size() == 24);
  CHECK(t[1] == "-1");
  CHECK(t[16] == "8");
  CHECK(t[55] == "-171581978");
  CHECK(t[70] == "57330724580351");
}

TEST_CASE("act on identity and on u") {
  auto r = run({"act", "--target", "u1", "--p", "5", "--f", "1", "--alpha0", "1", "--alpha1", "0"});
  REQUIRE(r.code == cli::kOk);
  auto t = rows(r.out);
  CHECK(t.size() == 1);
  CHECK(t[1] == "1");

  auto u = run({"act", "--target", "u", "--p", "3", "--f", "1", "--alpha", "z^2", "--w", "12", "--format", "json"});
  REQUIRE(u.code == cli::kOk);
  auto doc = json::parse(u.out);
  CHECK(doc["target"] == "u");
  auto P = witt::make_params(3, 1, 32);
  auto z2 = witt::parse_elem("z^2", P);
  CHECK(doc["series"][0]["n"] == 0);
  CHECK(serialize::elem_from_coords(doc["series"][0]["coeff"], P) == witt::truncate(z2, 20));
}

TEST_CASE("methods agree through the command line") {
  std::vector<std::string> base = {"act", "--p", "3", "--alpha0", "2 + z", "--alpha1", "1 - z", "--w", "25", "--format", "json"};
  std::string first;
  for (const char* m : {"recursive", "trees", "functional", "auto"}) {
    auto args = base;
    args.insert(args.end(), {"--method", m});
    auto r = run(args);
    REQUIRE(r.code == cli::kOk);
    auto doc = json::parse(r.out);
    if (first.empty()) {
      first = doc["series"].dump();
    } else {
      CHECK(doc["series"].dump() == first);
    }
  }
}

TEST_CASE("json round trip") {
  auto r = run({"act", "--p", "2", "--f", "1", "--alpha0", "1 + 2*z", "--alpha1", "3*z", "--w", "30", "--m", "24",
                "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["p"] == 2);
  CHECK(doc["f"] == 1);
  CHECK(doc["precision"]["p_exp"] == 24);
  CHECK(doc["precision"]["u1_exp"] == 30);
  const auto back = serialize::read_action_document(doc);
  CHECK(serialize::series_records(back.series, back.M) == doc["series"]);
  CHECK(serialize::elem_coords(back.alpha1) == doc["alpha1"]);
  CHECK(back.target == stabilizer::Target::U1);
  // Records are canonical: increasing degrees, no zero coefficients.
  int last = -1;
  for (const auto& rec : doc["series"]) {
    CHECK(rec["n"].get<int>() > last);
    last = rec["n"].get<int>();
    CHECK(rec["denom_exp"] == 0);
  }
}

TEST_CASE("series records keep denominators") {
  auto P = witt::make_params(3, 1, 30);
  const auto f = series::f_series(P, 40);
  const auto rec = serialize::series_records(f, 20);
  const auto back = serialize::series_from_records(rec, P, 40, 20);
  CHECK(agree(back, f, 20));
  CHECK(serialize::series_records(back, 20) == rec);
  bool has_den = false;
  for (const auto& r : rec) has_den = has_den || r["denom_exp"].get<int>() > 0;
  CHECK(has_den);
  CHECK_THROWS_AS(serialize::series_records(f, 30), PrecisionBudgetExceeded);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"act", "--p", "2", "--alpha0", "1+"}).code == cli::kUsage);
  CHECK(run({"act", "--p", "2"}).code == cli::kUsage);
  CHECK(run({"act", "--p", "2", "--alpha0", "1", "--method", "magic"}).code == cli::kUsage);
  CHECK(run({"act", "--p", "3", "--alpha0", "3"}).code == cli::kUnsupported);
  CHECK(run({"act", "--p", "2", "--f", "2", "--alpha0", "1", "--target", "u"}).code == cli::kUnsupported);
  CHECK(run({"act", "--p", "2", "--alpha0", "1+2*z", "--alpha1", "1", "--target", "u"}).code == cli::kPrecision);
  CHECK(run({"verify", "--suite", "nonsense"}).code == cli::kUsage);
  auto h = run({"--help"});
  CHECK(h.code == cli::kOk);
  CHECK(h.out.find("verify") != std::string::npos);
}

TEST_CASE("tree census") {
  auto r = run({"trees", "--q", "2", "--weight", "3", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out)["count"] == 3);
  r = run({"trees", "--q", "3", "--weight", "4", "--format", "json"});
  CHECK(json::parse(r.out)["count"] == 3);
  r = run({"trees", "--q", "2", "--weight", "1", "--alpha0", "1 + 2*z"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("count: 1") != std::string::npos);
  // sigma(1 + 2z) / (1 + 2z) = -1.
  CHECK(r.out.find("summed index: -1 ") != std::string::npos);
  r = run({"trees", "--q", "3", "--weight", "5", "--alternating", "--alpha", "1 + 3*z", "--format", "json"});
  CHECK(r.code == cli::kOk);
  CHECK(run({"trees", "--q", "6", "--weight", "2"}).code == cli::kUsage);
}

TEST_CASE("tree ceiling") {
  setenv("LTACTION_TREE_CEILING", "5", 1);
  CHECK(run({"trees", "--q", "2", "--weight", "7"}).code == cli::kTreeCeiling);
  unsetenv("LTACTION_TREE_CEILING");
}

TEST_CASE("verify suites") {
  auto r = run({"verify", "--suite", "paper-p2"});
  REQUIRE(r.code == cli::kOk);
  auto doc = json::parse(r.out);
  CHECK(doc["passed"] == true);
  CHECK(doc["checks"][0]["detail"].get<std::string>().rfind("24/24 coefficients matched", 0) == 0);
  r = run({"verify", "--suite", "cross-oracle", "--q", "3", "--threads", "2"});
  CHECK(r.code == cli::kOk);
  CHECK(json::parse(r.out)["checks"].size() == 5);
  r = run({"verify", "--suite", "axioms", "--q", "2", "--format", "table"});
  CHECK(r.out.find("PASS q=2: identity acts trivially") != std::string::npos);
}
