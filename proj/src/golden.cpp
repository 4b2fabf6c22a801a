#include "ltaction/golden.hpp"

#include <stdexcept>

#include "golden_data.hpp"
#include "json.hpp"

namespace ltaction::golden {

using witt::Elem;

Series load(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  Series s;
  s.name = j.at("name").get<std::string>();
  s.p = j.at("p").get<int>();
  s.f = j.at("f").get<int>();
  s.M = j.at("p_exp").get<int>();
  s.W = j.at("u1_exp").get<int>();
  s.alpha0 = j.at("alpha0").get<std::string>();
  s.alpha1 = j.at("alpha1").get<std::string>();
  s.params = witt::make_params(s.p, s.f, s.M + s.W);
  const auto& P = s.params;
  for (const auto& c : j.at("coefficients")) {
    const int n = c.at("n").get<int>();
    Elem v(P);
    if (c.contains("value")) {
      v = witt::parse_elem(c.at("value").get<std::string>(), P);
    } else {
      const Elem z = Elem::generator(P);
      const Elem i = z * z;
      if (!(i * i + Elem(P, 1)).is_zero()) throw std::invalid_argument("z^2 is not a square root of -1 in this ring");
      v = witt::parse_elem(c.at("im").get<std::string>(), P) * i + witt::parse_elem(c.at("re").get<std::string>(), P);
      v = v * witt::pow(Elem(P, 2), c.at("two_exp").get<std::uint64_t>());
      v = v * witt::inv(witt::pow(Elem(P, 5), c.at("five_exp").get<std::uint64_t>()));
    }
    s.coefficients.push_back({n, witt::truncate(v, s.M)});
  }
  return s;
}

Series paper_p2() { return load(data::kPaperP2); }
Series paper_p3() { return load(data::kPaperP3); }

}  // namespace ltaction::golden
