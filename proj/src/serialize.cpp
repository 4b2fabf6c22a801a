#include "ltaction/serialize.hpp"

#include <stdexcept>

namespace ltaction::serialize {

using witt::Elem;

json elem_coords(const Elem& a) {
  json out = json::array();
  for (const auto& c : a.coeffs()) out.push_back(c.get_str());
  return out;
}

Elem elem_from_coords(const json& coords, const witt::ParamsPtr& params) {
  if (!coords.is_array() || static_cast<int>(coords.size()) != params->degree()) {
    throw std::invalid_argument("coordinate list must have " + std::to_string(params->degree()) + " entries");
  }
  std::vector<mpz_class> c;
  for (const auto& x : coords) c.emplace_back(x.get<std::string>());
  return Elem(params, std::move(c));
}

json series_records(const series::ScaledSeries& s, int M) {
  json out = json::array();
  for (int n = 0; n < s.wmax(); ++n) {
    const Scaled& x = s[n];
    if (x.prec() < M) {
      throw PrecisionBudgetExceeded("coefficient of u1^" + std::to_string(n) + " is known only modulo p^" +
                                    std::to_string(x.prec()));
    }
    const Scaled y(x.num(), x.den(), M);
    if (y.is_zero()) continue;
    out.push_back({{"n", n}, {"denom_exp", y.den()}, {"coeff", elem_coords(y.num())}});
  }
  return out;
}

series::ScaledSeries series_from_records(const json& records, const witt::ParamsPtr& params, int W, int M) {
  series::ScaledSeries s(params, W);
  int last = -1;
  for (const auto& r : records) {
    const int n = r.at("n").get<int>();
    if (n <= last || n >= W) throw std::invalid_argument("series records must have increasing degrees below u1_exp");
    last = n;
    s[n] = Scaled(elem_from_coords(r.at("coeff"), params), r.at("denom_exp").get<int>(), M);
  }
  for (int n = 0; n < W; ++n) {
    if (s[n].is_zero()) s[n] = Scaled(Elem(params), 0, M);
  }
  return s;
}

json action_document(const stabilizer::ActionResult& r, const Elem& alpha0, const Elem& alpha1) {
  const auto& P = r.series.params();
  return {{"p", P->p()},
          {"f", P->f()},
          {"precision", {{"p_exp", r.M}, {"u1_exp", r.W}}},
          {"alpha0", elem_coords(witt::truncate(alpha0, r.M))},
          {"alpha1", elem_coords(witt::truncate(alpha1, r.M))},
          {"target", stabilizer::to_string(r.target)},
          {"method", stabilizer::to_string(r.method)},
          {"series", series_records(r.series, r.M)}};
}

ActionDocument read_action_document(const json& doc) {
  ActionDocument d;
  d.M = doc.at("precision").at("p_exp").get<int>();
  d.W = doc.at("precision").at("u1_exp").get<int>();
  d.params = witt::make_params(doc.at("p").get<int>(), doc.at("f").get<int>(), d.M + d.W);
  d.alpha0 = elem_from_coords(doc.at("alpha0"), d.params);
  d.alpha1 = elem_from_coords(doc.at("alpha1"), d.params);
  const auto target = doc.at("target").get<std::string>();
  if (target != "u1" && target != "u") throw std::invalid_argument("target must be u1 or u");
  d.target = target == "u1" ? stabilizer::Target::U1 : stabilizer::Target::U;
  d.series = series_from_records(doc.at("series"), d.params, d.W, d.M);
  return d;
}

}  // namespace ltaction::serialize
