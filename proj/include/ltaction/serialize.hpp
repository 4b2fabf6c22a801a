#pragma once

// Series records {n, denom_exp, coeff} and the action JSON document.

#include "json.hpp"
#include "ltaction/stabilizer.hpp"

namespace ltaction::serialize {

using nlohmann::json;

/// Nonzero coefficients in degree order. Each numerator is reduced modulo
/// p^(M + denom_exp) and written as decimal strings, one per coordinate.
/// Throws PrecisionBudgetExceeded if a coefficient is not known modulo p^M.
json series_records(const series::ScaledSeries& s, int M);

/// Inverse of series_records: every coefficient is known modulo p^M.
series::ScaledSeries series_from_records(const json& records, const witt::ParamsPtr& params, int W, int M);

json elem_coords(const witt::Elem& a);
witt::Elem elem_from_coords(const json& coords, const witt::ParamsPtr& params);

/// {"p", "f", "precision": {"p_exp", "u1_exp"}, "alpha0", "alpha1", "target", "method", "series"}.
json action_document(const stabilizer::ActionResult& r, const witt::Elem& alpha0, const witt::Elem& alpha1);

struct ActionDocument {
  witt::ParamsPtr params;
  witt::Elem alpha0, alpha1;
  stabilizer::Target target = stabilizer::Target::U1;
  int M = 0, W = 0;
  series::ScaledSeries series;
};

/// Reads a document into a ring of precision p_exp + u1_exp, the one the writer used.
ActionDocument read_action_document(const json& doc);

}  // namespace ltaction::serialize
