#pragma once

// The two published example series, read from the embedded data files.

#include <string>
#include <vector>

#include "ltaction/witt.hpp"

namespace ltaction::golden {

struct Coefficient {
  int n;
  witt::Elem value;  // modulo p^M
};

struct Series {
  std::string name;
  int p = 0, f = 0, M = 0, W = 0;
  std::string alpha0, alpha1;  // element expressions in z
  witt::ParamsPtr params;      // precision M + W
  std::vector<Coefficient> coefficients;  // listed degrees; all others vanish below u1^W
};

Series paper_p2();
Series paper_p3();

/// Parses a data file in either layout: {"n", "value"} integers, or
/// {"n", "two_exp", "five_exp", "im", "re"} with sqrt(-1) = z^2.
Series load(const std::string& json_text);

}  // namespace ltaction::golden
