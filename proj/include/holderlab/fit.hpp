#pragma once

#include <vector>

namespace holderlab {

// Least-squares line through (log h, log sup).
struct ExponentFit {
  std::vector<double> scales;
  std::vector<double> sups;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square deviation in log space
};

// Sups at or below zero are floored at machine epsilon before taking logs.
// Requires at least 4 positive scales spanning a factor of at least 8.
ExponentFit exponent_fit(const std::vector<double>& scales, const std::vector<double>& sups);

}  // namespace holderlab
