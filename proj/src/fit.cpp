#include "holderlab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holderlab/common.hpp"

namespace holderlab {

ExponentFit exponent_fit(const std::vector<double>& scales, const std::vector<double>& sups) {
  if (scales.size() != sups.size()) throw InputError("exponent fit: scales and sups differ in length");
  std::vector<double> xs;
  std::vector<double> ys;
  const double floor = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0) || !std::isfinite(scales[i]) || !std::isfinite(sups[i])) continue;
    xs.push_back(std::log(scales[i]));
    ys.push_back(std::log(std::max(sups[i], floor)));
  }
  if (xs.size() < 4) throw InputError("exponent fit needs at least 4 usable scales");
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  if (*hi - *lo < std::log(8.0) - 1e-12) throw InputError("exponent fit scales must span a factor of 8");

  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  ExponentFit fit;
  fit.scales = scales;
  fit.sups = sups;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace holderlab
