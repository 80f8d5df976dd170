#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "holderlab/common.hpp"

namespace holderlab {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

// Normalized surface measure on the unit sphere S^{m-1} of R^m.
//   m = 1: the two points {-1, +1}
//   m = 2: order-point trapezoid rule on the circle
//   m = 3: Gauss in cos(theta) x trapezoid in the azimuth
//   m = 4: Hopf coordinates (|z_2|^2 uniform on [0,1], both phases uniform);
//          Gauss in |z_2|^2 x trapezoid x trapezoid
//   m > 4: seeded Monte Carlo with antithetic pairs
class SphereQuadrature {
 public:
  static SphereQuadrature make(int dim, int order, std::uint64_t seed = 0x5eedULL);

  int dim() const { return dim_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<Vec>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  // Weighted sum of g over the nodes (pairwise summation in node order).
  template <class G>
  double average(G&& g) const {
    std::vector<double> terms(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) terms[i] = weights_[i] * g(nodes_[i]);
    return pairwise_sum(terms);
  }

  static double pairwise_sum(std::vector<double>& terms);

 private:
  SphereQuadrature(int dim, std::vector<Vec> nodes, std::vector<double> weights)
      : dim_(dim), nodes_(std::move(nodes)), weights_(std::move(weights)) {}

  int dim_;
  std::vector<Vec> nodes_;
  std::vector<double> weights_;
};

// Surface average of v over the sphere of radius h about x. When domain_radius
// is given, the closed ball B_h(x) must lie inside B_{domain_radius}(0).
double sphere_mean(const ScalarField& v, const Vec& x, double h, const SphereQuadrature& q,
                   std::optional<double> domain_radius = std::nullopt);

}  // namespace holderlab
