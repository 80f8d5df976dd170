#include "holderlab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace holderlab {

GaussRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw InputError("Gauss-Legendre rule needs at least one node");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

double SphereQuadrature::pairwise_sum(std::vector<double>& terms) {
  if (terms.empty()) return 0.0;
  std::size_t len = terms.size();
  while (len > 1) {
    const std::size_t half = (len + 1) / 2;
    for (std::size_t i = 0; i + half < len; ++i) terms[i] += terms[i + half];
    len = half;
  }
  return terms[0];
}

SphereQuadrature SphereQuadrature::make(int dim, int order, std::uint64_t seed) {
  if (dim < 1) throw InputError("sphere dimension must be positive");
  if (order < 2) throw InputError("sphere quadrature order must be at least 2");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<Vec> nodes;
  std::vector<double> weights;

  if (dim == 1) {
    nodes = {make_vec({1.0}), make_vec({-1.0})};
    weights = {0.5, 0.5};
  } else if (dim == 2) {
    for (int k = 0; k < order; ++k) {
      const double th = two_pi * k / order;
      nodes.push_back(make_vec({std::cos(th), std::sin(th)}));
      weights.push_back(1.0 / order);
    }
  } else if (dim == 3) {
    // Archimedes: cos(theta) is uniform on [-1, 1] under the surface measure.
    const GaussRule g = gauss_legendre(std::max(2, order / 2), -1.0, 1.0);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double c = g.nodes[i];
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      for (int k = 0; k < order; ++k) {
        const double ph = two_pi * k / order;
        nodes.push_back(make_vec({s * std::cos(ph), s * std::sin(ph), c}));
        weights.push_back(0.5 * g.weights[i] / order);
      }
    }
  } else if (dim == 4) {
    const GaussRule g = gauss_legendre(std::max(2, order / 2), 0.0, 1.0);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double r2 = std::sqrt(g.nodes[i]);
      const double r1 = std::sqrt(1.0 - g.nodes[i]);
      for (int k1 = 0; k1 < order; ++k1) {
        const double a1 = two_pi * k1 / order;
        for (int k2 = 0; k2 < order; ++k2) {
          const double a2 = two_pi * (k2 + 0.5) / order;
          nodes.push_back(
              make_vec({r1 * std::cos(a1), r1 * std::sin(a1), r2 * std::cos(a2), r2 * std::sin(a2)}));
          weights.push_back(g.weights[i] / (static_cast<double>(order) * order));
        }
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const int pairs = order * order;
    for (int k = 0; k < pairs; ++k) {
      Vec p(dim);
      for (int d = 0; d < dim; ++d) p(d) = normal(rng);
      p /= p.norm();
      nodes.push_back(p);
      nodes.push_back(-p);
      weights.push_back(0.5 / pairs);
      weights.push_back(0.5 / pairs);
    }
  }
  return SphereQuadrature(dim, std::move(nodes), std::move(weights));
}

double sphere_mean(const ScalarField& v, const Vec& x, double h, const SphereQuadrature& q,
                   std::optional<double> domain_radius) {
  if (x.size() != q.dim()) {
    throw InputError("sphere_mean: point dimension " + std::to_string(x.size()) +
                     " does not match quadrature dimension " + std::to_string(q.dim()));
  }
  if (!(h > 0.0)) throw DomainError("sphere_mean: radius must be positive");
  if (domain_radius && x.norm() + h > *domain_radius * (1.0 + 1e-12)) {
    throw DomainError("sphere_mean: ball B_h(x) not contained in the domain");
  }
  return q.average([&](const Vec& e) { return v(x + h * e); });
}

}  // namespace holderlab
