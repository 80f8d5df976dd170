#pragma once

#include <memory>
#include <vector>

#include "holderlab/common.hpp"
#include "holderlab/problem.hpp"

namespace holderlab {

// Piecewise bicubic (4x4 Lagrange) interpolation of values on the square grid
// {-r + i h}^2. Nodes without data are NaN; queries must stay within the
// filled region.
class GridInterpolant {
 public:
  GridInterpolant(double radius, int resolution, std::vector<double> values);

  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  double node(int i, int j) const { return values_[static_cast<std::size_t>(i) * res_ + j]; }

 private:
  double r_;
  int res_;
  double h_;
  std::vector<double> values_;
};

// n = 1: u_{z zbar} = f is Delta u = 4 f. Shortley-Weller differences on the
// grid of the given odd resolution across [-r, r]^2, sparse LU solve.
SolveResult poisson_disc_solve(const DirichletProblem& p, int resolution);

// Poisson-kernel extension of boundary data on the circle of the given radius,
// trapezoid rule with the given node count (at least 64).
class HarmonicExtension {
 public:
  HarmonicExtension(ScalarField phi, int nodes, double radius = 1.0);

  // |z| = r returns phi(z); |z| > r is rejected.
  double operator()(const Vec& z) const;
  Vec gradient(const Vec& z) const;

  ScalarField field() const;
  VectorField gradient_field() const;

 private:
  ScalarField phi_;
  double r_;
  std::vector<double> cos_;
  std::vector<double> sin_;
  std::vector<double> values_;
};

std::shared_ptr<const HarmonicExtension> harmonic_extension_disc(ScalarField phi, int nodes, double radius = 1.0);

}  // namespace holderlab
