#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "holderlab/common.hpp"
#include "holderlab/problem.hpp"

namespace holderlab {

// u(z) = g(|z|^2) with (g')^{n-1} (g' + s g'') = F(s), g(r^2) = c, obtained from
// g'(s) = (n s^{-n} int_0^s t^{n-1} F(t) dt)^{1/n} and a second quadrature.
class RadialProfile {
 public:
  RadialProfile(std::function<double(double)> F, double c, double r, int n, int nodes);

  int n() const { return n_; }
  double radius() const { return r_; }
  const std::vector<double>& nodes() const { return s_; }

  double value(double s) const;
  double derivative(double s) const;
  double second_derivative(double s) const;
  // g'(s) from the defining quadrature rather than the interpolant.
  double derivative_exact(double s) const;

  ScalarField lift() const;
  VectorField lift_gradient() const;

 private:
  std::function<double(double)> F_;
  double c_;
  double r_;
  int n_;
  std::vector<double> s_;
  std::vector<double> I_;
  std::vector<double> g_;
  std::vector<double> dg_;
  std::vector<double> ddg_;
  std::shared_ptr<const void> interp_g_;
  std::shared_ptr<const void> interp_dg_;
};

std::shared_ptr<const RadialProfile> radial_solve(std::function<double(double)> F, double c, double r, int n,
                                                  int nodes = 10000);

// Radial problem: F(s) = f at a point of norm sqrt(s), c = phi on the sphere.
// Samples the lift on the lattice of the given odd resolution.
SolveResult radial_solve_problem(const DirichletProblem& p, int sample_resolution, int nodes = 10000);

}  // namespace holderlab
