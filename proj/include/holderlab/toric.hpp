#pragma once

#include <memory>
#include <vector>

#include "holderlab/common.hpp"
#include "holderlab/problem.hpp"

namespace holderlab {

// Values on the triangle grid {(i, j) delta : i, j >= 0, i + j <= M} in the
// coordinates rho_k = |z_k|^2, with total-degree-3 Lagrange interpolation on
// the ten-node sub-triangle containing the query.
class ToricInterpolant {
 public:
  ToricInterpolant(int m, double delta, std::vector<double> values);

  int m() const { return m_; }
  double delta() const { return delta_; }
  double node(int i, int j) const { return values_[index(i, j)]; }
  std::size_t index(int i, int j) const;

  double value(double rho1, double rho2) const;
  // (dv/drho1, dv/drho2)
  std::pair<double, double> gradient(double rho1, double rho2) const;

  // u(z) = v(|z_1|^2, |z_2|^2) and its real gradient.
  ScalarField lift() const;
  VectorField lift_gradient() const;

 private:
  void anchor(double x, double y, int& i0, int& j0) const;

  int m_;
  double delta_;
  std::vector<double> values_;
  std::vector<std::size_t> row_start_;
};

struct ToricOptions {
  int nodes = 129;  // nodes along each leg of the triangle
  double tol = 1e-10;
  int max_iterations = 60;
  int sample_resolution = 17;
};

struct ToricSolution {
  std::shared_ptr<const ToricInterpolant> v;
  SolveResult result;
};

// Damped Newton iteration for (v_1 + rho_1 v_11)(v_2 + rho_2 v_22) - rho_1 rho_2 v_12^2 = f
// with v = phi on rho_1 + rho_2 = r^2.
ToricSolution toric_solve(const DirichletProblem& p, const ToricOptions& options = {});

// Checks a supplied explicit solution: boundary values, det(u_{i jbar}) = f and
// plurisubharmonicity at seeded points. Throws when the candidate fails.
SolveResult certify_candidate(const DirichletProblem& p, int sample_resolution, double tol = 1e-6);

}  // namespace holderlab
