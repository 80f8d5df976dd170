#pragma once

#include <optional>

#include "holderlab/common.hpp"

namespace holderlab {

// Real Hessian of u at x by second-order central differences.
Eigen::MatrixXd real_hessian(const ScalarField& u, const Vec& x, double step);

// (u_{i jbar}) at z (real layout, length 2n) from central differences,
// u_{i jbar} = 1/4 [(u_{x_i x_j} + u_{y_i y_j}) + i (u_{x_i y_j} - u_{y_i x_j})],
// symmetrized to a Hermitian matrix. With domain_radius set, the stencil must
// stay inside the closed ball of that radius.
CMat complex_hessian(const ScalarField& u, const Vec& z, double step,
                     std::optional<double> domain_radius = std::nullopt);

// Complex Hessian from a real Hessian in the layout (x_1, y_1, ..., x_n, y_n).
CMat complex_hessian_from_real(const Eigen::MatrixXd& hess);

double min_eigenvalue(const CMat& hermitian);

// det(M)^{1/n} of a Hermitian PSD matrix from its eigenvalues; slightly
// negative eigenvalues are clamped to 0.
double det_root(const CMat& hermitian);

struct Superadditivity {
  double lhs = 0.0;  // det(A+B)^{1/n}
  double rhs = 0.0;  // det(A)^{1/n} + det(B)^{1/n}
  double slack = 0.0;
  bool holds = false;
};

// Rejects inputs with an eigenvalue below -psd_tol.
Superadditivity det_root_superadditivity(const CMat& a, const CMat& b, double psd_tol = 1e-12,
                                         double slack_tol = 1e-12);

}  // namespace holderlab
