#include "holderlab/hessian.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace holderlab {

Eigen::MatrixXd real_hessian(const ScalarField& u, const Vec& x, double step) {
  const Eigen::Index m = x.size();
  Eigen::MatrixXd h(m, m);
  const double u0 = u(x);
  const double s2 = step * step;
  for (Eigen::Index a = 0; a < m; ++a) {
    Vec p = x;
    Vec q = x;
    p(a) += step;
    q(a) -= step;
    h(a, a) = (u(p) - 2.0 * u0 + u(q)) / s2;
    for (Eigen::Index b = a + 1; b < m; ++b) {
      Vec pp = x, pm = x, mp = x, mm = x;
      pp(a) += step, pp(b) += step;
      pm(a) += step, pm(b) -= step;
      mp(a) -= step, mp(b) += step;
      mm(a) -= step, mm(b) -= step;
      h(a, b) = h(b, a) = (u(pp) - u(pm) - u(mp) + u(mm)) / (4.0 * s2);
    }
  }
  return h;
}

CMat complex_hessian_from_real(const Eigen::MatrixXd& hess) {
  const Eigen::Index n = hess.rows() / 2;
  CMat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = hess(2 * i, 2 * j) + hess(2 * i + 1, 2 * j + 1);
      const double im = hess(2 * i, 2 * j + 1) - hess(2 * i + 1, 2 * j);
      out(i, j) = 0.25 * Complex(re, im);
    }
  }
  return 0.5 * (out + out.adjoint());
}

CMat complex_hessian(const ScalarField& u, const Vec& z, double step, std::optional<double> domain_radius) {
  if (z.size() % 2 != 0) throw InputError("complex Hessian needs an even real dimension");
  if (!(step > 0.0)) throw InputError("complex Hessian step must be positive");
  if (domain_radius && z.norm() + std::sqrt(2.0) * step > *domain_radius + 1e-12) {
    throw DomainError("complex Hessian stencil leaves the domain");
  }
  return complex_hessian_from_real(real_hessian(u, z, step));
}

double min_eigenvalue(const CMat& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double det_root(const CMat& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double log_sum = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) <= 0.0) return 0.0;
    log_sum += std::log(ev(i));
  }
  return std::exp(log_sum / static_cast<double>(ev.size()));
}

Superadditivity det_root_superadditivity(const CMat& a, const CMat& b, double psd_tol, double slack_tol) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw InputError("superadditivity needs square matrices of equal size");
  }
  if (min_eigenvalue(a) < -psd_tol || min_eigenvalue(b) < -psd_tol) {
    throw InputError("superadditivity input is not positive semidefinite");
  }
  Superadditivity s;
  s.lhs = det_root(a + b);
  s.rhs = det_root(a) + det_root(b);
  s.slack = s.lhs - s.rhs;
  s.holds = s.slack >= -slack_tol * std::max(1.0, s.lhs);
  return s;
}

}  // namespace holderlab
