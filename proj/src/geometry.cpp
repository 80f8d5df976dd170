#include "holderlab/geometry.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>

namespace holderlab {

namespace {

constexpr double kBallTol = 1e-12;

void require_finite(const Vec& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x(i))) throw InputError("point has a non-finite coordinate");
  }
}

}  // namespace

ComplexPoint::ComplexPoint(Vec real_coords) : coords_(std::move(real_coords)) {
  if (coords_.size() == 0 || coords_.size() % 2 != 0) {
    throw InputError("complex point needs 2n real coordinates, got " + std::to_string(coords_.size()));
  }
  require_finite(coords_);
}

BallDomain::BallDomain(int n, double r) : n_(n), r_(r) {
  if (n < 1) throw InputError("ball dimension must be at least 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw InputError("ball radius must be positive and finite");
}

CMat gamma_matrix(const CVec& a) {
  const double norm2 = a.squaredNorm();
  if (norm2 == 0.0) throw DomainError("gamma_matrix: a = 0 is handled by the identity map");
  if (norm2 >= 1.0) throw DomainError("gamma_matrix: requires |a| < 1");
  const double v = std::sqrt(1.0 - norm2);
  const Eigen::Index n = a.size();
  return a * a.adjoint() / (1.0 - v) - v * CMat::Identity(n, n);
}

MoebiusMap::MoebiusMap(const CVec& a) : a_(a) {
  const double norm2 = a.squaredNorm();
  if (!(norm2 < 1.0)) throw DomainError("MoebiusMap: requires |a| < 1");
  v_ = std::sqrt(1.0 - norm2);
  if (norm2 > 0.0) gamma_ = gamma_matrix(a);
}

CVec MoebiusMap::apply_unchecked(const CVec& z) const {
  if (!gamma_) return z;
  const Complex denom = Complex(1.0, 0.0) - a_.dot(z);  // dot conjugates its first argument
  return (*gamma_) * ((z - a_) / denom);
}

CVec MoebiusMap::apply(const CVec& z) const {
  if (z.size() != a_.size()) throw InputError("MoebiusMap::apply: dimension mismatch");
  if (z.norm() > 1.0 + kBallTol) throw DomainError("MoebiusMap::apply: |z| > 1");
  return apply_unchecked(z);
}

double MoebiusMap::jacobian_det_sq(const CVec& z) const {
  if (z.size() != a_.size()) throw InputError("jacobian_det_sq: dimension mismatch");
  if (z.norm() > 1.0 + kBallTol) throw DomainError("jacobian_det_sq: |z| > 1");
  if (!gamma_) return 1.0;
  const double q = std::norm(Complex(1.0, 0.0) - a_.dot(z));
  return std::pow(v_ * v_ / q, static_cast<double>(n() + 1));
}

double numerical_jacobian_det_sq(const MoebiusMap& map, const CVec& z, double step) {
  const Eigen::Index n = z.size();
  CMat jac(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    CVec plus = z;
    CVec minus = z;
    plus(j) += step;
    minus(j) -= step;
    jac.col(j) = (map.apply_unchecked(plus) - map.apply_unchecked(minus)) / (2.0 * step);
  }
  return std::norm(jac.determinant());
}

ScalarField pullback(ScalarField u, const CVec& x) {
  const MoebiusMap map(CVec(-x));
  if (map.is_identity()) return u;
  return [u = std::move(u), map](const Vec& z) { return u(to_real(map.apply(to_complex(z)))); };
}

ScalarField pullback_density(ScalarField f, const CVec& x, double tol) {
  const MoebiusMap map(CVec(-x));
  return [f = std::move(f), map, tol](const Vec& z) {
    const CVec zc = to_complex(z);
    const double value = f(to_real(map.apply(zc)));
    if (value < -tol) throw InputError("pullback_density: negative density sample");
    return std::max(value, 0.0) * map.jacobian_det_sq(zc);
  };
}

}  // namespace holderlab
