#pragma once

#include <optional>

#include "holderlab/common.hpp"

namespace holderlab {

// A point of C^n stored as 2n reals, with a complex view.
class ComplexPoint {
 public:
  explicit ComplexPoint(Vec real_coords);
  static ComplexPoint from_complex(const CVec& z) { return ComplexPoint(to_real(z)); }

  int n() const { return static_cast<int>(coords_.size() / 2); }
  const Vec& real() const { return coords_; }
  CVec complex() const { return to_complex(coords_); }
  double norm() const { return coords_.norm(); }

 private:
  Vec coords_;
};

// The ball B_r(0) in C^n.
class BallDomain {
 public:
  BallDomain(int n, double r);

  int n() const { return n_; }
  int real_dim() const { return 2 * n_; }
  double radius() const { return r_; }

  bool contains(const Vec& x, double tol = 1e-12) const { return x.norm() <= r_ + tol; }
  double boundary_distance(const Vec& x) const { return r_ - x.norm(); }

 private:
  int n_;
  double r_;
};

// Gamma_a = a a^* / (1 - v(a)) - v(a) I with v(a) = sqrt(1 - |a|^2). Requires 0 < |a| < 1.
CMat gamma_matrix(const CVec& a);

// The automorphism T_a(z) = Gamma_a (z - a) / (1 - a^* z) of the unit ball;
// T_0 is the identity.
class MoebiusMap {
 public:
  explicit MoebiusMap(const CVec& a);
  explicit MoebiusMap(const ComplexPoint& a) : MoebiusMap(a.complex()) {}

  int n() const { return static_cast<int>(a_.size()); }
  const CVec& a() const { return a_; }
  double v() const { return v_; }
  const std::optional<CMat>& gamma() const { return gamma_; }
  bool is_identity() const { return !gamma_.has_value(); }

  // Rejects |z| > 1 + 1e-12.
  CVec apply(const CVec& z) const;
  ComplexPoint apply(const ComplexPoint& z) const { return ComplexPoint::from_complex(apply(z.complex())); }
  Vec apply_real(const Vec& x) const { return to_real(apply(to_complex(x))); }

  // No domain check; valid wherever 1 - a^* z != 0.
  CVec apply_unchecked(const CVec& z) const;

  // |det JT_a(z)|^2 = ((1 - |a|^2) / |1 - a^* z|^2)^{n+1}.
  double jacobian_det_sq(const CVec& z) const;

 private:
  CVec a_;
  double v_;
  std::optional<CMat> gamma_;
};

// |det J|^2 of the complex Jacobian of T_a at z from central differences of T_a
// along the real coordinate axes (T_a is holomorphic, so d/dz_j = d/dx_j).
double numerical_jacobian_det_sq(const MoebiusMap& map, const CVec& z, double step = 1e-5);

// z -> u(T_{-x}(z)); the result at 0 equals u(x).
ScalarField pullback(ScalarField u, const CVec& x);

// z -> f(T_{-x}(z)) |det JT_{-x}(z)|^2. Negative samples of f below -tol are rejected.
ScalarField pullback_density(ScalarField f, const CVec& x, double tol = 1e-12);

}  // namespace holderlab
