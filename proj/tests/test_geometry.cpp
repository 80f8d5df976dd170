#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "holderlab/geometry.hpp"
#include "holderlab/quadrature.hpp"
#include "oracles.hpp"

using namespace holderlab;

namespace {

CVec random_in_ball(std::mt19937_64& rng, int n, double max_radius) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CVec z(n);
  for (int i = 0; i < n; ++i) z(i) = Complex(g(rng), g(rng));
  return z / z.norm() * (max_radius * std::pow(u(rng), 1.0 / (2 * n)));
}

oracle::LVec to_long(const CVec& z) {
  oracle::LVec out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = oracle::LC(z(i).real(), z(i).imag());
  return out;
}

}  // namespace

TEST(Gamma, FixesA) {
  CVec a(2);
  a << 0.5, 0.0;
  const CMat g = gamma_matrix(a);
  EXPECT_LT((g * a - a).norm(), 1e-12);
}

TEST(Gamma, ScalesOrthogonalComplement) {
  CVec a(2);
  a << 0.5, 0.0;
  CVec w(2);
  w << 0.0, 1.0;
  const CVec gw = gamma_matrix(a) * w;
  EXPECT_NEAR(std::abs(gw(0)), 0.0, 1e-12);
  EXPECT_NEAR(gw(1).real(), -std::sqrt(3.0) / 2.0, 1e-12);
  EXPECT_NEAR(gw(1).imag(), 0.0, 1e-12);
}

TEST(Gamma, MatchesExtendedPrecision) {
  CVec a(2);
  a << Complex(0.3, 0.4), Complex(0.1, 0.0);
  const CMat g = gamma_matrix(a);
  const auto ref = oracle::gamma(to_long(a));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_NEAR(g(i, j).real(), static_cast<double>(ref[i * 2 + j].real()), 1e-14);
      EXPECT_NEAR(g(i, j).imag(), static_cast<double>(ref[i * 2 + j].imag()), 1e-14);
    }
  }
}

TEST(Gamma, Spectrum) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 3; ++n) {
    const CVec a = random_in_ball(rng, n, 0.9);
    const CMat g = gamma_matrix(a);
    const double v = std::sqrt(1.0 - a.squaredNorm());
    EXPECT_LT((g * a - a).norm(), 1e-12);
    if (n > 1) {
      CVec w = CVec::Zero(n);
      w(0) = -std::conj(a(1));
      w(1) = std::conj(a(0));
      EXPECT_LT((g * w + v * w).norm(), 1e-12);
    }
  }
}

TEST(Gamma, RejectsZeroAndBoundary) {
  EXPECT_THROW(gamma_matrix(CVec::Zero(2)), DomainError);
  CVec a(1);
  a << 1.0;
  EXPECT_THROW(gamma_matrix(a), DomainError);
}

TEST(Moebius, ZeroIsIdentity) {
  const MoebiusMap m(CVec::Zero(2));
  EXPECT_TRUE(m.is_identity());
  EXPECT_DOUBLE_EQ(m.v(), 1.0);
  CVec z(2);
  z << Complex(0.2, -0.1), Complex(0.3, 0.4);
  EXPECT_EQ((m.apply(z) - z).norm(), 0.0);
}

TEST(Moebius, SendsAToZeroAndZeroToMinusA) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const CVec a = random_in_ball(rng, n, 0.95);
    const MoebiusMap m(a);
    EXPECT_LT(m.apply(a).norm(), 1e-12);
    EXPECT_LT((m.apply(CVec::Zero(n)) + a).norm(), 1e-12);
    EXPECT_NEAR(m.v() * m.v() + a.squaredNorm(), 1.0, 1e-14);
  }
}

TEST(Moebius, InverseViaMinusX) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const CVec x = random_in_ball(rng, 2, 0.9);
    EXPECT_LT((MoebiusMap(CVec(-x)).apply(CVec::Zero(2)) - x).norm(), 1e-12);
    EXPECT_LT(MoebiusMap(x).apply(x).norm(), 1e-12);
  }
}

TEST(Moebius, PreservesSphere) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 3;
    const CVec a = random_in_ball(rng, n, 0.95);
    CVec z(n);
    for (int i = 0; i < n; ++i) z(i) = Complex(g(rng), g(rng));
    z /= z.norm();
    worst = std::max(worst, std::abs(MoebiusMap(a).apply(z).norm() - 1.0));
    const CVec inner = random_in_ball(rng, n, 0.99);
    EXPECT_LT(MoebiusMap(a).apply(inner).norm(), 1.0);
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Moebius, MatchesExtendedPrecision) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    const CVec a = random_in_ball(rng, n, 0.9);
    const CVec z = random_in_ball(rng, n, 1.0);
    const CVec got = MoebiusMap(a).apply(z);
    const auto ref = oracle::moebius(to_long(a), to_long(z));
    for (int i = 0; i < n; ++i) EXPECT_NEAR(std::abs(got(i) - Complex(ref[i])), 0.0, 1e-13);
  }
}

TEST(Moebius, RejectsOutsideBall) {
  CVec a(1);
  a << 0.3;
  CVec z(1);
  z << 1.01;
  EXPECT_THROW(MoebiusMap(a).apply(z), DomainError);
}

TEST(Jacobian, IdentityIsOne) {
  const MoebiusMap m(CVec::Zero(3));
  std::mt19937_64 rng(15);
  for (int i = 0; i < 10; ++i) EXPECT_DOUBLE_EQ(m.jacobian_det_sq(random_in_ball(rng, 3, 1.0)), 1.0);
}

TEST(Jacobian, HalfAxisAtA) {
  CVec a(2);
  a << 0.5, 0.0;
  const MoebiusMap m(a);
  EXPECT_NEAR(m.jacobian_det_sq(a), 64.0 / 27.0, 1e-12);
  EXPECT_NEAR(static_cast<double>(oracle::jacobian_det_sq(to_long(a), to_long(a))), 64.0 / 27.0, 1e-8);
}

TEST(Jacobian, ClosedFormMatchesFiniteDifferences) {
  std::mt19937_64 rng(16);
  double worst = 0.0;
  double worst_lib_fd = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 3;
    const CVec a = random_in_ball(rng, n, 0.9);
    const CVec z = random_in_ball(rng, n, 0.95);
    const MoebiusMap m(a);
    const double closed = m.jacobian_det_sq(z);
    EXPECT_GT(closed, 0.0);
    const double ref = static_cast<double>(oracle::jacobian_det_sq(to_long(a), to_long(z)));
    worst = std::max(worst, std::abs(closed - ref) / ref);
    worst_lib_fd = std::max(worst_lib_fd, std::abs(numerical_jacobian_det_sq(m, z) - closed) / closed);
  }
  EXPECT_LT(worst, 1e-6);
  EXPECT_LT(worst_lib_fd, 1e-6);
}

TEST(Pullback, AtZeroGivesValueAtX) {
  const ScalarField u = [](const Vec& p) { return std::sin(p(0)) + p(1) * p(2) - p(3) * p(3); };
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const CVec x = random_in_ball(rng, 2, 0.9);
    EXPECT_NEAR(pullback(u, x)(Vec::Zero(4)), u(to_real(x)), 1e-13);
  }
}

TEST(Pullback, ZeroIsIdentity) {
  const ScalarField u = [](const Vec& p) { return std::exp(p(0)) * p(1); };
  const Vec p = make_vec({0.3, -0.2});
  EXPECT_EQ(pullback(u, CVec::Zero(1))(p), u(p));
}

TEST(Pullback, SquaredNormComposesWithMap) {
  const ScalarField u = [](const Vec& p) { return p.squaredNorm(); };
  std::mt19937_64 rng(18);
  for (int i = 0; i < 20; ++i) {
    const CVec x = random_in_ball(rng, 2, 0.8);
    const CVec z = random_in_ball(rng, 2, 1.0);
    const auto ref = oracle::moebius(to_long(CVec(-x)), to_long(z));
    EXPECT_NEAR(pullback(u, x)(to_real(z)), static_cast<double>(oracle::norm2(ref)), 1e-13);
  }
}

TEST(PullbackDensity, ConstantDensityClosedForm) {
  const ScalarField one = [](const Vec&) { return 1.0; };
  std::mt19937_64 rng(19);
  for (int i = 0; i < 50; ++i) {
    const CVec x = random_in_ball(rng, 1, 0.9);
    const CVec z = random_in_ball(rng, 1, 1.0);
    const double expected = std::pow(1.0 - std::norm(x(0)), 2) / std::pow(std::norm(1.0 + std::conj(x(0)) * z(0)), 2);
    const double got = pullback_density(one, x)(to_real(z));
    EXPECT_NEAR(got / expected, 1.0, 1e-12);
  }
}

TEST(PullbackDensity, ZeroLeavesDensity) {
  const ScalarField f = [](const Vec& p) { return 1.0 + p(0) * p(0); };
  const Vec p = make_vec({0.1, 0.7});
  EXPECT_DOUBLE_EQ(pullback_density(f, CVec::Zero(1))(p), f(p));
}

TEST(PullbackDensity, PreservesTotalMass) {
  // Monte Carlo over the unit disc with a fixed seed.
  const ScalarField f = [](const Vec& p) { return 1.0 + p(0) + 0.5 * p(1) * p(1); };
  CVec x(1);
  x << Complex(0.3, -0.2);
  const ScalarField fx = pullback_density(f, x);
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double sum_f = 0.0;
  double sum_fx = 0.0;
  const int samples = 4000000;
  int inside = 0;
  for (int i = 0; i < samples; ++i) {
    const Vec p = make_vec({u(rng), u(rng)});
    if (p.squaredNorm() >= 1.0) continue;
    ++inside;
    sum_f += f(p);
    sum_fx += fx(p);
  }
  const double scale = 4.0 / samples;
  EXPECT_NEAR(sum_f * scale, std::numbers::pi * (1.0 + 0.125), 1e-2);
  EXPECT_NEAR(sum_fx * scale, sum_f * scale, 1e-2);
  EXPECT_GT(inside, 0);
}

TEST(PullbackDensity, RejectsNegativeDensity) {
  const ScalarField f = [](const Vec&) { return -1.0; };
  CVec x(1);
  x << 0.2;
  EXPECT_THROW(pullback_density(f, x)(make_vec({0.0, 0.0})), InputError);
}

TEST(Quadrature, WeightsAndLinearMoments) {
  for (int dim : {2, 3, 4, 6}) {
    const auto q = SphereQuadrature::make(dim, 16);
    double total = 0.0;
    for (double w : q.weights()) {
      EXPECT_GT(w, 0.0);
      total += w;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (int k = 0; k < dim; ++k) {
      EXPECT_NEAR(q.average([k](const Vec& y) { return y(k); }), 0.0, 1e-10);
    }
    for (const Vec& y : q.nodes()) EXPECT_NEAR(y.norm(), 1.0, 1e-14);
  }
}

TEST(SphereMean, ConstantAndSquaredNorm) {
  for (int dim : {2, 3, 4}) {
    const auto q = SphereQuadrature::make(dim, 16);
    Vec x = Vec::Zero(dim);
    x(0) = 0.2;
    x(dim - 1) = -0.1;
    EXPECT_NEAR(sphere_mean([](const Vec&) { return 3.5; }, x, 0.3, q), 3.5, 1e-14);
    EXPECT_NEAR(sphere_mean([](const Vec& y) { return y.squaredNorm(); }, x, 0.3, q), x.squaredNorm() + 0.09, 1e-13);
  }
}

TEST(SphereMean, PluriharmonicMeanValue) {
  const ScalarField v = [](const Vec& p) { return p(0) * p(0) - p(1) * p(1); };
  const auto q2 = SphereQuadrature::make(2, 64);
  const ScalarField v4 = [](const Vec& p) { return p(0) * p(0) - p(1) * p(1) + p(2) * p(3); };
  const auto q4 = SphereQuadrature::make(4, 16);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const CVec x1 = random_in_ball(rng, 1, 0.5);
    const double h = 0.45 * u(rng) + 1e-3;
    EXPECT_NEAR(sphere_mean(v, to_real(x1), h, q2, 1.0), v(to_real(x1)), 1e-10);
    const CVec x2 = random_in_ball(rng, 2, 0.5);
    EXPECT_NEAR(sphere_mean(v4, to_real(x2), h, q4, 1.0), v4(to_real(x2)), 1e-10);
  }
}

TEST(SphereMean, RejectsBallOutsideDomain) {
  const auto q = SphereQuadrature::make(2, 16);
  EXPECT_THROW(sphere_mean([](const Vec&) { return 0.0; }, make_vec({0.8, 0.0}), 0.3, q, 1.0), DomainError);
}

TEST(BallDomain, Basics) {
  const BallDomain b(2, 0.5);
  EXPECT_EQ(b.real_dim(), 4);
  EXPECT_TRUE(b.contains(make_vec({0.5, 0.0, 0.0, 0.0})));
  EXPECT_FALSE(b.contains(make_vec({0.5, 0.1, 0.0, 0.0})));
  EXPECT_NEAR(b.boundary_distance(make_vec({0.3, 0.0, 0.0, 0.0})), 0.2, 1e-15);
  EXPECT_THROW(BallDomain(0, 1.0), InputError);
  EXPECT_THROW(BallDomain(1, -1.0), InputError);
}
