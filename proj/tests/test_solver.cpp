#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "holderlab/barrier.hpp"
#include "holderlab/hessian.hpp"
#include "holderlab/poisson.hpp"
#include "holderlab/radial.hpp"
#include "holderlab/solve.hpp"
#include "holderlab/toric.hpp"
#include "oracles.hpp"

using namespace holderlab;

namespace {

DirichletProblem problem(int n, Symmetry sym, ScalarField phi, ScalarField f_root, double r = 1.0) {
  DirichletProblem p;
  p.domain = BallDomain(n, r);
  p.phi = std::move(phi);
  p.f_root = std::move(f_root);
  p.symmetry = sym;
  return p;
}

const ScalarField kZero = [](const Vec&) { return 0.0; };
const ScalarField kOne = [](const Vec&) { return 1.0; };

CMat random_psd(std::mt19937_64& rng, int n, bool singular) {
  std::normal_distribution<double> g;
  CMat m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<CMat> qr(m);
  const CMat q = qr.householderQ();
  Eigen::VectorXd eig(n);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < n; ++i) eig(i) = u(rng);
  if (singular) eig(0) = 0.0;
  return q * eig.cast<Complex>().asDiagonal() * q.adjoint();
}

double max_error_against(const SampledFunction& u, const ScalarField& exact, double max_norm = 2.0) {
  double e = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.points[i].norm() > max_norm) continue;
    e = std::max(e, std::abs(u.values[i] - exact(u.points[i])));
  }
  return e;
}

}  // namespace

TEST(ComplexHessian, SquaredNormIsIdentity) {
  for (int n = 1; n <= 3; ++n) {
    Vec z = Vec::Zero(2 * n);
    z(0) = 0.3;
    const CMat h = complex_hessian([](const Vec& x) { return x.squaredNorm(); }, z, 1e-3);
    EXPECT_LT((h - CMat::Identity(n, n)).norm(), 1e-8);
  }
}

TEST(ComplexHessian, PluriharmonicIsZero) {
  const ScalarField u = [](const Vec& x) { return x(0) * x(0) - x(1) * x(1) + x(2) * x(3); };
  const CMat h = complex_hessian(u, make_vec({0.1, 0.2, -0.3, 0.1}), 1e-3);
  EXPECT_LT(h.norm(), 1e-8);
}

TEST(ComplexHessian, QuarticEntry) {
  const ScalarField u = [](const Vec& x) { return std::pow(x(0) * x(0) + x(1) * x(1), 2); };
  for (double step : {1e-2, 5e-3}) {
    const CMat h = complex_hessian(u, make_vec({0.5, 0.0}), step);
    EXPECT_NEAR(h(0, 0).real(), 1.0, 2.0 * step * step);
    EXPECT_NEAR(h(0, 0).imag(), 0.0, 1e-12);
  }
}

TEST(ComplexHessian, IsHermitianAndRejectsOutsideStencil) {
  const ScalarField u = [](const Vec& x) { return std::exp(x(0) - x(3)) + x(1) * x(2) * x(2); };
  const CMat h = complex_hessian(u, make_vec({0.1, 0.2, 0.3, 0.4}), 1e-3);
  EXPECT_LT((h - h.adjoint()).norm(), 1e-14);
  EXPECT_THROW(complex_hessian(u, make_vec({0.9995, 0.0, 0.0, 0.0}), 1e-3, 1.0), DomainError);
}

TEST(Superadditivity, IdentityEquality) {
  const auto s = det_root_superadditivity(CMat::Identity(2, 2), CMat::Identity(2, 2));
  EXPECT_NEAR(s.lhs, 2.0, 1e-14);
  EXPECT_NEAR(s.rhs, 2.0, 1e-14);
  EXPECT_TRUE(s.holds);
}

TEST(Superadditivity, SingularSummands) {
  CMat a = CMat::Zero(2, 2);
  CMat b = CMat::Zero(2, 2);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  const auto s = det_root_superadditivity(a, b);
  EXPECT_NEAR(s.lhs, 1.0, 1e-14);
  EXPECT_NEAR(s.rhs, 0.0, 1e-7);
  EXPECT_TRUE(s.holds);
}

TEST(Superadditivity, RandomPairs) {
  std::mt19937_64 rng(2024);
  double worst = INFINITY;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 1 + trial % 3;
    const CMat a = random_psd(rng, n, trial % 7 == 0);
    const CMat b = random_psd(rng, n, trial % 11 == 0);
    const auto s = det_root_superadditivity(a, b);
    EXPECT_TRUE(s.holds);
    worst = std::min(worst, s.lhs - s.rhs);
  }
  EXPECT_GE(worst, -1e-12);
}

TEST(Superadditivity, RejectsIndefinite) {
  CMat a = CMat::Identity(2, 2);
  a(1, 1) = -0.1;
  EXPECT_THROW(det_root_superadditivity(a, CMat::Identity(2, 2)), InputError);
}

TEST(PoissonDisc, QuadraticSolution) {
  const auto p = problem(1, Symmetry::Disc, kZero, kOne);
  const auto res = poisson_disc_solve(p, 65);
  const double h = res.grid_step;
  EXPECT_LT(max_error_against(res.u, [](const Vec& x) { return x.squaredNorm() - 1.0; }), 10.0 * h * h);
  EXPECT_GE(res.psh_margin, -10.0 * h * h);
}

TEST(PoissonDisc, LinearBoundaryData) {
  const ScalarField phi = [](const Vec& x) { return x(0); };
  const auto res = poisson_disc_solve(problem(1, Symmetry::Disc, phi, kZero), 65);
  EXPECT_LT(max_error_against(res.u, phi), 1e-10);
}

TEST(PoissonDisc, SecondOrderConvergence) {
  const ScalarField exact = [](const Vec& x) { return std::exp(x(0)) * std::cos(x(1)); };
  const auto p = problem(1, Symmetry::Disc, exact, kZero);
  const double e1 = max_error_against(poisson_disc_solve(p, 65).u, exact);
  const double e2 = max_error_against(poisson_disc_solve(p, 129).u, exact);
  EXPECT_GE(e1 / e2, 3.5);
  EXPECT_LE(e1 / e2, 4.5);
}

TEST(PoissonDisc, MatchesPoissonKernelOracle) {
  const double a = 0.5;
  const ScalarField phi = [a](const Vec& x) { return std::pow(std::abs(x(0) / x.norm()), 1.0 + a); };
  const auto res = poisson_disc_solve(problem(1, Symmetry::Disc, phi, kZero), 257);
  const auto phi_angle = [a](double t) { return std::pow(std::abs(std::cos(t)), 1.0 + a); };
  double worst = 0.0;
  for (std::size_t i = 0; i < res.u.size(); i += 7) {
    const Vec& x = res.u.points[i];
    if (x.norm() > 0.95) continue;
    worst = std::max(worst, std::abs(res.u.values[i] - oracle::poisson_integral(phi_angle, x(0), x(1), 8192)));
  }
  EXPECT_LT(worst, 5e-3);
}

TEST(HarmonicExtension, ConstantAndLinear) {
  const HarmonicExtension one(kOne, 256);
  const HarmonicExtension lin([](const Vec& x) { return x(0); }, 256);
  for (const Vec& z : {make_vec({0.0, 0.0}), make_vec({0.5, -0.3}), make_vec({-0.9, 0.1})}) {
    EXPECT_NEAR(one(z), 1.0, 1e-12);
    EXPECT_NEAR(lin(z), z(0), 1e-10);
  }
}

TEST(HarmonicExtension, FourierMode) {
  const ScalarField phi = [](const Vec& x) { return std::cos(3.0 * std::atan2(x(1), x(0))); };
  const HarmonicExtension u(phi, 1024);
  for (double r : {0.0, 0.3, 0.7, 0.9}) {
    for (double t : {0.0, 1.0, 2.5}) {
      const Vec z = make_vec({r * std::cos(t), r * std::sin(t)});
      EXPECT_NEAR(u(z), r * r * r * std::cos(3.0 * t), 1e-10);
    }
  }
}

TEST(HarmonicExtension, BoundaryAndOutside) {
  const ScalarField phi = [](const Vec& x) { return x(1) * x(1); };
  const HarmonicExtension u(phi, 128);
  EXPECT_DOUBLE_EQ(u(make_vec({0.0, 1.0})), 1.0);
  EXPECT_THROW(u(make_vec({1.1, 0.0})), DomainError);
  EXPECT_THROW(HarmonicExtension(phi, 32), InputError);
}

TEST(Radial, ConstantDensity) {
  for (int n = 1; n <= 3; ++n) {
    const auto g = radial_solve([](double) { return 1.0; }, 0.0, 1.0, n);
    double worst = 0.0;
    for (double s = 0.0; s <= 1.0; s += 0.01) worst = std::max(worst, std::abs(g->value(s) - (s - 1.0)));
    EXPECT_LT(worst, 1e-10) << "n=" << n;
  }
}

TEST(Radial, ZeroDensity) {
  const auto g = radial_solve([](double) { return 0.0; }, 0.0, 1.0, 2);
  for (double s : {0.0, 0.4, 1.0}) EXPECT_EQ(g->value(s), 0.0);
}

TEST(Radial, LinearDensityClosedForm) {
  const auto g = radial_solve([](double s) { return s; }, 0.0, 1.0, 2);
  for (double s : {0.01, 0.2, 0.5, 0.9, 1.0}) {
    EXPECT_NEAR(g->derivative_exact(s), std::sqrt(2.0 * s / 3.0), 1e-10);
    const double exact = std::sqrt(2.0 / 3.0) * (2.0 / 3.0) * (std::pow(s, 1.5) - 1.0);
    EXPECT_NEAR(g->value(s), exact, 1e-9);
  }
}

TEST(Radial, ReducedEquationAndLift) {
  const auto F = [](double s) { return 1.0 + s * s; };
  const auto g = radial_solve(F, 0.5, 1.0, 2);
  for (double s : {0.1, 0.4, 0.8}) {
    const double d = g->derivative(s);
    EXPECT_NEAR(d * (d + s * g->second_derivative(s)), F(s), 1e-6);
  }
  EXPECT_NEAR(g->value(1.0), 0.5, 1e-14);
  const ScalarField u = g->lift();
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 20; ++i) {
    Vec z(4);
    for (int k = 0; k < 4; ++k) z(k) = nd(rng);
    z *= 0.8 / z.norm();
    const CMat h = complex_hessian(u, z, 1e-3);
    EXPECT_NEAR(h.determinant().real(), F(z.squaredNorm()), 1e-4);
  }
}

TEST(Radial, RejectsNegativeDensity) {
  EXPECT_THROW(radial_solve([](double) { return -1.0; }, 0.0, 1.0, 2), InputError);
}

TEST(Toric, ConstantDensityMatchesRadial) {
  const auto p = problem(2, Symmetry::Toric, kZero, kOne);
  const auto sol = toric_solve(p);
  double worst = 0.0;
  const int m = sol.v->m();
  for (int i = 0; i <= m; i += 4) {
    for (int j = 0; i + j <= m; j += 4) {
      const double s = (i + j) * sol.v->delta();
      worst = std::max(worst, std::abs(sol.v->node(i, j) - (s - 1.0)));
    }
  }
  EXPECT_LT(worst, 5e-3);
  EXPECT_GE(sol.result.psh_margin, -10.0 * sol.result.grid_step * sol.result.grid_step);
}

TEST(Toric, RadialDensityMatchesRadialOracle) {
  const ScalarField f_root = [](const Vec& x) { return x.norm(); };  // f = |z|^2 for n = 2
  const auto sol = toric_solve(problem(2, Symmetry::Toric, kZero, f_root));
  const double c = std::sqrt(2.0 / 3.0) * (2.0 / 3.0);
  double worst = 0.0;
  const int m = sol.v->m();
  for (int i = 0; i <= m; i += 4) {
    for (int j = 0; i + j <= m; j += 4) {
      const double s = (i + j) * sol.v->delta();
      worst = std::max(worst, std::abs(sol.v->node(i, j) - c * (std::pow(s, 1.5) - 1.0)));
    }
  }
  EXPECT_LT(worst, 5e-3);
}

TEST(Toric, CertifiesDegenerateCandidate) {
  const ScalarField slice = [](const Vec& x) { return x(0) * x(0) + x(1) * x(1); };
  auto p = problem(2, Symmetry::Toric, slice, kZero);
  p.candidate = slice;
  const auto res = certify_candidate(p, 17);
  EXPECT_TRUE(res.certified);
  EXPECT_LT(res.residual, 1e-6);
  EXPECT_GE(res.psh_margin, -1e-6);
  p.candidate = [](const Vec& x) { return x.squaredNorm(); };
  EXPECT_THROW(certify_candidate(p, 17), InputError);
}

TEST(Solve, DispatchesOnSymmetry) {
  SolveOptions o;
  o.resolution = 65;
  EXPECT_EQ(solve(problem(1, Symmetry::Disc, kZero, kOne), o).method, "poisson-disc");
  EXPECT_EQ(solve(problem(2, Symmetry::Radial, kZero, kOne), o).method, "radial");
  auto toric = problem(2, Symmetry::Toric, [](const Vec& x) { return x(0) * x(0) + x(1) * x(1); }, kZero);
  toric.candidate = toric.phi;
  EXPECT_EQ(solve(toric, o).method, "certified");
}

TEST(Solve, RejectsBrokenSymmetry) {
  const ScalarField phi = [](const Vec& x) { return x(0); };
  EXPECT_THROW(solve(problem(2, Symmetry::Radial, phi, kOne)), InputError);
  EXPECT_THROW(solve(problem(1, Symmetry::Disc, kZero, [](const Vec&) { return -1.0; })), InputError);
}

TEST(Barrier, ReducesToSumAndBoundaryShift) {
  const ScalarField a = [](const Vec& x) { return x(0) + x.squaredNorm(); };
  const ScalarField b = [](const Vec& x) { return std::sin(x(1)); };
  const auto plain = barrier_w(a, b, 0.0, 0.0, 0.0, 0.5);
  const Vec z = make_vec({0.3, -0.2});
  EXPECT_DOUBLE_EQ(plain(z), a(z) + b(z));
  const double h = 0.1;
  const double alpha = 0.5;
  const auto w = barrier_w(a, b, 2.0, 3.0, h, alpha);
  const Vec e = make_vec({0.6, 0.8});
  EXPECT_NEAR(w(e), a(e) + b(e) - 2.0 * std::pow(h, 1.0 + alpha), 1e-14);
  EXPECT_THROW(barrier_w(a, b, -1.0, 0.0, h, alpha), InputError);
}

TEST(Barrier, HessianGainsMultipleOfIdentity) {
  const ScalarField a = [](const Vec& x) { return std::pow(x(0), 4) + x(1) * x(2); };
  const ScalarField b = [](const Vec& x) { return x.squaredNorm() * x(3); };
  const double h = 0.2;
  const double alpha = 0.5;
  const double a2 = 5.0;
  const auto w = barrier_w(a, b, 1.0, a2, h, alpha);
  const Vec z = make_vec({0.2, 0.1, -0.3, 0.25});
  const CMat expected = complex_hessian(a, z, 1e-3) + complex_hessian(b, z, 1e-3) +
                        a2 * std::pow(h, 1.0 + alpha) * CMat::Identity(2, 2);
  EXPECT_LT((complex_hessian(w, z, 1e-3) - expected).norm(), 1e-6);
}

TEST(Comparison, EqualFunctionsHold) {
  const ScalarField v = [](const Vec& x) { return x.squaredNorm() - 1.0; };
  const auto rep = comparison_check(v, v);
  EXPECT_EQ(rep.status, ComparisonStatus::Holds);
  EXPECT_NEAR(rep.worst_gap, 0.0, 1e-15);
}

TEST(Comparison, ShiftedDownHolds) {
  const ScalarField v = [](const Vec& x) { return x.squaredNorm() + x(0); };
  const ScalarField w = [v](const Vec& x) { return v(x) - 0.3; };
  const auto rep = comparison_check(w, v);
  EXPECT_EQ(rep.status, ComparisonStatus::Holds);
  EXPECT_NEAR(rep.worst_gap, -0.3, 1e-12);
}

TEST(Comparison, FailedPreconditionIsInconclusive) {
  const ScalarField v = [](const Vec& x) { return x.squaredNorm(); };
  const ScalarField w = [](const Vec& x) { return x.squaredNorm() + 0.1; };
  const auto rep = comparison_check(w, v);
  EXPECT_EQ(rep.status, ComparisonStatus::Inconclusive);
  EXPECT_FALSE(rep.needs_review);
}

TEST(Comparison, NonSubharmonicIsInconclusive) {
  // w exceeds v inside while matching it on the circle, but w is not
  // subharmonic, so this is no counterexample.
  const ScalarField v = [](const Vec& x) { return x.squaredNorm() - 1.0; };
  const ScalarField bump = [](const Vec& x) { return 1.0 - x.squaredNorm(); };
  const auto rep = comparison_check(bump, v);
  EXPECT_EQ(rep.status, ComparisonStatus::Inconclusive);
}
