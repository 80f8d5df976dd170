#pragma once

#include <cstdint>
#include <string>

#include "holderlab/common.hpp"
#include "holderlab/geometry.hpp"
#include "holderlab/sampled_function.hpp"

namespace holderlab {

// disc: n = 1, arbitrary data. radial: data depend on |z|^2 only.
// toric: n = 2, data depend on (|z_1|^2, |z_2|^2) only.
enum class Symmetry { Disc, Radial, Toric };

std::string to_string(Symmetry s);
Symmetry symmetry_from_string(const std::string& name);

// det(u_{i jbar}) = f in B_r(0), u = phi on the sphere. Data are given as
// evaluators on real coordinates of C^n; f enters through f_root = f^{1/n}.
struct DirichletProblem {
  BallDomain domain{1, 1.0};
  ScalarField f_root;
  ScalarField phi;
  Symmetry symmetry = Symmetry::Disc;
  std::string label;
  // Explicit solution to certify when f vanishes identically (n >= 2).
  ScalarField candidate;

  int n() const { return domain.n(); }
  double radius() const { return domain.radius(); }
  double f(const Vec& z) const;

  // Checks f_root >= 0 and invariance of the data under the claimed symmetry
  // group on seeded random samples (tolerance 1e-10).
  void validate(std::uint64_t seed = 0x5eedULL, int samples = 256) const;
  bool f_vanishes(int samples = 256) const;
};

struct SolveResult {
  SampledFunction u;
  double residual = 0.0;
  int iterations = 0;
  double psh_margin = 0.0;
  double grid_step = 0.0;
  std::string method;
  bool certified = false;

  std::string csv_header() const;
  std::string csv_rows() const;
  std::string summary_json() const;
};

// Largest |det(u_{i jbar}) - f| and smallest complex-Hessian eigenvalue over
// seeded points of the ball of radius 0.9 r, by central differences.
void spot_check_equation(const ScalarField& u, const DirichletProblem& p, double step, int points, double& residual,
                         double& margin);

}  // namespace holderlab
