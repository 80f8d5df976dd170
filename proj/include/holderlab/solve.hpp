#pragma once

#include "holderlab/problem.hpp"

namespace holderlab {

struct SolveOptions {
  int resolution = 129;        // disc grid points per axis, or triangle nodes per leg
  int sample_resolution = 17;  // lattice for the lifted samples when n >= 2
  int radial_nodes = 10000;
  double newton_tol = 1e-10;
};

// Dispatches on the symmetry class: disc -> Shortley-Weller Poisson solve,
// radial -> quadrature profile, toric -> Newton (or certification when f = 0).
SolveResult solve(const DirichletProblem& p, const SolveOptions& options = {});

}  // namespace holderlab
