#include "holderlab/solve.hpp"

#include "holderlab/poisson.hpp"
#include "holderlab/radial.hpp"
#include "holderlab/toric.hpp"

namespace holderlab {

SolveResult solve(const DirichletProblem& p, const SolveOptions& options) {
  p.validate();
  switch (p.symmetry) {
    case Symmetry::Disc:
      return poisson_disc_solve(p, options.resolution);
    case Symmetry::Radial:
      return radial_solve_problem(p, options.sample_resolution, options.radial_nodes);
    case Symmetry::Toric: {
      ToricOptions t;
      t.nodes = options.resolution;
      t.tol = options.newton_tol;
      t.sample_resolution = options.sample_resolution;
      return toric_solve(p, t).result;
    }
  }
  throw InputError("unknown symmetry");
}

}  // namespace holderlab
