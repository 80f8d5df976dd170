#include "holderlab/barrier.hpp"

#include <cmath>
#include <limits>

#include "holderlab/csv.hpp"
#include "holderlab/hessian.hpp"
#include "holderlab/parallel.hpp"
#include "holderlab/quadrature.hpp"
#include "holderlab/sampled_function.hpp"

namespace holderlab {

ScalarField barrier_w(ScalarField u_plus, ScalarField u_minus, double a1, double a2, double h_norm, double alpha) {
  if (a1 < 0.0 || a2 < 0.0) throw InputError("barrier constants must be nonnegative");
  const double scale = std::pow(h_norm, 1.0 + alpha);
  return [u_plus = std::move(u_plus), u_minus = std::move(u_minus), a1, a2, scale](const Vec& z) {
    return u_plus(z) + u_minus(z) + scale * (-a1 + a2 * (z.squaredNorm() - 1.0));
  };
}

std::string to_string(ComparisonStatus s) {
  switch (s) {
    case ComparisonStatus::Holds: return "holds";
    case ComparisonStatus::Violated: return "violated";
    case ComparisonStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

struct Gap {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t at = 0;
};

Gap max_gap(const std::vector<Vec>& pts, const ScalarField& w, const ScalarField& v) {
  return parallel_reduce(
      pts.size(), Gap{},
      [&](std::size_t i) { return Gap{w(pts[i]) - v(pts[i]), i}; },
      [](Gap a, const Gap& b) { return b.value > a.value ? b : a; });
}

}  // namespace

ComparisonReport comparison_check(const ScalarField& w, const ScalarField& v, const ComparisonOptions& options) {
  if (options.dim % 2 != 0) throw InputError("comparison check needs an even real dimension");
  ComparisonReport rep;
  const double r = options.radius;

  const SphereQuadrature q = SphereQuadrature::make(options.dim, options.boundary_order);
  std::vector<Vec> boundary;
  for (const auto& e : q.nodes()) boundary.push_back(r * e);
  rep.boundary_gap = max_gap(boundary, w, v).value;

  const auto interior = lattice_ball_points(options.dim, options.spacing, r, true);
  if (interior.empty()) throw InputError("comparison check: no interior samples");
  std::vector<Vec> probes;
  const double probe_radius = r - 2.0 * options.hessian_step;
  for (std::size_t i = 0; i < interior.size(); i += static_cast<std::size_t>(std::max(1, options.hessian_stride))) {
    if (interior[i].norm() <= probe_radius) probes.push_back(interior[i]);
  }
  struct Probe {
    double det_gap = std::numeric_limits<double>::infinity();
    double psh_w = std::numeric_limits<double>::infinity();
    double psh_v = std::numeric_limits<double>::infinity();
  };
  const Probe pr = parallel_reduce(
      probes.size(), Probe{},
      [&](std::size_t i) {
        const CMat hw = complex_hessian(w, probes[i], options.hessian_step, r);
        const CMat hv = complex_hessian(v, probes[i], options.hessian_step, r);
        return Probe{det_root(hw) - det_root(hv), min_eigenvalue(hw), min_eigenvalue(hv)};
      },
      [](Probe a, const Probe& b) {
        return Probe{std::min(a.det_gap, b.det_gap), std::min(a.psh_w, b.psh_w), std::min(a.psh_v, b.psh_v)};
      });
  rep.det_gap = pr.det_gap;
  rep.psh_w = pr.psh_w;
  rep.psh_v = pr.psh_v;

  const Gap g = max_gap(interior, w, v);
  rep.worst_gap = g.value;
  rep.witness = interior[g.at];
  rep.samples = interior.size();

  if (rep.boundary_gap > options.margin) {
    rep.reason = "boundary ordering fails by " + fmt_num(rep.boundary_gap);
  } else if (rep.det_gap < -options.margin) {
    rep.reason = "Monge-Ampere ordering fails by " + fmt_num(-rep.det_gap);
  } else if (rep.psh_w < -options.margin || rep.psh_v < -options.margin) {
    rep.reason = "an input is not plurisubharmonic";
  } else if (rep.worst_gap <= options.tol) {
    rep.status = ComparisonStatus::Holds;
    return rep;
  } else {
    rep.status = ComparisonStatus::Violated;
    rep.needs_review = true;
    rep.reason = "preconditions hold but w exceeds v by " + fmt_num(rep.worst_gap);
    return rep;
  }
  rep.status = ComparisonStatus::Inconclusive;
  return rep;
}

}  // namespace holderlab
