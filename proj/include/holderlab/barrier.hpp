#pragma once

#include <string>

#include "holderlab/common.hpp"

namespace holderlab {

// W(z) = u_plus(z) + u_minus(z) + |h|^{1+alpha} (-A1 + A2 (|z|^2 - 1)).
ScalarField barrier_w(ScalarField u_plus, ScalarField u_minus, double a1, double a2, double h_norm, double alpha);

enum class ComparisonStatus { Holds, Violated, Inconclusive };

std::string to_string(ComparisonStatus s);

struct ComparisonOptions {
  int dim = 2;  // real dimension 2n
  double radius = 1.0;
  double spacing = 0.05;  // interior scan lattice
  int boundary_order = 64;
  double margin = 1e-6;  // slack on the numerically checked preconditions
  double tol = 1e-6;     // slack on the conclusion w <= v
  double hessian_step = 1e-3;
  int hessian_stride = 7;  // every k-th interior site is a Hessian probe
};

struct ComparisonReport {
  ComparisonStatus status = ComparisonStatus::Inconclusive;
  double worst_gap = 0.0;  // max (w - v) over interior samples
  Vec witness;
  double boundary_gap = 0.0;  // max (w - v) over boundary samples
  double det_gap = 0.0;       // min det(w)^{1/n} - det(v)^{1/n} over probes
  double psh_w = 0.0;
  double psh_v = 0.0;
  std::size_t samples = 0;
  bool needs_review = false;
  std::string reason;
};

// Falsification scan for the comparison principle: when w <= v on the sphere
// and det(w_{i jbar})^{1/n} >= det(v_{i jbar})^{1/n} with both plurisubharmonic
// (all up to the margin), w <= v + tol is expected inside. Failed preconditions
// give Inconclusive; a failed conclusion gives Violated and asks for review.
ComparisonReport comparison_check(const ScalarField& w, const ScalarField& v, const ComparisonOptions& options = {});

}  // namespace holderlab
