#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holderlab/common.hpp"
#include "holderlab/barrier.hpp"
#include "holderlab/fit.hpp"
#include "holderlab/mollify.hpp"
#include "holderlab/norms.hpp"
#include "holderlab/presets.hpp"
#include "holderlab/problem.hpp"

namespace holderlab {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);
int exit_code(Verdict v);

// splitmix64 step, used to derive per-instance seeds from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// ---------------------------------------------------------------- instances

// A Dirichlet problem together with what the experiments need beyond the
// solver: the extension used for the boundary C^{1,alpha} term and, when
// available, a closed-form or Poisson-kernel solution.
struct Instance {
  std::string label;
  DirichletProblem problem;
  std::string phi_spec;
  std::string f_spec;
  VectorField phi_gradient;
  VectorField f_root_gradient;
  ScalarField oracle;
  VectorField oracle_gradient;
  bool smooth_data = true;  // phi and f^{1/n} are C^{1,alpha}
};

// Builds an instance from presets; attaches the Poisson-kernel oracle when
// n = 1 and f = 0, and the pluriharmonic or degenerate candidate when f = 0.
Instance make_instance(int n, double r, Symmetry symmetry, const std::string& phi_spec, const std::string& f_spec,
                       double alpha);

struct SolvedField {
  ScalarField u;
  VectorField gradient;
  double grid_step = 0.0;
  std::string method;
  double residual = 0.0;
  double psh_margin = 0.0;
};

// Oracle when present, otherwise the solver at the given resolution.
SolvedField solve_instance(const Instance& inst, int resolution);

// Instances with C^{1,alpha} data (n = 1 unless include_n2).
std::vector<Instance> c1alpha_family(double alpha, bool include_n2 = false);
// Instances with C^{0,alpha} data (n = 1).
std::vector<Instance> c0alpha_family(double alpha);

// ---------------------------------------------------------------- geometry

struct GeometryRow {
  std::string check;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// T_a(a) = 0, T_a(0) = -a, boundary preservation and |det JT_a|^2 against
// central differences over seeded random (a, z), n in {1, 2, 3}.
std::vector<GeometryRow> automorphism_suite(int samples, std::uint64_t seed);

// ---------------------------------------------------------------- second differences

struct SecondDifferenceOptions {
  int base_points = 2000;
  int directions = 16;
  int octaves = 6;
  double radius = 1.0;
  double min_scale = 0.0;  // scales below this (grid resolution) are left out of the fit
  int quadrature_order = 0;  // 0 picks 64 on circles and 8 otherwise
  std::uint64_t seed = 0x5eedULL;
};

struct SecondDifferenceRow {
  double h = 0.0;
  double sup_diff = 0.0;      // sup of u(x+h) + u(x-h) - 2u(x)
  double sup_abs_diff = 0.0;  // sup of its absolute value
  double min_sphere_excess = 0.0;  // min of sphere mean over radius h minus u(x)
  bool used = true;
};

struct SecondDifferenceReport {
  double t = 0.0;
  double alpha = 0.0;
  std::vector<SecondDifferenceRow> rows;
  ExponentFit fit;
  double positivity_floor = 0.0;

  static std::string csv_header();
  std::string csv_rows() const;
};

// Base points x uniform in B_{(1-t)R}, unit directions reused across the
// dyadic scales |h| = tR/2, tR/4, ...; the slope is fitted on sup_abs_diff and
// is NaN when fewer than 4 scales reach min_scale.
SecondDifferenceReport second_difference_scan(const ScalarField& u, int dim, double t, double alpha,
                                              const SecondDifferenceOptions& options = {});

// ---------------------------------------------------------------- interior estimates

struct RhsTerm {
  std::string name;
  double value = 0.0;
};

struct EstimateRatio {
  std::string kind;  // "c1a" or "c0a"
  std::string label;
  int n = 1;
  double alpha = 0.0;
  double t = 0.0;
  double r = 1.0;
  double spacing = 0.0;
  double lhs = 0.0;
  std::vector<RhsTerm> rhs_terms;
  double ratio = 0.0;  // 0 when lhs and rhs both vanish, inf when only rhs does

  double rhs() const;
  static std::string csv_header();
  std::string csv_row() const;
};

struct EstimateOptions {
  int resolution = 129;
  std::optional<double> spacing;  // measurement lattice; default from resolution (n = 1) or 1/8 (n >= 2)
  int boundary_order = 256;
  ScanOptions scan;
};

// [u]_{1,alpha;B_{(1-t)r}} against [phi]_{1,alpha;dB_r} + r^{1-alpha} |f^{1/n}|'_{1,alpha;B_r}.
EstimateRatio interior_c1alpha_experiment(const Instance& inst, double t, double alpha,
                                          const EstimateOptions& options = {});
// [u]_{0,alpha;B_{(1-t)r}} against [phi]_{0,alpha;dB_r} + r^{2-alpha} |f^{1/n}|'_{0,alpha;B_r}.
EstimateRatio interior_c0alpha_experiment(const Instance& inst, double t, double alpha,
                                          const EstimateOptions& options = {});

// ---------------------------------------------------------------- tricks

struct ScalingReport {
  double r = 1.0;
  double base = 0.0;    // [u]_{1,alpha;B_{1-t}}
  double scaled = 0.0;  // [r^2 u(./r)]_{1,alpha;B_{(1-t)r}}
  double expected_ratio = 1.0;
  double ratio = 1.0;
  double rel_error = 0.0;
};

ScalingReport scaling_check(const ScalarField& u, const VectorField& grad, int dim, double r, double t, double alpha,
                            double spacing, const ScanOptions& scan = {});

struct SmoothingRow {
  double eps = 0.0;
  double sup_diff = 0.0;
};

struct SmoothingReport {
  std::vector<SmoothingRow> rows;
  double sup_u = 0.0;
  bool monotone = false;
  double order = 0.0;  // fitted exponent of sup_diff in eps, NaN when every difference is negligible

  static std::string csv_header();
  std::string csv_rows() const;
};

// Solves the problems with mollified data (phi_eps, f_eps) and compares with
// the unsmoothed solution on the solver grid (n = 1 instances).
SmoothingReport smoothing_convergence_check(const Instance& inst, const std::vector<double>& eps_ladder,
                                            int resolution, int refinement = 8);

// ---------------------------------------------------------------- solution properties

struct BoundsReport {
  std::string label;
  double sup_u = 0.0;
  double sup_phi = 0.0;
  double sup_f_root = 0.0;
  double min_sphere_excess = 0.0;
  bool sup_bound = false;
  bool positivity = false;

  static std::string csv_header();
  std::string csv_row() const;
};

// Sup bound |u|_0 <= |phi|_0 + |f^{1/n}|_0 + 1e-6 and sub-mean-value positivity
// at seeded (x, h), x in B_{3r/4}, h <= r/8 (tolerance positivity_tol).
BoundsReport solution_bounds(const Instance& inst, const SolvedField& u, int samples, std::uint64_t seed,
                             double positivity_tol = 1e-6);

// ---------------------------------------------------------------- barrier

struct BarrierRow {
  Vec x;
  Vec h;
  double a1 = 0.0;
  double a2 = 0.0;
  ComparisonReport comparison;
};

struct BarrierOptions {
  int trials = 10;
  double t = 0.25;
  double alpha = 0.5;
  int resolution = 129;
  double x_spacing = 1.0 / 24.0;  // lattice for the seminorms of the pulled-back data
  int z_boundary = 32;           // sphere samples of the z variable
  double z_spacing = 0.25;       // interior lattice of the z variable
  double margin = 1e-6;
  std::uint64_t seed = 0x5eedULL;
};

// Barrier constants A1 = 2 sup_z [Phi(., z)]_{1,alpha;B_{1-t/2}} and
// A2 = 2 sup_z [F^{1/n}(., z)]_{1,alpha;B_{1-t/2}} from pair scans.
std::pair<double, double> barrier_constants(const DirichletProblem& p, const BarrierOptions& options);

// W against 2 u_x at seeded x in B_{1-t}, h in B_{t/2}, for a unit-ball disc problem.
std::vector<BarrierRow> barrier_experiment(const DirichletProblem& p, const BarrierOptions& options = {});

// ---------------------------------------------------------------- Poisson interior estimates

struct ManufacturedSolution {
  std::string label;
  ScalarField u;
  VectorField gradient;
  ScalarField laplacian;
};

// Three closed-form solutions of Delta u = f on R^2.
std::vector<ManufacturedSolution> manufactured_solutions();

struct SchauderFamilyReport {
  std::vector<std::pair<std::string, SchauderReport>> reports;
  double constant1 = 0.0;  // max ratio1 over solutions and mu
  double constant2 = 0.0;
};

SchauderFamilyReport schauder_family(double alpha, double spacing, const std::vector<double>& mus = {1.0, 0.5, 0.25,
                                                                                                       0.125});

}  // namespace holderlab
