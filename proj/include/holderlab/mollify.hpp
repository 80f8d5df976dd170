#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holderlab/common.hpp"
#include "holderlab/fit.hpp"
#include "holderlab/norms.hpp"
#include "holderlab/sampled_function.hpp"

namespace holderlab {

// rho_eps(x) = eps^{-m} rho(x / eps) with rho(x) = c exp(-1 / (1 - |x|^2)) on the
// unit ball of R^m, c chosen for unit mass.
class MollifierKernel {
 public:
  MollifierKernel(double eps, int dim);

  double eps() const { return eps_; }
  int dim() const { return dim_; }

  double value(double radius) const;
  double operator()(const Vec& y) const { return value(y.norm()); }
  Vec gradient(const Vec& y) const;
  double laplacian(double radius) const;
  double laplacian(const Vec& y) const { return laplacian(y.norm()); }

  double sup() const { return sup_; }
  double sup_laplacian() const { return sup_laplacian_; }
  // C(m) with sup |Laplacian rho_eps| = C(m) eps^{-m-2}.
  double laplacian_constant() const { return laplacian_constant_; }

  // Radial quadratures of rho_eps and |y|^2 rho_eps.
  double mass() const;
  double second_moment() const;

  // |S^{m-1}| * int_0^1 s^{m-1+p} exp(-1/(1-s^2)) ds.
  static double profile_moment(int dim, double power);

 private:
  double eps_;
  int dim_;
  double c_;
  double sup_;
  double sup_laplacian_;
  double laplacian_constant_;
};

// Midpoint rule for convolution with rho_eps on the lattice spacing * Z^m,
// together with derivative weights for the gradient and Laplacian of the
// convolution. Weights are rescaled so that constants, linear functions and
// |y|^2 are handled exactly.
struct ConvolutionStencil {
  int dim = 0;
  double eps = 0.0;
  double spacing = 0.0;
  std::vector<Vec> offsets;
  std::vector<double> weights;
  std::vector<Vec> gradient_weights;
  std::vector<double> laplacian_weights;

  static ConvolutionStencil make(const MollifierKernel& kernel, double spacing);

  std::size_t size() const { return offsets.size(); }
};

// Values, gradients and Laplacians of rho_h * v at a set of sites.
struct Mollified {
  std::vector<Vec> points;
  std::vector<double> values;
  std::vector<Vec> gradients;
  std::vector<double> laplacians;
};

// Lattice route: v sampled on a lattice ball B_R with spacing at most h/4; the
// result lives on the lattice sites of the closed ball B_{R-h}.
Mollified convolve(const SampledFunction& v, double h);

// Evaluator route on arbitrary sites with stencil spacing h / refinement.
Mollified convolve(const ScalarField& v, int dim, double h, const std::vector<Vec>& points, int refinement = 16);

// rho_h * v as an evaluator (stencil spacing h / refinement).
ScalarField mollified_field(ScalarField v, int dim, double h, int refinement = 16);

struct MeanValueRow {
  Vec x;
  double h = 0.0;
  double deviation = 0.0;
};

struct MeanValueOptions {
  double center_spacing = 0.05;
  int scales = 6;  // h = t, t/2, ..., t/2^{scales-1}
  int quadrature_order = 64;
};

struct MeanValueReport {
  double A = 0.0;
  Vec witness_x;
  double witness_h = 0.0;
  std::vector<MeanValueRow> table;
  std::vector<double> scales;
  std::vector<double> sup_per_scale;
};

// A = sup |sphere_mean(v, x, h) - v(x)| / h^{1+alpha} over lattice centres x in
// the open ball B_r and dyadic h in (0, t]; v must be defined on B_{r+t}.
MeanValueReport mean_value_deviation(const ScalarField& v, int dim, double r, double t, double alpha,
                                     const MeanValueOptions& options = {});

struct LadderLevel {
  int k = 0;
  double h = 0.0;
  double sup_w = 0.0;
  double sup_lap_w = 0.0;
  double starred_1 = 0.0;
  double starred_1gamma = 0.0;
  // Measured quantity divided by the corresponding power-law bound with unit constant.
  double ratio_w = 0.0;
  double ratio_lap_w = 0.0;
  double ratio_starred_1 = 0.0;
  double ratio_starred_1gamma = 0.0;
};

struct DyadicOptions {
  int levels = 6;
  double sample_spacing = 0.0;  // 0 picks r / 16
  int refinement = 16;
  std::optional<double> grid_spacing;  // limits the depth to h_K >= 4 grid_spacing
  ScanOptions scan;
};

struct DyadicReport {
  double alpha = 0.0;
  double gamma = 0.0;
  double r = 0.0;
  double t = 0.0;
  double A = 0.0;
  int achievable_levels = 0;
  std::vector<LadderLevel> levels;
  double telescoping_error = 0.0;
  double sup_v = 0.0;
  double measured_starred = 0.0;
  double bound = 0.0;
  double bound_ratio = 0.0;
  double w_decay_rate = 0.0;
  double lap_growth_rate = 0.0;

  static std::string csv_header();
  std::string csv_rows() const;
};

DyadicReport dyadic_regularity(const ScalarField& v, int dim, double r, double t, double alpha, double A,
                               const DyadicOptions& options = {});

struct SchauderRow {
  double mu = 0.0;
  double lhs1 = 0.0;
  double rhs1 = 0.0;
  double ratio1 = 0.0;
  double lhs2 = 0.0;
  double rhs2 = 0.0;
  double ratio2 = 0.0;
};

struct SchauderOptions {
  double spacing = 0.05;
  std::vector<double> mus{1.0, 0.5, 0.25, 0.125};
  double consistency_tol = 1e-4;
  ScanOptions scan;
};

struct SchauderReport {
  double alpha = 0.0;
  double sup_u = 0.0;
  double weighted_f = 0.0;
  double starred_1 = 0.0;
  double starred_1alpha = 0.0;
  double laplacian_residual = 0.0;
  std::vector<SchauderRow> rows;
  double max_ratio1 = 0.0;
  double max_ratio2 = 0.0;

  static std::string csv_header();
  std::string csv_rows() const;
};

// LHS/RHS ratios of the interior Poisson estimates on B_radius in R^dim for
// the mu values of the options. Rejects inputs with Laplacian(u) != f.
SchauderReport schauder_check(const ScalarField& u, const VectorField& grad_u, const ScalarField& f, int dim,
                              double radius, double alpha, const SchauderOptions& options = {});

struct SmoothedData {
  ScalarField phi;
  ScalarField f_root;
};

// x -> int rho_eps(y) g((1 - eps)(x - y)) dy for g = phi and g = f_root, eps in (0, 1/2).
SmoothedData smooth_dirichlet_data(ScalarField phi, ScalarField f_root, int dim, double eps, int refinement = 16);

}  // namespace holderlab
