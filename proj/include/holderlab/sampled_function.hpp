#pragma once

#include <optional>
#include <vector>

#include "holderlab/common.hpp"

namespace holderlab {

// Points of the lattice spacing * Z^dim lying in the ball of the given radius
// about the origin (closed, or open when strict is set). Points are ordered
// lexicographically by lattice index.
std::vector<Vec> lattice_ball_points(int dim, double spacing, double radius, bool strict = false);

// Spacing of a resolution-point grid across [-radius, radius]; resolution must be odd
// so that the origin is a lattice point.
double grid_spacing(double radius, int resolution);

// Samples of a real function on a finite set of sites, with the data the norm
// calculus needs: boundary distances d_x and a way to obtain gradients.
//
// Gradient sources, in order of preference: explicit gradient samples, an
// analytic gradient evaluator, central differences of the value evaluator with
// step fd_step, central differences across lattice neighbours.
struct SampledFunction {
  int dim = 0;
  std::vector<Vec> points;
  std::vector<double> values;
  std::vector<double> boundary_distance;
  std::optional<std::vector<Vec>> gradients;
  ScalarField evaluator;
  VectorField gradient_evaluator;
  double fd_step = 0.0;
  std::optional<double> lattice_spacing;
  std::optional<double> ball_radius;

  std::size_t size() const { return points.size(); }

  // Samples f on the lattice points of the closed (or open) ball of radius
  // admit_radius, with d_x measured to the sphere of radius domain_radius.
  static SampledFunction on_ball(int dim, double domain_radius, double spacing, ScalarField f,
                                 VectorField grad = {}, std::optional<double> admit_radius = std::nullopt,
                                 bool strict = false);

  // Samples f on explicit sites inside B_{domain_radius}(0).
  static SampledFunction on_points(int dim, double domain_radius, std::vector<Vec> points, ScalarField f,
                                   VectorField grad = {});

  void validate() const;
};

// Gradients at every site (entries are empty where no gradient source applies),
// together with a Richardson estimate of the finite-difference error (0 for
// analytic gradients).
struct GradientSamples {
  std::vector<std::optional<Vec>> values;
  double fd_error = 0.0;
};

GradientSamples resolve_gradients(const SampledFunction& v);

}  // namespace holderlab
