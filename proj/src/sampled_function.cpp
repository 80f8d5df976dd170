#include "holderlab/sampled_function.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "holderlab/lattice_index.hpp"
#include "holderlab/parallel.hpp"

namespace holderlab {

std::vector<Vec> lattice_ball_points(int dim, double spacing, double radius, bool strict) {
  if (dim < 1) throw InputError("lattice dimension must be positive");
  if (!(spacing > 0.0)) throw InputError("lattice spacing must be positive");
  std::vector<Vec> out;
  if (radius < 0.0) return out;
  const long kmax = static_cast<long>(std::floor(radius / spacing + 1e-9));
  const double r2 = radius * radius;
  std::vector<long> k(dim, -kmax);
  for (;;) {
    double norm2 = 0.0;
    for (int d = 0; d < dim; ++d) norm2 += std::pow(k[d] * spacing, 2);
    const bool inside = strict ? norm2 < r2 * (1.0 - 1e-12) : norm2 <= r2 * (1.0 + 1e-12);
    if (inside) {
      Vec p(dim);
      for (int d = 0; d < dim; ++d) p(d) = k[d] * spacing;
      out.push_back(std::move(p));
    }
    int d = dim - 1;
    while (d >= 0 && k[d] == kmax) {
      k[d] = -kmax;
      --d;
    }
    if (d < 0) break;
    ++k[d];
  }
  return out;
}

double grid_spacing(double radius, int resolution) {
  if (resolution < 3 || resolution % 2 == 0) {
    throw InputError("grid resolution must be odd and at least 3, got " + std::to_string(resolution));
  }
  return 2.0 * radius / (resolution - 1);
}

SampledFunction SampledFunction::on_ball(int dim, double domain_radius, double spacing, ScalarField f,
                                         VectorField grad, std::optional<double> admit_radius, bool strict) {
  SampledFunction s;
  s.dim = dim;
  s.points = lattice_ball_points(dim, spacing, admit_radius.value_or(domain_radius), strict);
  s.values.resize(s.points.size());
  s.boundary_distance.resize(s.points.size());
  parallel_for(s.points.size(), [&](std::size_t i) {
    s.values[i] = f(s.points[i]);
    s.boundary_distance[i] = std::max(0.0, domain_radius - s.points[i].norm());
  });
  s.evaluator = std::move(f);
  s.gradient_evaluator = std::move(grad);
  s.fd_step = spacing;
  s.lattice_spacing = spacing;
  s.ball_radius = domain_radius;
  return s;
}

SampledFunction SampledFunction::on_points(int dim, double domain_radius, std::vector<Vec> points, ScalarField f,
                                           VectorField grad) {
  SampledFunction s;
  s.dim = dim;
  s.points = std::move(points);
  s.values.resize(s.points.size());
  s.boundary_distance.resize(s.points.size());
  parallel_for(s.points.size(), [&](std::size_t i) {
    s.values[i] = f(s.points[i]);
    s.boundary_distance[i] = std::max(0.0, domain_radius - s.points[i].norm());
  });
  s.evaluator = std::move(f);
  s.gradient_evaluator = std::move(grad);
  s.ball_radius = domain_radius;
  return s;
}

void SampledFunction::validate() const {
  if (values.size() != points.size()) throw InputError("sampled function: values/points size mismatch");
  if (!boundary_distance.empty() && boundary_distance.size() != points.size()) {
    throw InputError("sampled function: boundary distance size mismatch");
  }
  if (gradients && gradients->size() != points.size()) {
    throw InputError("sampled function: gradient size mismatch");
  }
  for (const auto& p : points) {
    if (p.size() != dim) throw InputError("sampled function: site dimension mismatch");
  }
  for (double d : boundary_distance) {
    if (d < 0.0) throw InputError("sampled function: negative boundary distance");
  }
}

namespace {

Vec central_gradient(const ScalarField& f, const Vec& x, double step) {
  Vec g(x.size());
  for (Eigen::Index d = 0; d < x.size(); ++d) {
    Vec p = x;
    Vec m = x;
    p(d) += step;
    m(d) -= step;
    g(d) = (f(p) - f(m)) / (2.0 * step);
  }
  return g;
}

}  // namespace

GradientSamples resolve_gradients(const SampledFunction& v) {
  GradientSamples out;
  const std::size_t n = v.size();
  out.values.resize(n);
  if (v.gradients) {
    for (std::size_t i = 0; i < n; ++i) out.values[i] = (*v.gradients)[i];
    return out;
  }
  if (v.gradient_evaluator) {
    parallel_for(n, [&](std::size_t i) { out.values[i] = v.gradient_evaluator(v.points[i]); });
    return out;
  }
  if (v.evaluator && v.fd_step > 0.0) {
    std::vector<double> err(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
      const Vec g1 = central_gradient(v.evaluator, v.points[i], v.fd_step);
      const Vec g2 = central_gradient(v.evaluator, v.points[i], 2.0 * v.fd_step);
      out.values[i] = g1;
      err[i] = (g1 - g2).norm() / 3.0;
    });
    for (double e : err) out.fd_error = std::max(out.fd_error, e);
    return out;
  }
  if (v.lattice_spacing) {
    const double h = *v.lattice_spacing;
    const LatticeIndex index(v.points, h);
    std::vector<double> err(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
      Vec g(v.dim);
      double e = 0.0;
      for (int d = 0; d < v.dim; ++d) {
        const auto p = index.neighbour(i, d, 1);
        const auto m = index.neighbour(i, d, -1);
        if (!p || !m) return;
        g(d) = (v.values[*p] - v.values[*m]) / (2.0 * h);
        const auto p2 = index.neighbour(i, d, 2);
        const auto m2 = index.neighbour(i, d, -2);
        if (p2 && m2) {
          const double g2 = (v.values[*p2] - v.values[*m2]) / (4.0 * h);
          e = std::max(e, std::abs(g(d) - g2) / 3.0);
        }
      }
      out.values[i] = g;
      err[i] = e;
    });
    for (double e : err) out.fd_error = std::max(out.fd_error, e);
    return out;
  }
  throw InputError("no gradient source: attach gradients, an evaluator with fd_step, or a lattice");
}

}  // namespace holderlab
