#include "holderlab/mollify.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "holderlab/csv.hpp"
#include "holderlab/lattice_index.hpp"
#include "holderlab/parallel.hpp"
#include "holderlab/quadrature.hpp"

namespace holderlab {

namespace {

double bump(double s) {
  if (s >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}

// Laplacian in R^m of the unit profile at radius s.
double bump_laplacian(double s, int m) {
  if (s >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  const double q2 = q * q;
  return bump(s) * (4.0 * s * s / (q2 * q2) - 8.0 * s * s / (q2 * q) - 2.0 * m / q2);
}

double sphere_area(int m) { return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m); }

}  // namespace

double MollifierKernel::profile_moment(int dim, double power) {
  using boost::math::quadrature::gauss_kronrod;
  static std::mutex mutex;
  static std::map<std::pair<int, double>, double> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({dim, power}); it != cache.end()) return it->second;
  }
  const auto f = [&](double s) { return std::pow(s, dim - 1 + power) * bump(s); };
  const double integral = gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 8, 1e-14);
  const double value = sphere_area(dim) * integral;
  std::lock_guard lock(mutex);
  cache.emplace(std::pair{dim, power}, value);
  return value;
}

MollifierKernel::MollifierKernel(double eps, int dim) : eps_(eps), dim_(dim) {
  if (!(eps > 0.0)) throw InputError("mollifier radius must be positive");
  if (dim < 1) throw InputError("mollifier dimension must be positive");
  c_ = 1.0 / profile_moment(dim, 0.0);
  sup_ = c_ * std::exp(-1.0) * std::pow(eps, -dim);

  // |Laplacian| of the profile: coarse scan, then Brent refinement around the best cell.
  const int cells = 4000;
  int best = 0;
  double best_value = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double v = std::abs(bump_laplacian(static_cast<double>(i) / cells, dim));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = std::max(0.0, (best - 1.0) / cells);
  const double hi = std::min(1.0, (best + 1.0) / cells);
  const auto [arg, neg] = boost::math::tools::brent_find_minima(
      [&](double s) { return -std::abs(bump_laplacian(s, dim)); }, lo, hi, 52);
  (void)arg;
  laplacian_constant_ = c_ * std::max(best_value, -neg);
  sup_laplacian_ = laplacian_constant_ * std::pow(eps, -dim - 2);
}

double MollifierKernel::value(double radius) const {
  return c_ * std::pow(eps_, -dim_) * bump(radius / eps_);
}

Vec MollifierKernel::gradient(const Vec& y) const {
  const double s = y.norm() / eps_;
  if (s >= 1.0) return Vec::Zero(y.size());
  const double q = 1.0 - s * s;
  return (-2.0 * value(y.norm()) / (eps_ * eps_ * q * q)) * y;
}

double MollifierKernel::laplacian(double radius) const {
  return c_ * std::pow(eps_, -dim_ - 2) * bump_laplacian(radius / eps_, dim_);
}

double MollifierKernel::mass() const { return c_ * profile_moment(dim_, 0.0); }

double MollifierKernel::second_moment() const { return c_ * eps_ * eps_ * profile_moment(dim_, 2.0); }

ConvolutionStencil ConvolutionStencil::make(const MollifierKernel& kernel, double spacing) {
  if (!(spacing > 0.0)) throw InputError("stencil spacing must be positive");
  ConvolutionStencil s;
  s.dim = kernel.dim();
  s.eps = kernel.eps();
  s.spacing = spacing;
  const double cell = std::pow(spacing, s.dim);
  for (Vec& y : lattice_ball_points(s.dim, spacing, kernel.eps(), true)) {
    const double w = kernel(y) * cell;
    if (w <= 0.0) continue;
    s.weights.push_back(w);
    s.gradient_weights.push_back(kernel.gradient(y) * cell);
    s.laplacian_weights.push_back(kernel.laplacian(y) * cell);
    s.offsets.push_back(std::move(y));
  }
  if (s.offsets.size() < 3) throw InputError("stencil spacing too coarse for the kernel radius");

  double m0 = 0.0;
  double m2 = 0.0;
  double m4 = 0.0;
  double first = 0.0;
  double second = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double r2 = s.offsets[i].squaredNorm();
    m0 += s.weights[i];
    m2 += s.weights[i] * r2;
    m4 += s.weights[i] * r2 * r2;
    first -= s.gradient_weights[i](0) * s.offsets[i](0);
    second += s.laplacian_weights[i] * r2;
  }
  // w -> w (a + b |y|^2) with unit mass and the kernel's second moment.
  const double sigma = kernel.second_moment();
  const double det = m0 * m4 - m2 * m2;
  const double a = (m4 - sigma * m2) / det;
  const double b = (sigma * m0 - m2) / det;
  for (std::size_t i = 0; i < s.size(); ++i) s.weights[i] *= a + b * s.offsets[i].squaredNorm();
  for (auto& g : s.gradient_weights) g /= first;
  const double lap_scale = 2.0 * s.dim / second;
  for (auto& l : s.laplacian_weights) l *= lap_scale;
  return s;
}

namespace {

template <class Lookup>
void apply_stencil(const ConvolutionStencil& s, const Vec& x, double vx, Lookup&& lookup, double& value, Vec& grad,
                   double& lap) {
  value = 0.0;
  grad = Vec::Zero(s.dim);
  lap = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double vy = lookup(k, x);
    value += s.weights[k] * vy;
    grad += s.gradient_weights[k] * vy;
    lap += s.laplacian_weights[k] * (vy - vx);
  }
}

}  // namespace

Mollified convolve(const SampledFunction& v, double h) {
  v.validate();
  if (!v.lattice_spacing || !v.ball_radius) throw InputError("lattice convolution needs a lattice ball sample");
  const double spacing = *v.lattice_spacing;
  if (spacing > h / 4.0 * (1.0 + 1e-12)) {
    throw InputError("grid too coarse for h: spacing " + fmt_num(spacing) + " > h/4 = " + fmt_num(h / 4.0));
  }
  const double out_radius = *v.ball_radius - h;
  if (out_radius < 0.0) throw DomainError("convolution: shrunken domain is empty");

  const ConvolutionStencil s = ConvolutionStencil::make(MollifierKernel(h, v.dim), spacing);
  const LatticeIndex index(v.points, spacing);
  std::vector<LatticeIndex::Key> offset_keys;
  offset_keys.reserve(s.size());
  for (const auto& y : s.offsets) offset_keys.push_back(index.key_of(y));

  Mollified out;
  out.points = lattice_ball_points(v.dim, spacing, out_radius);
  out.values.resize(out.points.size());
  out.gradients.resize(out.points.size());
  out.laplacians.resize(out.points.size());
  parallel_for(out.points.size(), [&](std::size_t i) {
    const Vec& x = out.points[i];
    const LatticeIndex::Key kx = index.key_of(x);
    const auto self = index.find(kx);
    if (!self) throw InputError("lattice convolution: site missing from the sample set");
    LatticeIndex::Key kk(kx.size());
    auto lookup = [&](std::size_t k, const Vec&) {
      for (std::size_t d = 0; d < kx.size(); ++d) kk[d] = kx[d] - offset_keys[k][d];
      const auto j = index.find(kk);
      if (!j) throw InputError("lattice convolution: stencil leaves the sample set");
      return v.values[*j];
    };
    apply_stencil(s, x, v.values[*self], lookup, out.values[i], out.gradients[i], out.laplacians[i]);
  });
  return out;
}

Mollified convolve(const ScalarField& v, int dim, double h, const std::vector<Vec>& points, int refinement) {
  if (refinement < 4) throw InputError("stencil refinement must be at least 4");
  const ConvolutionStencil s = ConvolutionStencil::make(MollifierKernel(h, dim), h / refinement);
  Mollified out;
  out.points = points;
  out.values.resize(points.size());
  out.gradients.resize(points.size());
  out.laplacians.resize(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const Vec& x = points[i];
    auto lookup = [&](std::size_t k, const Vec& p) { return v(p - s.offsets[k]); };
    apply_stencil(s, x, v(x), lookup, out.values[i], out.gradients[i], out.laplacians[i]);
  });
  return out;
}

ScalarField mollified_field(ScalarField v, int dim, double h, int refinement) {
  if (refinement < 4) throw InputError("stencil refinement must be at least 4");
  auto s = std::make_shared<const ConvolutionStencil>(
      ConvolutionStencil::make(MollifierKernel(h, dim), h / refinement));
  return [v = std::move(v), s](const Vec& x) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s->size(); ++k) acc += s->weights[k] * v(x - s->offsets[k]);
    return acc;
  };
}

MeanValueReport mean_value_deviation(const ScalarField& v, int dim, double r, double t, double alpha,
                                     const MeanValueOptions& options) {
  if (!(r > 0.0) || !(t > 0.0)) throw InputError("mean-value scan needs r > 0 and t > 0");
  if (options.scales < 1) throw InputError("mean-value scan needs at least one scale");
  const auto centers = lattice_ball_points(dim, options.center_spacing, r, true);
  if (centers.empty()) throw InputError("mean-value scan: no centres inside B_r");
  const SphereQuadrature q = SphereQuadrature::make(dim, options.quadrature_order);

  MeanValueReport report;
  for (int j = 0; j < options.scales; ++j) report.scales.push_back(t * std::ldexp(1.0, -j));
  const std::size_t ns = report.scales.size();
  report.table.resize(centers.size() * ns);
  parallel_for(centers.size(), [&](std::size_t i) {
    const double vx = v(centers[i]);
    for (std::size_t j = 0; j < ns; ++j) {
      const double h = report.scales[j];
      const double dev = std::abs(sphere_mean(v, centers[i], h, q, r + t) - vx);
      report.table[i * ns + j] = MeanValueRow{centers[i], h, dev};
    }
  });
  report.sup_per_scale.assign(ns, 0.0);
  report.A = -1.0;
  for (const auto& row : report.table) {
    const std::size_t j = static_cast<std::size_t>(&row - report.table.data()) % ns;
    report.sup_per_scale[j] = std::max(report.sup_per_scale[j], row.deviation);
    const double ratio = row.deviation / std::pow(row.h, 1.0 + alpha);
    if (ratio > report.A) {
      report.A = ratio;
      report.witness_x = row.x;
      report.witness_h = row.h;
    }
  }
  return report;
}

std::string DyadicReport::csv_header() {
  return csv_line({"k", "h_k", "sup_w", "sup_lap_w", "starred_1", "starred_1gamma"});
}

std::string DyadicReport::csv_rows() const {
  std::string out;
  for (const auto& l : levels) {
    out += csv_line({std::to_string(l.k), fmt_num(l.h), fmt_num(l.sup_w), fmt_num(l.sup_lap_w), fmt_num(l.starred_1),
                     fmt_num(l.starred_1gamma)});
  }
  return out;
}

DyadicReport dyadic_regularity(const ScalarField& v, int dim, double r, double t, double alpha, double A,
                               const DyadicOptions& options) {
  if (!std::isfinite(A) || A < 0.0) throw InputError("dyadic ladder needs a finite mean-value constant A");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha out of range: " + fmt_num(alpha));
  DyadicReport rep;
  rep.alpha = alpha;
  rep.gamma = 0.5 * (1.0 + alpha);
  rep.r = r;
  rep.t = t;
  rep.A = A;

  int depth = options.levels;
  if (options.grid_spacing) {
    int achievable = 0;
    while (achievable + 1 <= options.levels && t * std::ldexp(1.0, -(achievable + 1)) >= 4.0 * *options.grid_spacing) {
      ++achievable;
    }
    depth = achievable;
  }
  rep.achievable_levels = depth;
  if (depth < 1) throw InputError("ladder depth exhausted before grid resolution: achievable K = " +
                                  std::to_string(depth));

  const double spacing = options.sample_spacing > 0.0 ? options.sample_spacing : r / 16.0;
  const SampledFunction base = SampledFunction::on_ball(dim, r, spacing, v);
  const std::vector<Vec>& pts = base.points;

  std::vector<Mollified> ladder;
  for (int k = 0; k <= depth; ++k) {
    ladder.push_back(convolve(v, dim, t * std::ldexp(1.0, -k), pts, options.refinement));
  }

  for (int k = 0; k < depth; ++k) {
    const Mollified& a = ladder[k];
    const Mollified& b = ladder[k + 1];
    SampledFunction w;
    w.dim = dim;
    w.points = pts;
    w.boundary_distance = base.boundary_distance;
    w.lattice_spacing = spacing;
    w.ball_radius = r;
    w.values.resize(pts.size());
    w.gradients.emplace(pts.size());
    LadderLevel level;
    level.k = k;
    level.h = t * std::ldexp(1.0, -k);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      w.values[i] = b.values[i] - a.values[i];
      (*w.gradients)[i] = b.gradients[i] - a.gradients[i];
      level.sup_w = std::max(level.sup_w, std::abs(w.values[i]));
      level.sup_lap_w = std::max(level.sup_lap_w, std::abs(b.laplacians[i] - a.laplacians[i]));
    }
    level.starred_1 = starred_seminorm(w, 1, 0.0, options.scan).value;
    level.starred_1gamma = starred_seminorm(w, 1, rep.gamma, options.scan).value;
    if (A > 0.0) {
      level.ratio_w = level.sup_w / (A * std::pow(level.h, 1.0 + alpha));
      level.ratio_lap_w = level.sup_lap_w / (A * std::pow(level.h, alpha - 1.0));
      level.ratio_starred_1 = level.starred_1 / (A * r * std::pow(t, alpha) * std::pow(2.0, -alpha * k));
      level.ratio_starred_1gamma = level.starred_1gamma / (A * std::pow(r, 1.0 + rep.gamma) *
                                                           std::pow(t, alpha - rep.gamma) *
                                                           std::pow(2.0, (rep.gamma - alpha) * k));
    }
    rep.levels.push_back(level);
  }

  // v_{h_K} against v_t plus the telescoped differences.
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double acc = ladder[0].values[i];
    for (int k = 0; k < depth; ++k) acc += ladder[k + 1].values[i] - ladder[k].values[i];
    rep.telescoping_error = std::max(rep.telescoping_error, std::abs(acc - ladder[depth].values[i]));
  }

  const SampledFunction outer = SampledFunction::on_ball(dim, r + t, spacing, v);
  rep.sup_v = sup_norm(outer).value;
  rep.measured_starred = starred_seminorm(base, 1, alpha, options.scan).value;
  rep.bound = std::pow(r, 1.0 + alpha) * std::pow(t, -1.0 - alpha) * rep.sup_v + A * std::pow(r, 1.0 + alpha);
  rep.bound_ratio = rep.bound > 0.0 ? rep.measured_starred / rep.bound : 0.0;

  if (depth >= 4) {
    std::vector<double> hs;
    std::vector<double> sw;
    std::vector<double> sl;
    for (const auto& l : rep.levels) {
      hs.push_back(l.h);
      sw.push_back(l.sup_w);
      sl.push_back(l.sup_lap_w);
    }
    rep.w_decay_rate = exponent_fit(hs, sw).slope;
    rep.lap_growth_rate = exponent_fit(hs, sl).slope;
  }
  return rep;
}

std::string SchauderReport::csv_header() {
  return csv_line({"mu", "lhs1", "rhs1", "ratio1", "lhs2", "rhs2", "ratio2"});
}

std::string SchauderReport::csv_rows() const {
  std::string out;
  for (const auto& r : rows) {
    out += csv_line({fmt_num(r.mu), fmt_num(r.lhs1), fmt_num(r.rhs1), fmt_num(r.ratio1), fmt_num(r.lhs2),
                     fmt_num(r.rhs2), fmt_num(r.ratio2)});
  }
  return out;
}

SchauderReport schauder_check(const ScalarField& u, const VectorField& grad_u, const ScalarField& f, int dim,
                              double radius, double alpha, const SchauderOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha out of range: " + fmt_num(alpha));
  for (double mu : options.mus) {
    if (!(mu > 0.0 && mu <= 1.0)) throw InputError("mu out of range: " + fmt_num(mu));
  }
  const SampledFunction us = SampledFunction::on_ball(dim, radius, options.spacing, u, grad_u, radius, true);
  const SampledFunction fs = SampledFunction::on_ball(dim, radius, options.spacing, f, {}, radius, true);

  // Consistency of the pair: fourth-order central Laplacian against f.
  const double step = 1e-3 * radius;
  double residual = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const Vec& x = us.points[i];
    if (us.boundary_distance[i] < 2.0 * step) continue;
    double lap = 0.0;
    const double ux = us.values[i];
    for (int d = 0; d < dim; ++d) {
      Vec p1 = x, m1 = x, p2 = x, m2 = x;
      p1(d) += step;
      m1(d) -= step;
      p2(d) += 2.0 * step;
      m2(d) -= 2.0 * step;
      lap += (-u(p2) + 16.0 * u(p1) - 30.0 * ux + 16.0 * u(m1) - u(m2)) / (12.0 * step * step);
    }
    residual = std::max(residual, std::abs(lap - fs.values[i]));
    scale = std::max(scale, std::abs(fs.values[i]));
  }
  if (residual > options.consistency_tol * scale) {
    throw InputError("Laplacian(u) differs from f by " + fmt_num(residual));
  }

  SchauderReport rep;
  rep.alpha = alpha;
  rep.laplacian_residual = residual;
  rep.sup_u = sup_norm(us).value;
  rep.weighted_f = weighted_density_norm(fs, 2, std::nullopt).sup_term;
  rep.starred_1 = starred_seminorm(us, 1, 0.0, options.scan).value;
  rep.starred_1alpha = starred_seminorm(us, 1, alpha, options.scan).value;
  for (double mu : options.mus) {
    SchauderRow row;
    row.mu = mu;
    row.lhs1 = rep.starred_1;
    row.rhs1 = rep.sup_u / mu + mu * rep.weighted_f;
    row.ratio1 = row.rhs1 > 0.0 ? row.lhs1 / row.rhs1 : 0.0;
    row.lhs2 = rep.starred_1alpha;
    row.rhs2 = std::pow(mu, -1.0 - alpha) * rep.sup_u + std::pow(mu, 1.0 - alpha) * rep.weighted_f;
    row.ratio2 = row.rhs2 > 0.0 ? row.lhs2 / row.rhs2 : 0.0;
    rep.max_ratio1 = std::max(rep.max_ratio1, row.ratio1);
    rep.max_ratio2 = std::max(rep.max_ratio2, row.ratio2);
    rep.rows.push_back(row);
  }
  return rep;
}

SmoothedData smooth_dirichlet_data(ScalarField phi, ScalarField f_root, int dim, double eps, int refinement) {
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("smoothing parameter must lie in (0, 1/2), got " + fmt_num(eps));
  const double shrink = 1.0 - eps;
  auto shrunk = [shrink](ScalarField g) -> ScalarField {
    return [g = std::move(g), shrink](const Vec& x) { return g(shrink * x); };
  };
  SmoothedData out;
  out.phi = mollified_field(shrunk(std::move(phi)), dim, eps, refinement);
  out.f_root = mollified_field(shrunk(std::move(f_root)), dim, eps, refinement);
  return out;
}

}  // namespace holderlab
