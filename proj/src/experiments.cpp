#include "holderlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>

#include "holderlab/csv.hpp"
#include "holderlab/geometry.hpp"
#include "holderlab/parallel.hpp"
#include "holderlab/poisson.hpp"
#include "holderlab/quadrature.hpp"
#include "holderlab/sampled_function.hpp"
#include "holderlab/solve.hpp"

namespace holderlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec random_direction(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(dim);
  do {
    for (int i = 0; i < dim; ++i) v(i) = g(rng);
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

// Uniform in the open ball of the given radius.
Vec random_in_ball(std::mt19937_64& rng, int dim, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Vec d = random_direction(rng, dim);
  return radius * std::pow(u(rng), 1.0 / dim) * d;
}

CVec random_complex_in_ball(std::mt19937_64& rng, int n, double radius) {
  return to_complex(random_in_ball(rng, 2 * n, radius));
}

double ratio_of(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs <= 1e-12 ? 0.0 : kInf;
}

double preset_regularity(const Preset& p, int n) {
  const double power = 1.0 / n;
  if (p.name == "zero" || p.name == "const" || p.name == "linear") return kInf;
  if (p.name == "quad" || p.name == "toric-slice") return n == 1 ? kInf : 2.0 * power;
  if (p.name == "abspow") return (1.0 + p.params[0]) * power;
  if (p.name == "radialpow") {
    const double e = p.params[0] * power;
    return (std::fmod(e, 2.0) == 0.0) ? kInf : e;
  }
  return 0.0;
}

int sphere_order(int dim, int order) { return dim == 2 ? order : 16; }

double default_spacing(int dim, double r, int resolution) {
  return dim == 2 ? grid_spacing(r, resolution) : r / 8.0;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "UNKNOWN";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 1;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------- instances

Instance make_instance(int n, double r, Symmetry symmetry, const std::string& phi_spec, const std::string& f_spec,
                       double alpha) {
  const Preset phi = make_preset(phi_spec, n);
  const Preset f = make_preset(f_spec, n);
  const int dim = 2 * n;

  Instance in;
  in.phi_spec = phi.spec;
  in.f_spec = f.spec;
  in.label = "phi=" + phi.spec + " f=" + f.spec;
  in.problem.domain = BallDomain(n, r);
  in.problem.phi = phi.value;
  in.problem.f_root = density_root(f, n);
  in.problem.symmetry = symmetry;
  in.problem.label = in.label;
  in.phi_gradient = phi.gradient;
  if (f.name == "zero" || f.name == "const") {
    in.f_root_gradient = [dim](const Vec&) -> Vec { return Vec::Zero(dim); };
  } else if (n == 1) {
    in.f_root_gradient = f.gradient;
  }
  in.smooth_data = preset_regularity(phi, 1) >= 1.0 + alpha && preset_regularity(f, n) >= 1.0 + alpha;

  const bool f_zero = f.name == "zero" || (f.name == "const" && f.params[0] == 0.0);
  if (f.name == "const" && f.params[0] < 0.0) throw InputError("density '" + f.spec + "' is negative");
  if (phi.pluriharmonic && (f.name == "const" || f_zero)) {
    const double c = f_zero ? 0.0 : std::pow(f.params[0], 1.0 / n);
    in.oracle = [u = phi.value, c, r](const Vec& z) { return u(z) + c * (z.squaredNorm() - r * r); };
    in.oracle_gradient = [g = phi.gradient, c](const Vec& z) -> Vec { return g(z) + 2.0 * c * z; };
  } else if (f_zero && n == 1) {
    const auto ext = harmonic_extension_disc(phi.value, 1024, r);
    in.oracle = ext->field();
    in.oracle_gradient = ext->gradient_field();
  } else if (f_zero && phi.name == "toric-slice") {
    in.oracle = phi.value;
    in.oracle_gradient = phi.gradient;
  }
  if (f_zero && n >= 2 && in.oracle) in.problem.candidate = in.oracle;
  return in;
}

SolvedField solve_instance(const Instance& inst, int resolution) {
  SolvedField s;
  if (inst.oracle) {
    s.u = inst.oracle;
    s.gradient = inst.oracle_gradient;
    s.grid_step = grid_spacing(inst.problem.radius(), resolution);
    s.method = "oracle";
    return s;
  }
  SolveOptions o;
  o.resolution = resolution;
  const SolveResult r = solve(inst.problem, o);
  s.u = r.u.evaluator;
  s.gradient = r.u.gradient_evaluator;
  s.grid_step = r.grid_step;
  s.method = r.method;
  s.residual = r.residual;
  s.psh_margin = r.psh_margin;
  return s;
}

std::vector<Instance> c1alpha_family(double alpha, bool include_n2) {
  const std::string a = fmt_num(alpha);
  std::vector<Instance> out;
  out.push_back(make_instance(1, 1.0, Symmetry::Disc, "zero", "const:1", alpha));
  out.push_back(make_instance(1, 1.0, Symmetry::Disc, "linear:1,-0.5", "zero", alpha));
  out.push_back(make_instance(1, 1.0, Symmetry::Disc, "abspow:" + a, "zero", alpha));
  out.push_back(make_instance(1, 1.0, Symmetry::Disc, "abspow:" + a, "const:1", alpha));
  out.push_back(make_instance(1, 1.0, Symmetry::Disc, "const:0.5", "radialpow:" + fmt_num(1.0 + alpha), alpha));
  out.push_back(make_instance(1, 1.0, Symmetry::Disc, "linear:0.3,0.2", "quad", alpha));
  if (include_n2) {
    out.push_back(make_instance(2, 1.0, Symmetry::Radial, "zero", "const:1", alpha));
    out.push_back(make_instance(2, 1.0, Symmetry::Toric, "toric-slice", "zero", alpha));
  }
  return out;
}

std::vector<Instance> c0alpha_family(double alpha) {
  std::vector<Instance> out = c1alpha_family(alpha, false);
  out.push_back(make_instance(1, 1.0, Symmetry::Disc, "anglepow:" + fmt_num(alpha), "zero", alpha));
  out.push_back(make_instance(1, 1.0, Symmetry::Disc, "zero", "radialpow:" + fmt_num(alpha), alpha));
  return out;
}

// ---------------------------------------------------------------- geometry

std::vector<GeometryRow> automorphism_suite(int samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("automorphism suite needs at least one sample");
  std::mt19937_64 rng(seed);
  GeometryRow fixed{"T_a(a)=0", 0.0, 1e-12, false};
  GeometryRow origin{"T_a(0)=-a", 0.0, 1e-12, false};
  GeometryRow sphere{"|T_a(z)|=1 on the sphere", 0.0, 1e-10, false};
  GeometryRow jac{"|det JT_a|^2 relative to central differences", 0.0, 1e-6, false};
  for (int s = 0; s < samples; ++s) {
    const int n = 1 + s % 3;
    const CVec a = random_complex_in_ball(rng, n, 0.9);
    const MoebiusMap T(a);
    fixed.max_error = std::max(fixed.max_error, T.apply(a).norm());
    origin.max_error = std::max(origin.max_error, (T.apply(CVec::Zero(n)) + a).norm());
    const CVec w = to_complex(random_direction(rng, 2 * n));
    sphere.max_error = std::max(sphere.max_error, std::abs(T.apply(w).norm() - 1.0));
    const CVec z = random_complex_in_ball(rng, n, 0.9);
    const double exact = T.jacobian_det_sq(z);
    const double numeric = numerical_jacobian_det_sq(T, z);
    jac.max_error = std::max(jac.max_error, std::abs(numeric - exact) / exact);
  }
  std::vector<GeometryRow> rows{fixed, origin, sphere, jac};
  for (auto& r : rows) r.pass = r.max_error <= r.tolerance;
  return rows;
}

// ---------------------------------------------------------------- second differences

std::string SecondDifferenceReport::csv_header() {
  return "h,sup_second_diff,sup_abs_second_diff,min_sphere_excess,used_in_fit\n";
}

std::string SecondDifferenceReport::csv_rows() const {
  std::string out;
  for (const auto& r : rows) {
    out += csv_line({fmt_num(r.h), fmt_num(r.sup_diff), fmt_num(r.sup_abs_diff), fmt_num(r.min_sphere_excess),
                     r.used ? "1" : "0"});
  }
  return out;
}

SecondDifferenceReport second_difference_scan(const ScalarField& u, int dim, double t, double alpha,
                                              const SecondDifferenceOptions& o) {
  if (!(t > 0.0 && t <= 1.0)) throw InputError("second difference scan needs t in (0, 1]");
  if (o.base_points < 1 || o.directions < 1 || o.octaves < 1) throw InputError("second difference scan: empty budget");
  const double R = o.radius;
  std::mt19937_64 rng(o.seed);
  std::vector<Vec> xs(static_cast<std::size_t>(o.base_points));
  std::vector<Vec> dirs(static_cast<std::size_t>(o.base_points) * o.directions);
  for (int i = 0; i < o.base_points; ++i) {
    xs[i] = random_in_ball(rng, dim, (1.0 - t) * R);
    for (int d = 0; d < o.directions; ++d) dirs[static_cast<std::size_t>(i) * o.directions + d] = random_direction(rng, dim);
  }
  std::vector<double> scales(o.octaves);
  for (int j = 0; j < o.octaves; ++j) scales[j] = 0.5 * t * R * std::ldexp(1.0, -j);
  const int order = o.quadrature_order > 0 ? o.quadrature_order : (dim == 2 ? 64 : 8);
  const SphereQuadrature q = SphereQuadrature::make(dim, order, o.seed);

  const std::size_t S = scales.size();
  std::vector<double> sup_d(xs.size() * S);
  std::vector<double> sup_a(xs.size() * S);
  std::vector<double> excess(xs.size() * S);
  parallel_for(xs.size(), [&](std::size_t i) {
    const Vec& x = xs[i];
    const double ux = u(x);
    for (std::size_t j = 0; j < S; ++j) {
      double best = -kInf;
      double best_abs = 0.0;
      for (int d = 0; d < o.directions; ++d) {
        const Vec h = scales[j] * dirs[i * o.directions + d];
        const double D = u(x + h) + u(x - h) - 2.0 * ux;
        best = std::max(best, D);
        best_abs = std::max(best_abs, std::abs(D));
      }
      sup_d[i * S + j] = best;
      sup_a[i * S + j] = best_abs;
      excess[i * S + j] = sphere_mean(u, x, scales[j], q) - ux;
    }
  });

  SecondDifferenceReport rep;
  rep.t = t;
  rep.alpha = alpha;
  rep.positivity_floor = kInf;
  std::vector<double> fit_h;
  std::vector<double> fit_s;
  for (std::size_t j = 0; j < S; ++j) {
    SecondDifferenceRow row;
    row.h = scales[j];
    row.sup_diff = -kInf;
    row.min_sphere_excess = kInf;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      row.sup_diff = std::max(row.sup_diff, sup_d[i * S + j]);
      row.sup_abs_diff = std::max(row.sup_abs_diff, sup_a[i * S + j]);
      row.min_sphere_excess = std::min(row.min_sphere_excess, excess[i * S + j]);
    }
    row.used = row.h >= o.min_scale;
    if (row.used) {
      fit_h.push_back(row.h);
      fit_s.push_back(row.sup_abs_diff);
    }
    rep.positivity_floor = std::min(rep.positivity_floor, row.min_sphere_excess);
    rep.rows.push_back(row);
  }
  if (fit_h.size() >= 4) {
    rep.fit = exponent_fit(fit_h, fit_s);
  } else {
    rep.fit.scales = fit_h;
    rep.fit.sups = fit_s;
    rep.fit.slope = std::numeric_limits<double>::quiet_NaN();
    rep.fit.intercept = rep.fit.slope;
    rep.fit.residual = rep.fit.slope;
  }
  return rep;
}

// ---------------------------------------------------------------- interior estimates

double EstimateRatio::rhs() const {
  double s = 0.0;
  for (const auto& t : rhs_terms) s += t.value;
  return s;
}

std::string EstimateRatio::csv_header() { return "kind,label,n,alpha,t,r,spacing,lhs,phi_term,f_term,rhs,ratio\n"; }

std::string EstimateRatio::csv_row() const {
  const double phi_term = rhs_terms.size() > 0 ? rhs_terms[0].value : 0.0;
  const double f_term = rhs_terms.size() > 1 ? rhs_terms[1].value : 0.0;
  return csv_line({kind, "\"" + label + "\"", std::to_string(n), fmt_num(alpha), fmt_num(t), fmt_num(r),
                   fmt_num(spacing), fmt_num(lhs), fmt_num(phi_term), fmt_num(f_term), fmt_num(rhs()),
                   fmt_num(ratio)});
}

namespace {

struct Measurement {
  EstimateRatio est;
  SampledFunction interior;
  SampledFunction f_root;
  double spacing = 0.0;
};

Measurement prepare(const Instance& inst, const char* kind, double t, double alpha, const EstimateOptions& o) {
  if (!(t > 0.0 && t < 1.0)) throw InputError("interior estimate needs t in (0, 1)");
  const DirichletProblem& p = inst.problem;
  const int dim = p.domain.real_dim();
  const double r = p.radius();
  const SolvedField s = solve_instance(inst, o.resolution);

  Measurement m;
  m.spacing = o.spacing.value_or(default_spacing(dim, r, o.resolution));
  m.interior = SampledFunction::on_ball(dim, r, m.spacing, s.u, s.gradient, (1.0 - t) * r, true);
  if (!s.gradient) m.interior.fd_step = 1e-6 * r;
  m.f_root = SampledFunction::on_ball(dim, r, m.spacing, p.f_root, inst.f_root_gradient);
  if (!inst.f_root_gradient) m.f_root.fd_step = 1e-6 * r;
  m.est.kind = kind;
  m.est.label = inst.label;
  m.est.n = p.n();
  m.est.alpha = alpha;
  m.est.t = t;
  m.est.r = r;
  m.est.spacing = m.spacing;
  return m;
}

}  // namespace

EstimateRatio interior_c1alpha_experiment(const Instance& inst, double t, double alpha, const EstimateOptions& o) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("C^{1,alpha} experiment needs alpha in (0, 1)");
  Measurement m = prepare(inst, "c1a", t, alpha, o);
  const int dim = inst.problem.domain.real_dim();
  const double r = inst.problem.radius();
  m.est.lhs = holder_seminorm(m.interior, 1, alpha, o.scan).value;
  const Extension ext = restriction_extension(inst.problem.phi, inst.phi_gradient);
  const double phi_term = boundary_seminorm_c1a(ext, dim, r, m.spacing, alpha, o.scan).value;
  const double f_term = std::pow(r, 1.0 - alpha) * primed_norm(m.f_root, 1, alpha, o.scan);
  m.est.rhs_terms = {{"phi", phi_term}, {"f", f_term}};
  m.est.ratio = ratio_of(m.est.lhs, m.est.rhs());
  return m.est;
}

EstimateRatio interior_c0alpha_experiment(const Instance& inst, double t, double alpha, const EstimateOptions& o) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("C^{0,alpha} experiment needs alpha in (0, 1]");
  Measurement m = prepare(inst, "c0a", t, alpha, o);
  const int dim = inst.problem.domain.real_dim();
  const double r = inst.problem.radius();
  m.est.lhs = holder_seminorm(m.interior, 0, alpha, o.scan).value;
  const SampledFunction bdry = sphere_samples(dim, r, sphere_order(dim, o.boundary_order), inst.problem.phi);
  const double phi_term = boundary_seminorm_c0(bdry, alpha, o.scan).value;
  const double f_term = std::pow(r, 2.0 - alpha) * primed_norm(m.f_root, 0, alpha, o.scan);
  m.est.rhs_terms = {{"phi", phi_term}, {"f", f_term}};
  m.est.ratio = ratio_of(m.est.lhs, m.est.rhs());
  return m.est;
}

// ---------------------------------------------------------------- tricks

ScalingReport scaling_check(const ScalarField& u, const VectorField& grad, int dim, double r, double t, double alpha,
                            double spacing, const ScanOptions& scan) {
  if (!(r > 0.0)) throw InputError("scaling check needs r > 0");
  SampledFunction base = SampledFunction::on_ball(dim, 1.0, spacing, u, grad, 1.0 - t, true);
  std::vector<Vec> pts;
  pts.reserve(base.points.size());
  for (const auto& p : base.points) pts.push_back(r * p);
  SampledFunction scaled =
      SampledFunction::on_points(dim, r, std::move(pts), rescale_field(u, r), grad ? rescale_gradient(grad, r) : VectorField{});
  scaled.lattice_spacing = r * spacing;
  if (!grad) {
    base.fd_step = 1e-6;
    scaled.fd_step = 1e-6 * r;
  }
  ScalingReport rep;
  rep.r = r;
  rep.base = holder_seminorm(base, 1, alpha, scan).value;
  rep.scaled = holder_seminorm(scaled, 1, alpha, scan).value;
  rep.expected_ratio = std::pow(r, 1.0 - alpha);
  if (rep.base <= 1e-14 && rep.scaled <= 1e-14) {
    rep.ratio = rep.expected_ratio;
    rep.rel_error = 0.0;
  } else {
    rep.ratio = rep.scaled / rep.base;
    rep.rel_error = std::abs(rep.ratio / rep.expected_ratio - 1.0);
  }
  return rep;
}

std::string SmoothingReport::csv_header() { return "eps,sup_diff\n"; }

std::string SmoothingReport::csv_rows() const {
  std::string out;
  for (const auto& r : rows) out += csv_line({fmt_num(r.eps), fmt_num(r.sup_diff)});
  return out;
}

SmoothingReport smoothing_convergence_check(const Instance& inst, const std::vector<double>& eps_ladder,
                                            int resolution, int refinement) {
  const DirichletProblem& p = inst.problem;
  if (p.n() != 1) throw InputError("smoothing check supports n = 1 instances");
  if (eps_ladder.size() < 2) throw InputError("smoothing check needs at least two eps values");
  SolveOptions so;
  so.resolution = resolution;
  const SolveResult base = solve(p, so);
  const auto sites = lattice_ball_points(2, base.grid_step, p.radius());
  std::vector<double> u0(sites.size());
  parallel_for(sites.size(), [&](std::size_t i) { u0[i] = base.u.evaluator(sites[i]); });

  SmoothingReport rep;
  for (double v : u0) rep.sup_u = std::max(rep.sup_u, std::abs(v));
  for (double eps : eps_ladder) {
    const SmoothedData sd = smooth_dirichlet_data(p.phi, p.f_root, 2, eps, refinement);
    DirichletProblem q = p;
    q.phi = sd.phi;
    q.f_root = sd.f_root;
    const SolveResult s = solve(q, so);
    const double d = parallel_reduce(
        sites.size(), 0.0, [&](std::size_t i) { return std::abs(s.u.evaluator(sites[i]) - u0[i]); },
        [](double a, double b) { return std::max(a, b); });
    rep.rows.push_back({eps, d});
  }
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (rep.rows[i].sup_diff > rep.rows[i - 1].sup_diff + 1e-12) rep.monotone = false;
  }
  const auto& first = rep.rows.front();
  const auto& last = rep.rows.back();
  if (last.sup_diff <= 1e-12 || first.sup_diff <= 1e-12) {
    rep.order = std::nan("");
  } else {
    rep.order = std::log(first.sup_diff / last.sup_diff) / std::log(first.eps / last.eps);
  }
  return rep;
}

// ---------------------------------------------------------------- solution properties

std::string BoundsReport::csv_header() {
  return "label,sup_u,sup_phi,sup_f_root,min_sphere_excess,sup_bound,positivity\n";
}

std::string BoundsReport::csv_row() const {
  return csv_line({"\"" + label + "\"", fmt_num(sup_u), fmt_num(sup_phi), fmt_num(sup_f_root),
                   fmt_num(min_sphere_excess), sup_bound ? "1" : "0", positivity ? "1" : "0"});
}

BoundsReport solution_bounds(const Instance& inst, const SolvedField& u, int samples, std::uint64_t seed,
                             double positivity_tol) {
  const DirichletProblem& p = inst.problem;
  const int dim = p.domain.real_dim();
  const double r = p.radius();
  const double spacing = dim == 2 ? u.grid_step : r / 8.0;
  BoundsReport rep;
  rep.label = inst.label;
  rep.sup_u = sup_norm(SampledFunction::on_ball(dim, r, spacing, u.u)).value;
  rep.sup_phi = sup_norm(sphere_samples(dim, r, sphere_order(dim, 256), p.phi)).value;
  // Quadrature nodes on S^3 miss coordinate poles; add radial projections of the lattice.
  for (const auto& x : lattice_ball_points(dim, spacing, r)) {
    if (x.norm() > 0.0) rep.sup_phi = std::max(rep.sup_phi, std::abs(p.phi(r * x / x.norm())));
  }
  rep.sup_f_root = sup_norm(SampledFunction::on_ball(dim, r, spacing, p.f_root)).value;
  rep.sup_bound = rep.sup_u <= rep.sup_phi + rep.sup_f_root + 1e-6;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec> xs(static_cast<std::size_t>(samples));
  std::vector<double> hs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = random_in_ball(rng, dim, 0.75 * r);
    hs[i] = r / 8.0 * (1.0 - unit(rng));
  }
  const SphereQuadrature q = SphereQuadrature::make(dim, dim == 2 ? 64 : 8, seed);
  rep.min_sphere_excess = parallel_reduce(
      xs.size(), kInf, [&](std::size_t i) { return sphere_mean(u.u, xs[i], hs[i], q, r) - u.u(xs[i]); },
      [](double a, double b) { return std::min(a, b); });
  rep.positivity = rep.min_sphere_excess >= -positivity_tol;
  return rep;
}

// ---------------------------------------------------------------- barrier

namespace {

double max_seminorm_over_z(const std::vector<Vec>& xs, const std::vector<Vec>& zs, double spacing, int dim,
                           double alpha, const std::function<double(const Vec& x, const CVec& z)>& g) {
  double best = 0.0;
  for (const auto& zr : zs) {
    const CVec z = to_complex(zr);
    SampledFunction s = SampledFunction::on_points(dim, 1.0, xs, [&g, z](const Vec& x) { return g(x, z); });
    s.lattice_spacing = spacing;
    s.fd_step = 1e-6;
    best = std::max(best, holder_seminorm(s, 1, alpha).value);
  }
  return best;
}

}  // namespace

std::pair<double, double> barrier_constants(const DirichletProblem& p, const BarrierOptions& o) {
  if (std::abs(p.radius() - 1.0) > 1e-12) throw InputError("barrier constants are defined on the unit ball");
  const int n = p.n();
  const int dim = 2 * n;
  const auto xs = lattice_ball_points(dim, o.x_spacing, 1.0 - 0.5 * o.t);
  std::vector<Vec> zs;
  const SphereQuadrature zq = SphereQuadrature::make(dim, dim == 2 ? o.z_boundary : 4, o.seed);
  for (const auto& e : zq.nodes()) zs.push_back(e);
  for (const auto& z : lattice_ball_points(dim, o.z_spacing, 1.0, true)) zs.push_back(z);

  const auto image = [](const Vec& x, const CVec& z) { return MoebiusMap(to_complex(-x)).apply_unchecked(z); };
  const ScalarField phi = p.phi;
  const ScalarField f = [&p](const Vec& z) { return p.f(z); };
  const double a1 = 2.0 * max_seminorm_over_z(xs, zs, o.x_spacing, dim, o.alpha, [&](const Vec& x, const CVec& z) {
                      return phi(to_real(image(x, z)));
                    });
  const double a2 = 2.0 * max_seminorm_over_z(xs, zs, o.x_spacing, dim, o.alpha, [&](const Vec& x, const CVec& z) {
                      const MoebiusMap T(to_complex(-x));
                      const double F = std::max(0.0, f(to_real(T.apply_unchecked(z)))) * T.jacobian_det_sq(z);
                      return std::pow(F, 1.0 / n);
                    });
  return {a1, a2};
}

std::vector<BarrierRow> barrier_experiment(const DirichletProblem& p, const BarrierOptions& o) {
  if (p.n() != 1) throw InputError("barrier experiment supports the disc");
  const auto [a1, a2] = barrier_constants(p, o);
  SolveOptions so;
  so.resolution = o.resolution;
  const SolveResult sol = solve(p, so);
  const ScalarField u = sol.u.evaluator;

  std::mt19937_64 rng(o.seed);
  std::vector<BarrierRow> rows;
  for (int k = 0; k < o.trials; ++k) {
    BarrierRow row;
    row.x = random_in_ball(rng, 2, 1.0 - o.t);
    row.h = random_in_ball(rng, 2, 0.5 * o.t);
    row.a1 = a1;
    row.a2 = a2;
    const ScalarField w = barrier_w(pullback(u, to_complex(row.x + row.h)), pullback(u, to_complex(row.x - row.h)),
                                    a1, a2, row.h.norm(), o.alpha);
    const ScalarField ux = pullback(u, to_complex(row.x));
    const ScalarField v = [ux](const Vec& z) { return 2.0 * ux(z); };
    ComparisonOptions co;
    co.dim = 2;
    co.margin = o.margin;
    co.tol = o.margin;
    row.comparison = comparison_check(w, v, co);
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------- Poisson interior estimates

std::vector<ManufacturedSolution> manufactured_solutions() {
  const double pi = std::numbers::pi;
  std::vector<ManufacturedSolution> out;
  out.push_back({"quadratic", [](const Vec& x) { return 0.25 * x.squaredNorm(); },
                 [](const Vec& x) -> Vec { return 0.5 * x; }, [](const Vec&) { return 1.0; }});
  out.push_back({"sine-exp", [pi](const Vec& x) { return std::sin(pi * x(0)) * std::exp(x(1)); },
                 [pi](const Vec& x) -> Vec {
                   return make_vec({pi * std::cos(pi * x(0)) * std::exp(x(1)), std::sin(pi * x(0)) * std::exp(x(1))});
                 },
                 [pi](const Vec& x) { return (1.0 - pi * pi) * std::sin(pi * x(0)) * std::exp(x(1)); }});
  out.push_back({"cos-cosh", [](const Vec& x) { return std::cos(2.0 * x(0)) * std::cosh(x(1)); },
                 [](const Vec& x) -> Vec {
                   return make_vec({-2.0 * std::sin(2.0 * x(0)) * std::cosh(x(1)), std::cos(2.0 * x(0)) * std::sinh(x(1))});
                 },
                 [](const Vec& x) { return -3.0 * std::cos(2.0 * x(0)) * std::cosh(x(1)); }});
  return out;
}

SchauderFamilyReport schauder_family(double alpha, double spacing, const std::vector<double>& mus) {
  SchauderOptions so;
  so.spacing = spacing;
  so.mus = mus;
  SchauderFamilyReport rep;
  for (const auto& m : manufactured_solutions()) {
    SchauderReport r = schauder_check(m.u, m.gradient, m.laplacian, 2, 1.0, alpha, so);
    rep.constant1 = std::max(rep.constant1, r.max_ratio1);
    rep.constant2 = std::max(rep.constant2, r.max_ratio2);
    rep.reports.emplace_back(m.label, std::move(r));
  }
  return rep;
}

}  // namespace holderlab
