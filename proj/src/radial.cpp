#include "holderlab/radial.hpp"

#include <cmath>

#include <boost/math/interpolators/cubic_hermite.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "holderlab/hessian.hpp"
#include "holderlab/parallel.hpp"

namespace holderlab {

namespace {

using Hermite = boost::math::interpolators::cubic_hermite<std::vector<double>>;
using boost::math::quadrature::gauss_kronrod;

// Adaptive refinement only on the first interval, where t^{n-1} F and g' may
// fail to be smooth; elsewhere one Gauss-Kronrod panel is exact to rounding.
unsigned depth(int interval) { return interval == 0 ? 8 : 0; }

const Hermite& as_hermite(const std::shared_ptr<const void>& p) { return *static_cast<const Hermite*>(p.get()); }

}  // namespace

RadialProfile::RadialProfile(std::function<double(double)> F, double c, double r, int n, int nodes)
    : F_(std::move(F)), c_(c), r_(r), n_(n) {
  if (!(r > 0.0)) throw InputError("radial solve: radius must be positive");
  if (n < 1) throw InputError("radial solve: n must be positive");
  if (nodes < 4) throw InputError("radial solve: at least 4 nodes are needed");
  const double smax = r * r;
  s_.resize(nodes);
  for (int i = 0; i < nodes; ++i) s_[i] = smax * i / (nodes - 1);
  for (double s : s_) {
    if (F_(s) < 0.0) throw InputError("radial solve: negative F");
  }
  const auto weight = [this](double t) {
    const double v = F_(t);
    if (v < 0.0) throw InputError("radial solve: negative F");
    return std::pow(t, n_ - 1) * v;
  };
  I_.assign(nodes, 0.0);
  for (int i = 1; i < nodes; ++i) {
    I_[i] = I_[i - 1] + gauss_kronrod<double, 15>::integrate(weight, s_[i - 1], s_[i], depth(i - 1), 1e-12);
  }
  dg_.resize(nodes);
  for (int i = 0; i < nodes; ++i) dg_[i] = derivative_exact(s_[i]);

  // g(s_i) = c - int_{s_i}^{r^2} g'.
  std::vector<double> pieces(nodes, 0.0);
  for (int i = 0; i + 1 < nodes; ++i) {
    pieces[i] = gauss_kronrod<double, 15>::integrate([this](double t) { return derivative_exact(t); }, s_[i],
                                                     s_[i + 1], depth(i), 1e-12);
  }
  g_.assign(nodes, c);
  for (int i = nodes - 2; i >= 0; --i) g_[i] = g_[i + 1] - pieces[i];

  ddg_.resize(nodes);
  const double ds = s_[1] - s_[0];
  for (int i = 0; i < nodes; ++i) {
    const double s = s_[i];
    const double d = dg_[i];
    if (s > 0.0 && d > 1e-300) {
      ddg_[i] = (F_(s) / std::pow(d, n_ - 1) - d) / s;
    } else if (i == 0) {
      ddg_[i] = (-3.0 * dg_[0] + 4.0 * dg_[1] - dg_[2]) / (2.0 * ds);
    } else {
      ddg_[i] = 0.0;
    }
    if (!std::isfinite(ddg_[i])) ddg_[i] = (dg_[std::min(i + 1, nodes - 1)] - dg_[std::max(i - 1, 0)]) / (2.0 * ds);
  }
  interp_g_ = std::make_shared<const Hermite>(std::vector<double>(s_), std::vector<double>(g_),
                                              std::vector<double>(dg_));
  interp_dg_ = std::make_shared<const Hermite>(std::vector<double>(s_), std::vector<double>(dg_),
                                               std::vector<double>(ddg_));
}

double RadialProfile::derivative_exact(double s) const {
  if (s <= 0.0) return std::max(0.0, F_(0.0)) > 0.0 ? std::pow(F_(0.0), 1.0 / n_) : 0.0;
  const double smax = s_.back();
  const double ds = s_[1] - s_[0];
  const int i = std::clamp(static_cast<int>(s / ds), 0, static_cast<int>(s_.size()) - 1);
  double I = I_[i];
  if (s > s_[i] && s <= smax * (1.0 + 1e-12)) {
    I += gauss_kronrod<double, 15>::integrate(
        [this](double t) { return std::pow(t, n_ - 1) * F_(t); }, s_[i], s, 0, 1e-12);
  }
  const double base = n_ * I / std::pow(s, n_);
  return base > 0.0 ? std::pow(base, 1.0 / n_) : 0.0;
}

double RadialProfile::value(double s) const {
  if (s < -1e-12 || s > s_.back() * (1.0 + 1e-12)) throw DomainError("radial profile evaluated outside [0, r^2]");
  return as_hermite(interp_g_)(std::clamp(s, 0.0, s_.back()));
}

double RadialProfile::derivative(double s) const {
  if (s < -1e-12 || s > s_.back() * (1.0 + 1e-12)) throw DomainError("radial profile evaluated outside [0, r^2]");
  return as_hermite(interp_dg_)(std::clamp(s, 0.0, s_.back()));
}

double RadialProfile::second_derivative(double s) const {
  if (s < -1e-12 || s > s_.back() * (1.0 + 1e-12)) throw DomainError("radial profile evaluated outside [0, r^2]");
  return as_hermite(interp_dg_).prime(std::clamp(s, 0.0, s_.back()));
}

ScalarField RadialProfile::lift() const {
  auto self = std::make_shared<const RadialProfile>(*this);
  return [self](const Vec& z) { return self->value(z.squaredNorm()); };
}

VectorField RadialProfile::lift_gradient() const {
  auto self = std::make_shared<const RadialProfile>(*this);
  return [self](const Vec& z) -> Vec { return 2.0 * self->derivative(z.squaredNorm()) * z; };
}

std::shared_ptr<const RadialProfile> radial_solve(std::function<double(double)> F, double c, double r, int n,
                                                  int nodes) {
  return std::make_shared<const RadialProfile>(std::move(F), c, r, n, nodes);
}

SolveResult radial_solve_problem(const DirichletProblem& p, int sample_resolution, int nodes) {
  const int n = p.n();
  const int dim = p.domain.real_dim();
  const double r = p.radius();
  Vec e1 = Vec::Zero(dim);
  e1(0) = 1.0;
  const auto F = [p, e1](double s) { return p.f(e1 * std::sqrt(std::max(s, 0.0))); };
  const auto profile = radial_solve(F, p.phi(e1 * r), r, n, nodes);

  SolveResult out;
  out.method = "radial";
  out.iterations = 1;
  out.grid_step = grid_spacing(r, sample_resolution);
  out.u = SampledFunction::on_ball(dim, r, out.grid_step, profile->lift(), profile->lift_gradient());
  spot_check_equation(out.u.evaluator, p, 1e-3 * r, 32, out.residual, out.psh_margin);
  return out;
}

}  // namespace holderlab
