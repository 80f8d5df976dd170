#include "holderlab/toric.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "holderlab/csv.hpp"
#include "holderlab/quadrature.hpp"

namespace holderlab {

namespace {

constexpr std::array<std::array<int, 2>, 10> kPowers{{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1},
                                                      {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}}};

// Inverse Vandermonde of the principal lattice {a + b <= 3} in monomial order.
const Eigen::Matrix<double, 10, 10>& lagrange_matrix() {
  static const Eigen::Matrix<double, 10, 10> inv = [] {
    Eigen::Matrix<double, 10, 10> v;
    for (int k = 0; k < 10; ++k) {
      for (int m = 0; m < 10; ++m) {
        v(k, m) = std::pow(kPowers[k][0], kPowers[m][0]) * std::pow(kPowers[k][1], kPowers[m][1]);
      }
    }
    return Eigen::Matrix<double, 10, 10>(v.inverse());
  }();
  return inv;
}

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

ToricInterpolant::ToricInterpolant(int m, double delta, std::vector<double> values)
    : m_(m), delta_(delta), values_(std::move(values)) {
  if (m < 3) throw InputError("toric grid needs at least 4 nodes per leg");
  row_start_.resize(m + 2);
  row_start_[0] = 0;
  for (int i = 0; i <= m; ++i) row_start_[i + 1] = row_start_[i] + static_cast<std::size_t>(m - i + 1);
  if (values_.size() != row_start_[m + 1]) throw InputError("toric grid: value count mismatch");
}

std::size_t ToricInterpolant::index(int i, int j) const { return row_start_[i] + static_cast<std::size_t>(j); }

void ToricInterpolant::anchor(double x, double y, int& i0, int& j0) const {
  i0 = std::clamp(static_cast<int>(std::floor(x)), 0, m_ - 3);
  j0 = std::clamp(static_cast<int>(std::floor(y)), 0, m_ - 3);
  while (i0 + j0 > m_ - 3) {
    if (j0 == 0 || (i0 > 0 && x - i0 <= y - j0)) {
      --i0;
    } else {
      --j0;
    }
  }
}

double ToricInterpolant::value(double rho1, double rho2) const {
  const double x = std::max(rho1, 0.0) / delta_;
  const double y = std::max(rho2, 0.0) / delta_;
  if (x + y > m_ * (1.0 + 1e-9)) throw DomainError("toric interpolant queried outside the triangle");
  int i0 = 0, j0 = 0;
  anchor(x, y, i0, j0);
  Eigen::Matrix<double, 10, 1> vals;
  for (int k = 0; k < 10; ++k) vals(k) = node(i0 + kPowers[k][0], j0 + kPowers[k][1]);
  const Eigen::Matrix<double, 10, 1> coef = lagrange_matrix() * vals;
  const double lx = x - i0;
  const double ly = y - j0;
  double acc = 0.0;
  for (int m = 0; m < 10; ++m) acc += coef(m) * ipow(lx, kPowers[m][0]) * ipow(ly, kPowers[m][1]);
  return acc;
}

std::pair<double, double> ToricInterpolant::gradient(double rho1, double rho2) const {
  const double x = std::max(rho1, 0.0) / delta_;
  const double y = std::max(rho2, 0.0) / delta_;
  if (x + y > m_ * (1.0 + 1e-9)) throw DomainError("toric interpolant queried outside the triangle");
  int i0 = 0, j0 = 0;
  anchor(x, y, i0, j0);
  Eigen::Matrix<double, 10, 1> vals;
  for (int k = 0; k < 10; ++k) vals(k) = node(i0 + kPowers[k][0], j0 + kPowers[k][1]);
  const Eigen::Matrix<double, 10, 1> coef = lagrange_matrix() * vals;
  const double lx = x - i0;
  const double ly = y - j0;
  double gx = 0.0;
  double gy = 0.0;
  for (int m = 0; m < 10; ++m) {
    const int a = kPowers[m][0];
    const int b = kPowers[m][1];
    if (a > 0) gx += coef(m) * a * ipow(lx, a - 1) * ipow(ly, b);
    if (b > 0) gy += coef(m) * b * ipow(lx, a) * ipow(ly, b - 1);
  }
  return {gx / delta_, gy / delta_};
}

ScalarField ToricInterpolant::lift() const {
  auto self = std::make_shared<const ToricInterpolant>(*this);
  return [self](const Vec& z) {
    return self->value(z(0) * z(0) + z(1) * z(1), z(2) * z(2) + z(3) * z(3));
  };
}

VectorField ToricInterpolant::lift_gradient() const {
  auto self = std::make_shared<const ToricInterpolant>(*this);
  return [self](const Vec& z) -> Vec {
    const auto [v1, v2] = self->gradient(z(0) * z(0) + z(1) * z(1), z(2) * z(2) + z(3) * z(3));
    return make_vec({2.0 * z(0) * v1, 2.0 * z(1) * v1, 2.0 * z(2) * v2, 2.0 * z(3) * v2});
  };
}

namespace {

struct Term {
  std::size_t node;
  double coef;
};

using Functional = std::vector<Term>;

double evaluate_at(const Functional& f, const std::vector<double>& v) {
  double acc = 0.0;
  for (const auto& t : f) acc += t.coef * v[t.node];
  return acc;
}

// Discrete reduced operator on the triangle grid.
class ToricOperator {
 public:
  ToricOperator(int m, double delta, const ToricInterpolant& shape) : m_(m), delta_(delta) {
    for (int i = 0; i <= m; ++i) {
      for (int j = 0; i + j < m; ++j) build(i, j, shape);
    }
  }

  std::size_t rows() const { return rows_.size(); }

  struct Row {
    std::size_t node;
    int i, j;
    Functional a1, a2, v12;
  };

  const std::vector<Row>& all() const { return rows_; }

 private:
  void build(int i, int j, const ToricInterpolant& shape) {
    Row row;
    row.node = shape.index(i, j);
    row.i = i;
    row.j = j;
    row.a1 = arm(i, j, true, shape);
    row.a2 = arm(i, j, false, shape);
    if (i >= 1 && j >= 1) {
      const double s = 1.0 / (2.0 * delta_ * delta_);
      row.v12 = {{shape.index(i + 1, j), s},      {shape.index(i - 1, j), s},      {shape.index(i, j + 1), s},
                 {shape.index(i, j - 1), s},      {shape.index(i, j), -2.0 * s},   {shape.index(i + 1, j - 1), -s},
                 {shape.index(i - 1, j + 1), -s}};
    }
    rows_.push_back(std::move(row));
  }

  // v_k + rho_k v_kk along axis k in conservative form; one-sided v_k on the axis.
  Functional arm(int i, int j, bool first, const ToricInterpolant& shape) const {
    const int c = first ? i : j;
    auto at = [&](int step) { return first ? shape.index(i + step, j) : shape.index(i, j + step); };
    if (c >= 1) {
      return {{at(1), (c + 0.5) / delta_}, {at(0), -2.0 * c / delta_}, {at(-1), (c - 0.5) / delta_}};
    }
    const int other = first ? j : i;
    if (2 + other <= m_) return {{at(0), -1.5 / delta_}, {at(1), 2.0 / delta_}, {at(2), -0.5 / delta_}};
    return {{at(0), -1.0 / delta_}, {at(1), 1.0 / delta_}};
  }

  int m_;
  double delta_;
  std::vector<Row> rows_;
};

}  // namespace

ToricSolution toric_solve(const DirichletProblem& p, const ToricOptions& options) {
  if (p.n() != 2 || p.symmetry != Symmetry::Toric) throw InputError("toric solve needs a toric problem with n = 2");
  if (p.f_vanishes()) {
    if (!p.candidate) throw InputError("toric solve: f vanishes identically; supply a candidate to certify");
    ToricSolution out;
    out.result = certify_candidate(p, options.sample_resolution);
    return out;
  }
  const int m = options.nodes - 1;
  const double r2 = p.radius() * p.radius();
  const double delta = r2 / m;
  auto lift_point = [](double rho1, double rho2) {
    return make_vec({std::sqrt(std::max(rho1, 0.0)), 0.0, std::sqrt(std::max(rho2, 0.0)), 0.0});
  };

  std::vector<double> v;
  std::vector<double> f;
  double fmax = 0.0;
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; i + j <= m; ++j) {
      const Vec z = lift_point(i * delta, j * delta);
      f.push_back(p.f(z));
      fmax = std::max(fmax, f.back());
      v.push_back(0.0);
    }
  }
  ToricInterpolant shape(m, delta, v);
  const ToricOperator op(m, delta, shape);

  // Initial guess phi + K (rho_1 + rho_2 - r^2), K = sqrt(max f); boundary nodes keep phi.
  const double k_scale = std::sqrt(fmax);
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; i + j <= m; ++j) {
      const Vec z = lift_point(i * delta, j * delta);
      const double base = p.phi(i + j == m ? z : z);
      v[shape.index(i, j)] = base + (i + j == m ? 0.0 : k_scale * ((i + j) * delta - r2));
    }
  }

  const std::size_t nu = op.rows();
  std::vector<int> column(v.size(), -1);
  for (std::size_t r = 0; r < nu; ++r) column[op.all()[r].node] = static_cast<int>(r);

  auto evaluate = [&](const std::vector<double>& vals, Eigen::VectorXd& res, bool& elliptic) {
    res.resize(static_cast<Eigen::Index>(nu));
    elliptic = true;
    for (std::size_t r = 0; r < nu; ++r) {
      const auto& row = op.all()[r];
      const double a1 = evaluate_at(row.a1, vals);
      const double a2 = evaluate_at(row.a2, vals);
      if (!(a1 > 0.0) || !(a2 > 0.0)) elliptic = false;
      double cross = 0.0;
      if (!row.v12.empty()) {
        const double v12 = evaluate_at(row.v12, vals);
        cross = row.i * row.j * delta * delta * v12 * v12;
      }
      res(static_cast<Eigen::Index>(r)) = a1 * a2 - cross - f[row.node];
    }
  };

  Eigen::VectorXd res;
  bool elliptic = false;
  evaluate(v, res, elliptic);
  if (!elliptic) throw ConvergenceError("toric solve: initial guess violates the ellipticity safeguard");
  const double target = options.tol * std::max(1.0, fmax);
  int iterations = 0;
  double norm = res.lpNorm<Eigen::Infinity>();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  while (norm > target) {
    if (iterations >= options.max_iterations) {
      throw ConvergenceError("toric solve: no convergence after " + std::to_string(iterations) +
                             " Newton steps, residual " + fmt_num(norm));
    }
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(nu * 12);
    for (std::size_t r = 0; r < nu; ++r) {
      const auto& row = op.all()[r];
      const double a1 = evaluate_at(row.a1, v);
      const double a2 = evaluate_at(row.a2, v);
      auto add = [&](const Functional& fn, double scale) {
        for (const auto& t : fn) {
          const int c = column[t.node];
          if (c >= 0) trip.emplace_back(static_cast<int>(r), c, scale * t.coef);
        }
      };
      add(row.a1, a2);
      add(row.a2, a1);
      if (!row.v12.empty()) add(row.v12, -2.0 * row.i * row.j * delta * delta * evaluate_at(row.v12, v));
    }
    Eigen::SparseMatrix<double> jac(static_cast<Eigen::Index>(nu), static_cast<Eigen::Index>(nu));
    jac.setFromTriplets(trip.begin(), trip.end());
    lu.compute(jac);
    if (lu.info() != Eigen::Success) throw ConvergenceError("toric solve: singular Newton matrix");
    const Eigen::VectorXd step = lu.solve(res);
    if (!step.allFinite()) throw ConvergenceError("toric solve: non-finite Newton step");

    double lambda = 1.0;
    bool accepted = false;
    std::vector<double> trial = v;
    Eigen::VectorXd trial_res;
    for (int halving = 0; halving <= 40; ++halving) {
      for (std::size_t r = 0; r < nu; ++r) {
        trial[op.all()[r].node] = v[op.all()[r].node] - lambda * step(static_cast<Eigen::Index>(r));
      }
      bool ok = false;
      evaluate(trial, trial_res, ok);
      if (ok && trial_res.lpNorm<Eigen::Infinity>() < norm) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    ++iterations;
    if (!accepted) {
      throw ConvergenceError("toric solve: line search failed (safeguard or residual decrease), residual " +
                             fmt_num(norm));
    }
    const double moved = lambda * step.lpNorm<Eigen::Infinity>();
    v.swap(trial);
    res = trial_res;
    norm = res.lpNorm<Eigen::Infinity>();
    if (moved < 1e-14 && norm > target) {
      throw ConvergenceError("toric solve: Newton stagnated with residual " + fmt_num(norm));
    }
  }

  ToricSolution out;
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& row : op.all()) {
    const double a1 = evaluate_at(row.a1, v);
    const double a2 = evaluate_at(row.a2, v);
    double off = 0.0;
    if (!row.v12.empty()) off = std::sqrt(row.i * row.j) * delta * evaluate_at(row.v12, v);
    const double tr = 0.5 * (a1 + a2);
    const double disc = std::sqrt(0.25 * (a1 - a2) * (a1 - a2) + off * off);
    margin = std::min(margin, tr - disc);
  }
  out.v = std::make_shared<const ToricInterpolant>(m, delta, std::move(v));
  SolveResult& result = out.result;
  result.method = "toric-newton";
  result.iterations = iterations;
  result.residual = norm;
  result.psh_margin = margin;
  result.grid_step = delta;
  result.u = SampledFunction::on_ball(4, p.radius(), grid_spacing(p.radius(), options.sample_resolution),
                                      out.v->lift(), out.v->lift_gradient());
  return out;
}

SolveResult certify_candidate(const DirichletProblem& p, int sample_resolution, double tol) {
  if (!p.candidate) throw InputError("certification needs a candidate solution");
  const int dim = p.domain.real_dim();
  const double r = p.radius();
  const SphereQuadrature q = SphereQuadrature::make(dim, dim <= 2 ? 256 : 16);
  double boundary_gap = 0.0;
  for (const auto& e : q.nodes()) boundary_gap = std::max(boundary_gap, std::abs(p.candidate(r * e) - p.phi(r * e)));
  SolveResult out;
  out.method = "certified";
  out.iterations = 0;
  spot_check_equation(p.candidate, p, 1e-3 * r, 64, out.residual, out.psh_margin);
  if (boundary_gap > tol) throw InputError("candidate fails the boundary condition by " + fmt_num(boundary_gap));
  if (out.residual > tol) throw InputError("candidate fails the equation by " + fmt_num(out.residual));
  if (out.psh_margin < -tol) throw InputError("candidate is not plurisubharmonic");
  out.certified = true;
  out.grid_step = grid_spacing(r, sample_resolution);
  out.u = SampledFunction::on_ball(dim, r, out.grid_step, p.candidate);
  return out;
}

}  // namespace holderlab
