#include "holderlab/poisson.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "holderlab/quadrature.hpp"

namespace holderlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void cubic_weights(double t, double w[4], double dw[4]) {
  w[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
  w[1] = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  w[2] = -(t + 1.0) * t * (t - 2.0) / 2.0;
  w[3] = (t + 1.0) * t * (t - 1.0) / 6.0;
  dw[0] = -(3.0 * t * t - 6.0 * t + 2.0) / 6.0;
  dw[1] = (3.0 * t * t - 4.0 * t - 1.0) / 2.0;
  dw[2] = -(3.0 * t * t - 2.0 * t - 2.0) / 2.0;
  dw[3] = (3.0 * t * t - 1.0) / 6.0;
}

}  // namespace

GridInterpolant::GridInterpolant(double radius, int resolution, std::vector<double> values)
    : r_(radius), res_(resolution), h_(2.0 * radius / (resolution - 1)), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(res_) * res_) throw InputError("grid interpolant: size mismatch");
}

namespace {

struct Cell {
  int i0;
  int j0;
  double wx[4], dwx[4], wy[4], dwy[4];
};

Cell locate(double r, double h, int res, const Vec& x) {
  if (x.size() != 2) throw InputError("grid interpolant expects planar points");
  Cell c;
  const double gx = (x(0) + r) / h;
  const double gy = (x(1) + r) / h;
  c.i0 = std::clamp(static_cast<int>(std::floor(gx)), 1, res - 3);
  c.j0 = std::clamp(static_cast<int>(std::floor(gy)), 1, res - 3);
  cubic_weights(gx - c.i0, c.wx, c.dwx);
  cubic_weights(gy - c.j0, c.wy, c.dwy);
  return c;
}

}  // namespace

double GridInterpolant::value(const Vec& x) const {
  if (x.norm() > r_ + 2.0 * h_) throw DomainError("grid interpolant queried outside the sampled disc");
  const Cell c = locate(r_, h_, res_, x);
  double acc = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) acc += c.wx[a] * c.wy[b] * node(c.i0 - 1 + a, c.j0 - 1 + b);
  }
  if (std::isnan(acc)) throw DomainError("grid interpolant stencil lacks data");
  return acc;
}

Vec GridInterpolant::gradient(const Vec& x) const {
  if (x.norm() > r_ + 2.0 * h_) throw DomainError("grid interpolant queried outside the sampled disc");
  const Cell c = locate(r_, h_, res_, x);
  Vec g = Vec::Zero(2);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double v = node(c.i0 - 1 + a, c.j0 - 1 + b);
      g(0) += c.dwx[a] * c.wy[b] * v;
      g(1) += c.wx[a] * c.dwy[b] * v;
    }
  }
  g /= h_;
  if (std::isnan(g(0)) || std::isnan(g(1))) throw DomainError("grid interpolant stencil lacks data");
  return g;
}

SolveResult poisson_disc_solve(const DirichletProblem& p, int resolution) {
  if (p.n() != 1) throw InputError("the disc Poisson solver needs n = 1");
  const double r = p.radius();
  const double h = grid_spacing(r, resolution);
  const int res = resolution;
  const double edge = 1e-10 * h;
  enum Kind : unsigned char { Unknown, OnBoundary, Outside };

  std::vector<Kind> kind(static_cast<std::size_t>(res) * res);
  std::vector<int> unknown_id(kind.size(), -1);
  std::vector<double> value(kind.size(), kNaN);
  auto at = [res](int i, int j) { return static_cast<std::size_t>(i) * res + j; };
  auto coord = [&](int i, int j) { return make_vec({-r + i * h, -r + j * h}); };
  auto boundary_value = [&](const Vec& x) { return p.phi(x * (r / x.norm())); };

  int unknowns = 0;
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      const double d = coord(i, j).norm();
      const std::size_t k = at(i, j);
      if (d < r - edge) {
        kind[k] = Unknown;
        unknown_id[k] = unknowns++;
      } else if (d <= r + edge) {
        kind[k] = OnBoundary;
        value[k] = boundary_value(coord(i, j));
      } else {
        kind[k] = Outside;
      }
    }
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(unknowns) * 5);
  Eigen::VectorXd rhs(unknowns);
  const int di[4] = {1, -1, 0, 0};
  const int dj[4] = {0, 0, 1, -1};
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      const std::size_t k = at(i, j);
      if (kind[k] != Unknown) continue;
      const int row = unknown_id[k];
      const Vec x = coord(i, j);
      rhs(row) = 4.0 * p.f(x);
      double diag = 0.0;
      for (int axis = 0; axis < 2; ++axis) {
        double arm[2];
        int col[2];
        double known[2];
        for (int side = 0; side < 2; ++side) {
          const int dir = 2 * axis + side;
          const int ni = i + di[dir];
          const int nj = j + dj[dir];
          const std::size_t nk = at(ni, nj);
          col[side] = -1;
          known[side] = 0.0;
          arm[side] = h;
          if (kind[nk] == Unknown) {
            col[side] = unknown_id[nk];
          } else if (kind[nk] == OnBoundary) {
            known[side] = value[nk];
          } else {
            const double sigma = side == 0 ? 1.0 : -1.0;
            const double pa = x(axis);
            const double c = x.squaredNorm() - r * r;
            const double s = -sigma * pa + std::sqrt(pa * pa - c);
            Vec b = x;
            b(axis) += sigma * s;
            arm[side] = s;
            known[side] = boundary_value(b);
          }
        }
        // 2/(a+b) [ (u_+ - u_0)/a - (u_0 - u_-)/b ]
        const double scale = 2.0 / (arm[0] + arm[1]);
        for (int side = 0; side < 2; ++side) {
          const double coef = scale / arm[side];
          diag -= coef;
          if (col[side] >= 0) {
            triplets.emplace_back(row, col[side], coef);
          } else {
            rhs(row) -= coef * known[side];
          }
        }
      }
      triplets.emplace_back(row, row, diag);
    }
  }

  Eigen::SparseMatrix<double> a(unknowns, unknowns);
  a.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw ConvergenceError("Poisson solve: sparse LU factorization failed");
  const Eigen::VectorXd sol = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !sol.allFinite()) throw ConvergenceError("Poisson solve: linear solve failed");
  for (std::size_t k = 0; k < kind.size(); ++k) {
    if (kind[k] == Unknown) value[k] = sol(unknown_id[k]);
  }

  // Ghost values outside the disc for the interpolant: quadratic extrapolation
  // along a grid line through the boundary crossing and two inner nodes.
  std::vector<double> ghost = value;
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      const std::size_t k = at(i, j);
      if (kind[k] != Outside) continue;
      const Vec x = coord(i, j);
      if (x.norm() > r + 3.5 * h) continue;
      double best = kNaN;
      int best_steps = 99;
      for (int dir = 0; dir < 4; ++dir) {
        const int axis = dir / 2;
        const double sigma = (dir % 2 == 0) ? 1.0 : -1.0;
        int steps = 1;
        while (steps <= 4) {
          const int ni = i + steps * di[dir];
          const int nj = j + steps * dj[dir];
          if (ni < 0 || nj < 0 || ni >= res || nj >= res) break;
          if (kind[at(ni, nj)] != Outside) break;
          ++steps;
        }
        if (steps > 4 || steps >= best_steps) continue;
        const double pa = x(axis);
        const double c = x.squaredNorm() - r * r;
        const double disc = pa * pa - c;
        if (disc < 0.0) continue;
        const double sb = -sigma * pa - std::sqrt(disc);
        if (!(sb > 0.0)) continue;
        Vec b = x;
        b(axis) += sigma * sb;
        int first = steps;
        if (steps * h - sb < 0.25 * h) ++first;
        double s[3] = {sb, first * h, (first + 1) * h};
        double v[3] = {boundary_value(b), kNaN, kNaN};
        bool ok = true;
        for (int m = 0; m < 2; ++m) {
          const int ni = i + (first + m) * di[dir];
          const int nj = j + (first + m) * dj[dir];
          if (ni < 0 || nj < 0 || ni >= res || nj >= res || kind[at(ni, nj)] == Outside) {
            ok = false;
            break;
          }
          v[m + 1] = value[at(ni, nj)];
        }
        if (!ok) continue;
        double e = 0.0;
        for (int m = 0; m < 3; ++m) {
          double l = 1.0;
          for (int q = 0; q < 3; ++q) {
            if (q != m) l *= (0.0 - s[q]) / (s[m] - s[q]);
          }
          e += l * v[m];
        }
        best = e;
        best_steps = steps;
      }
      ghost[k] = std::isnan(best) ? boundary_value(x) : best;
    }
  }

  SolveResult out;
  out.method = "poisson-disc";
  out.grid_step = h;
  out.iterations = 1;
  out.residual = 0.0;
  out.psh_margin = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < res; ++i) {
    for (int j = 1; j + 1 < res; ++j) {
      if (kind[at(i, j)] != Unknown) continue;
      bool regular = true;
      for (int dir = 0; dir < 4; ++dir) regular = regular && kind[at(i + di[dir], j + dj[dir])] != Outside;
      if (!regular) continue;
      const double lap = (value[at(i + 1, j)] + value[at(i - 1, j)] + value[at(i, j + 1)] + value[at(i, j - 1)] -
                          4.0 * value[at(i, j)]) /
                         (h * h);
      out.residual = std::max(out.residual, std::abs(0.25 * lap - p.f(coord(i, j))));
      out.psh_margin = std::min(out.psh_margin, 0.25 * lap);
    }
  }

  auto interp = std::make_shared<const GridInterpolant>(r, res, std::move(ghost));
  SampledFunction& u = out.u;
  u.dim = 2;
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      const std::size_t k = at(i, j);
      if (kind[k] == Outside) continue;
      const Vec x = coord(i, j);
      u.points.push_back(x);
      u.values.push_back(value[k]);
      u.boundary_distance.push_back(std::max(0.0, r - x.norm()));
    }
  }
  u.evaluator = [interp](const Vec& x) { return interp->value(x); };
  u.gradient_evaluator = [interp](const Vec& x) { return interp->gradient(x); };
  u.fd_step = h;
  u.lattice_spacing = h;
  u.ball_radius = r;
  return out;
}

HarmonicExtension::HarmonicExtension(ScalarField phi, int nodes, double radius) : phi_(std::move(phi)), r_(radius) {
  if (nodes < 64) throw InputError("harmonic extension needs at least 64 nodes");
  if (!(radius > 0.0)) throw InputError("harmonic extension radius must be positive");
  cos_.resize(nodes);
  sin_.resize(nodes);
  values_.resize(nodes);
  for (int k = 0; k < nodes; ++k) {
    const double t = 2.0 * std::numbers::pi * k / nodes;
    cos_[k] = std::cos(t);
    sin_[k] = std::sin(t);
    values_[k] = phi_(make_vec({radius * cos_[k], radius * sin_[k]}));
  }
}

double HarmonicExtension::operator()(const Vec& z) const {
  if (z.size() != 2) throw InputError("harmonic extension expects planar points");
  const double rho = z.norm() / r_;
  if (rho > 1.0 + 1e-12) throw DomainError("harmonic extension evaluated outside the disc");
  if (rho >= 1.0 - 1e-14) return phi_(z * (r_ / z.norm()));
  const double x = z(0) / r_;
  const double y = z(1) / r_;
  const double num = 1.0 - rho * rho;
  // Dividing by the discrete kernel mass keeps the rule a convex combination
  // of boundary values near the circle, where the trapezoid sum degrades.
  std::vector<double> terms(values_.size());
  std::vector<double> kernel(values_.size());
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const double dx = cos_[k] - x;
    const double dy = sin_[k] - y;
    kernel[k] = num / (dx * dx + dy * dy);
    terms[k] = values_[k] * kernel[k];
  }
  return SphereQuadrature::pairwise_sum(terms) / SphereQuadrature::pairwise_sum(kernel);
}

Vec HarmonicExtension::gradient(const Vec& z) const {
  if (z.size() != 2) throw InputError("harmonic extension expects planar points");
  const double x = z(0) / r_;
  const double y = z(1) / r_;
  const double rho2 = x * x + y * y;
  if (rho2 >= 1.0) throw DomainError("harmonic extension gradient needs an interior point");
  const double num = 1.0 - rho2;
  double gx = 0.0;
  double gy = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const double dx = cos_[k] - x;
    const double dy = sin_[k] - y;
    const double d = dx * dx + dy * dy;
    const double d2 = d * d;
    gx += values_[k] * (-2.0 * x * d + 2.0 * num * dx) / d2;
    gy += values_[k] * (-2.0 * y * d + 2.0 * num * dy) / d2;
  }
  const double scale = 1.0 / (static_cast<double>(values_.size()) * r_);
  return make_vec({gx * scale, gy * scale});
}

ScalarField HarmonicExtension::field() const {
  auto self = std::make_shared<const HarmonicExtension>(*this);
  return [self](const Vec& z) { return (*self)(z); };
}

VectorField HarmonicExtension::gradient_field() const {
  auto self = std::make_shared<const HarmonicExtension>(*this);
  return [self](const Vec& z) { return self->gradient(z); };
}

std::shared_ptr<const HarmonicExtension> harmonic_extension_disc(ScalarField phi, int nodes, double radius) {
  return std::make_shared<const HarmonicExtension>(std::move(phi), nodes, radius);
}

}  // namespace holderlab
