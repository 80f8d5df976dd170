#include "holderlab/problem.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <json.hpp>

#include "holderlab/csv.hpp"
#include "holderlab/hessian.hpp"

#include <Eigen/LU>

namespace holderlab {

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Disc: return "disc";
    case Symmetry::Radial: return "radial";
    case Symmetry::Toric: return "toric";
  }
  return "unknown";
}

Symmetry symmetry_from_string(const std::string& name) {
  if (name == "disc") return Symmetry::Disc;
  if (name == "radial") return Symmetry::Radial;
  if (name == "toric") return Symmetry::Toric;
  throw InputError("unknown symmetry '" + name + "'");
}

double DirichletProblem::f(const Vec& z) const { return std::pow(f_root(z), n()); }

namespace {

Vec random_in_ball(std::mt19937_64& rng, int dim, double radius) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec x(dim);
  for (int i = 0; i < dim; ++i) x(i) = g(rng);
  return x * (radius * std::pow(u(rng), 1.0 / dim) / x.norm());
}

// A random element of the claimed symmetry group applied to z.
Vec group_image(std::mt19937_64& rng, Symmetry s, const Vec& z) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  if (s == Symmetry::Toric) {
    CVec w = to_complex(z);
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) *= std::polar(1.0, angle(rng));
    return to_real(w);
  }
  // Radial: any point of the same norm.
  std::normal_distribution<double> g;
  Vec y(z.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = g(rng);
  return y * (z.norm() / y.norm());
}

}  // namespace

void DirichletProblem::validate(std::uint64_t seed, int samples) const {
  if (!f_root || !phi) throw InputError("problem '" + label + "': f_root and phi are required");
  if (symmetry == Symmetry::Disc && n() != 1) throw InputError("disc symmetry requires n = 1");
  if (symmetry == Symmetry::Toric && n() != 2) throw InputError("toric symmetry requires n = 2");
  const int dim = domain.real_dim();
  const double r = radius();
  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    const Vec z = random_in_ball(rng, dim, r);
    const double fz = f_root(z);
    if (!(fz >= -1e-12)) throw InputError("problem '" + label + "': f_root is negative at a sample");
    if (symmetry == Symmetry::Disc) continue;
    const Vec w = group_image(rng, symmetry, z);
    if (std::abs(f_root(w) - fz) > 1e-10 * std::max(1.0, std::abs(fz))) {
      throw InputError("problem '" + label + "': f is not " + to_string(symmetry) + "-invariant");
    }
    const Vec zb = z * (r / z.norm());
    const Vec wb = group_image(rng, symmetry, zb);
    const double pz = phi(zb);
    if (std::abs(phi(wb) - pz) > 1e-10 * std::max(1.0, std::abs(pz))) {
      throw InputError("problem '" + label + "': phi is not " + to_string(symmetry) + "-invariant");
    }
  }
}

bool DirichletProblem::f_vanishes(int samples) const {
  std::mt19937_64 rng(0xf0f0ULL);
  for (int k = 0; k < samples; ++k) {
    if (f_root(random_in_ball(rng, domain.real_dim(), radius())) != 0.0) return false;
  }
  return f_root(Vec::Zero(domain.real_dim())) == 0.0;
}

std::string SolveResult::csv_header() const {
  std::vector<std::string> cols;
  for (int i = 0; i < u.dim; ++i) cols.push_back("x" + std::to_string(i));
  cols.push_back("u");
  return csv_line(cols);
}

std::string SolveResult::csv_rows() const {
  std::string out;
  std::vector<std::string> fields(u.dim + 1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (int d = 0; d < u.dim; ++d) fields[d] = fmt_num(u.points[i](d));
    fields[u.dim] = fmt_num(u.values[i]);
    out += csv_line(fields);
  }
  return out;
}

std::string SolveResult::summary_json() const {
  nlohmann::ordered_json j;
  j["method"] = method;
  j["residual"] = residual;
  j["iterations"] = iterations;
  j["psh_margin"] = psh_margin;
  j["grid_step"] = grid_step;
  j["certified"] = certified;
  j["samples"] = u.size();
  return j.dump(2) + "\n";
}

void spot_check_equation(const ScalarField& u, const DirichletProblem& p, double step, int points, double& residual,
                         double& margin) {
  std::mt19937_64 rng(0xc0ffeeULL);
  residual = 0.0;
  margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < points; ++k) {
    const Vec z = random_in_ball(rng, p.domain.real_dim(), 0.9 * p.radius());
    const CMat h = complex_hessian(u, z, step, p.radius());
    residual = std::max(residual, std::abs(h.determinant().real() - p.f(z)));
    margin = std::min(margin, min_eigenvalue(h));
  }
}

}  // namespace holderlab
