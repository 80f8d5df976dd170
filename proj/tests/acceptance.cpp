// Runs the acceptance criteria end to end and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "config.hpp"
#include "holderlab/experiments.hpp"
#include "holderlab/geometry.hpp"
#include "holderlab/hessian.hpp"
#include "holderlab/mollify.hpp"
#include "holderlab/parallel.hpp"
#include "holderlab/poisson.hpp"
#include "holderlab/radial.hpp"
#include "holderlab/solve.hpp"
#include "holderlab/toric.hpp"
#include "oracles.hpp"
#include "runner.hpp"

using namespace holderlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

CVec random_in_ball(std::mt19937_64& rng, int n, double max_radius) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CVec z(n);
  for (int i = 0; i < n; ++i) z(i) = Complex(g(rng), g(rng));
  return z / z.norm() * (max_radius * std::pow(u(rng), 1.0 / (2 * n)));
}

oracle::LVec to_long(const CVec& z) {
  oracle::LVec out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = oracle::LC(z(i).real(), z(i).imag());
  return out;
}

DirichletProblem disc_problem(ScalarField phi, ScalarField f_root) {
  DirichletProblem p;
  p.domain = BallDomain(1, 1.0);
  p.phi = std::move(phi);
  p.f_root = std::move(f_root);
  p.symmetry = Symmetry::Disc;
  return p;
}

double max_error(const SampledFunction& u, const ScalarField& exact) {
  double e = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) e = std::max(e, std::abs(u.values[i] - exact(u.points[i])));
  return e;
}

Outcome automorphisms() {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  double fixed = 0.0;
  double origin = 0.0;
  double sphere = 0.0;
  double jac = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 3;
    const CVec a = random_in_ball(rng, n, 0.95);
    CVec z(n);
    for (int i = 0; i < n; ++i) z(i) = Complex(g(rng), g(rng));
    z /= z.norm();
    const MoebiusMap m(a);
    fixed = std::max(fixed, m.apply(a).norm());
    origin = std::max(origin, (m.apply(CVec::Zero(n)) + a).norm());
    sphere = std::max(sphere, std::abs(m.apply(z).norm() - 1.0));
    const CVec w = random_in_ball(rng, n, 0.95);
    const double ref = static_cast<double>(oracle::jacobian_det_sq(to_long(a), to_long(w)));
    jac = std::max(jac, std::abs(m.jacobian_det_sq(w) - ref) / ref);
  }
  bool suite = true;
  for (const auto& row : automorphism_suite(1000, 1)) suite = suite && row.pass;
  return {fixed <= 1e-12 && origin <= 1e-12 && sphere <= 1e-10 && jac <= 1e-6 && suite,
          "|T_a(a)| " + num(fixed) + ", |T_a(0)+a| " + num(origin) + ", sphere " + num(sphere) + ", jacobian rel " +
              num(jac)};
}

Outcome poisson_solver() {
  const auto p = disc_problem([](const Vec&) { return 0.0; }, [](const Vec&) { return 1.0; });
  const double err = max_error(poisson_disc_solve(p, 129).u, [](const Vec& x) { return x.squaredNorm() - 1.0; });
  const ScalarField exact = [](const Vec& x) { return std::exp(x(0)) * std::cos(x(1)); };
  const auto q = disc_problem(exact, [](const Vec&) { return 0.0; });
  const double e1 = max_error(poisson_disc_solve(q, 129).u, exact);
  const double e2 = max_error(poisson_disc_solve(q, 257).u, exact);
  const double ratio = e1 / e2;
  return {err <= 1e-3 && ratio >= 3.5 && ratio <= 4.5,
          "quadratic error " + num(err) + ", convergence ratio " + num(ratio) + " on exp(x)cos(y)"};
}

Outcome radial_and_toric() {
  const auto g = radial_solve([](double) { return 1.0; }, 0.0, 1.0, 2, 10000);
  double radial = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double s = i / 1000.0;
    radial = std::max(radial, std::abs(g->value(s) - (s - 1.0)));
  }
  DirichletProblem p;
  p.domain = BallDomain(2, 1.0);
  p.phi = [](const Vec&) { return 0.0; };
  p.f_root = [](const Vec&) { return 1.0; };
  p.symmetry = Symmetry::Toric;
  ToricOptions o;
  o.nodes = 129;
  const auto sol = toric_solve(p, o);
  double toric = 0.0;
  const int m = sol.v->m();
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; i + j <= m; ++j) {
      const double s = (i + j) * sol.v->delta();
      toric = std::max(toric, std::abs(sol.v->node(i, j) - g->value(s)));
    }
  }
  // A density that moves Newton away from its initial guess: f = |z|^2.
  p.f_root = [](const Vec& x) { return x.norm(); };
  const auto sol2 = toric_solve(p, o);
  const auto g2 = radial_solve([](double s) { return s; }, 0.0, 1.0, 2, 10000);
  double toric2 = 0.0;
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; i + j <= m; ++j) {
      const double s = (i + j) * sol2.v->delta();
      toric2 = std::max(toric2, std::abs(sol2.v->node(i, j) - g2->value(s)));
    }
  }
  return {radial <= 1e-10 && toric <= 5e-3 && toric2 <= 5e-3,
          "radial error " + num(radial) + ", toric vs radial " + num(toric) + " (f = 1), " + num(toric2) +
              " (f = |z|^2, " + std::to_string(sol2.result.iterations) + " Newton steps)"};
}

Outcome superadditivity() {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 3.0);
  const auto psd = [&](int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
    }
    const CMat q = Eigen::HouseholderQR<CMat>(m).householderQ();
    Eigen::VectorXd eig(n);
    for (int i = 0; i < n; ++i) eig(i) = u(rng);
    return CMat(q * eig.cast<Complex>().asDiagonal() * q.adjoint());
  };
  double worst = INFINITY;
  bool all = true;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 2 + trial % 3;
    const auto s = det_root_superadditivity(psd(n), psd(n));
    all = all && s.holds;
    worst = std::min(worst, s.lhs - s.rhs);
  }
  return {all && worst >= -1e-12, "min slack " + num(worst) + " over 10000 pairs"};
}

Outcome barrier() {
  const auto inst = make_instance(1, 1.0, Symmetry::Disc, "zero", "const:1", 0.5);
  const auto rows = barrier_experiment(inst.problem);
  bool all = rows.size() == 10;
  double worst = -INFINITY;
  for (const auto& row : rows) {
    all = all && row.comparison.status == ComparisonStatus::Holds && row.comparison.worst_gap <= 1e-6;
    worst = std::max(worst, row.comparison.worst_gap);
  }
  return {all, "max(W - 2u_x) " + num(worst) + " over " + std::to_string(rows.size()) + " trials, A2 " +
                   (rows.empty() ? std::string("-") : num(rows.front().a2))};
}

Outcome mean_value_machine() {
  bool ok = true;
  std::string detail;
  for (double alpha : {0.25, 0.5, 0.75}) {
    const ScalarField v = [alpha](const Vec& x) { return std::pow(x.norm(), 1.0 + alpha); };
    const auto mv = mean_value_deviation(v, 2, 0.25, 0.25, alpha);
    const double slope = exponent_fit(mv.scales, mv.sup_per_scale).slope;
    const auto ladder = dyadic_regularity(v, 2, 0.25, 0.25, alpha, mv.A);
    ok = ok && std::abs(slope - (1.0 + alpha)) <= 0.05 && ladder.levels.size() == 6 &&
         std::abs(ladder.w_decay_rate - (1.0 + alpha)) <= 0.1;
    detail += (detail.empty() ? "" : "; ") + std::string("alpha ") + num(alpha) + ": mv slope " + num(slope) +
              ", ladder " + num(ladder.w_decay_rate);
  }
  return {ok, detail};
}

Outcome bounds() {
  auto family = c1alpha_family(0.5, true);
  for (auto& inst : c0alpha_family(0.5)) {
    if (!inst.smooth_data) family.push_back(inst);
  }
  bool ok = family.size() >= 6;
  double floor = INFINITY;
  double slack = INFINITY;
  std::string failed;
  for (std::size_t k = 0; k < family.size(); ++k) {
    Instance inst = family[k];
    // Solve numerically even where a closed form exists.
    inst.oracle = {};
    inst.oracle_gradient = {};
    const SolvedField u = solve_instance(inst, 129);
    const auto rep = solution_bounds(inst, u, 400, derive_seed(7, k));
    const bool psh = !(u.psh_margin < -10.0 * u.grid_step * u.grid_step);
    if (!(rep.sup_bound && rep.positivity && psh)) {
      ok = false;
      failed += " " + inst.label;
    }
    floor = std::min(floor, rep.min_sphere_excess);
    slack = std::min(slack, rep.sup_phi + rep.sup_f_root - rep.sup_u);
  }
  return {ok, std::to_string(family.size()) + " solved instances, min sphere excess " + num(floor) +
                  ", min sup-bound slack " + num(slack) + (failed.empty() ? "" : ", failed:" + failed)};
}

Outcome second_differences() {
  SecondDifferenceOptions o;
  o.seed = 8;
  const ScalarField slice = [](const Vec& x) { return x(0) * x(0) + x(1) * x(1); };
  const auto n2 = second_difference_scan(slice, 4, 0.25, 0.5, o);
  const auto inst = make_instance(1, 1.0, Symmetry::Disc, "abspow:0.5", "zero", 0.5);
  const auto n1 = second_difference_scan(inst.oracle, 2, 0.25, 0.5, o);
  return {n2.fit.slope >= 1.95 && n1.fit.slope >= 1.45,
          "n=2 slice slope " + num(n2.fit.slope) + ", n=1 harmonic slope " + num(n1.fit.slope)};
}

Outcome estimate_ratios() {
  const auto family_max = [](const std::vector<Instance>& fam, bool c1, int res) {
    EstimateOptions o;
    o.resolution = res;
    double best = 0.0;
    for (const auto& inst : fam) {
      const auto e = c1 ? interior_c1alpha_experiment(inst, 0.25, 0.5, o) : interior_c0alpha_experiment(inst, 0.25, 0.5, o);
      best = std::max(best, e.ratio);
    }
    return best;
  };
  const auto c1 = c1alpha_family(0.5);
  const auto c0 = c0alpha_family(0.5);
  const double a1 = family_max(c1, true, 129);
  const double b1 = family_max(c1, true, 257);
  const double a0 = family_max(c0, false, 129);
  const double b0 = family_max(c0, false, 257);
  const double d1 = std::abs(b1 - a1) / a1;
  const double d0 = std::abs(b0 - a0) / a0;
  const bool finite = std::isfinite(a1) && std::isfinite(b1) && std::isfinite(a0) && std::isfinite(b0);
  return {finite && d1 <= 0.1 && d0 <= 0.1, "C1 constant " + num(a1) + " -> " + num(b1) + ", C0 constant " + num(a0) +
                                                " -> " + num(b0) + " (129 -> 257)"};
}

Outcome schauder() {
  const auto coarse = schauder_family(0.5, 0.05);
  const auto fine = schauder_family(0.5, 0.025);
  const double d1 = std::abs(fine.constant1 - coarse.constant1) / coarse.constant1;
  const double d2 = std::abs(fine.constant2 - coarse.constant2) / coarse.constant2;
  bool ok = coarse.reports.size() == 3 && std::isfinite(coarse.constant1) && std::isfinite(coarse.constant2);
  for (const auto& [name, rep] : coarse.reports) ok = ok && rep.rows.size() == 4;
  return {ok && d1 <= 0.1 && d2 <= 0.1, "constants " + num(coarse.constant1) + ", " + num(coarse.constant2) +
                                            " -> " + num(fine.constant1) + ", " + num(fine.constant2)};
}

Outcome scaling() {
  const double a = 0.5;
  const ScalarField quad = [](const Vec& x) { return x.squaredNorm(); };
  const VectorField quad_g = [](const Vec& x) { return Vec(2.0 * x); };
  const ScalarField absp = [a](const Vec& x) { return std::pow(std::abs(x(0)), 1.0 + a); };
  const VectorField absp_g = [a](const Vec& x) {
    Vec g = Vec::Zero(x.size());
    g(0) = (1.0 + a) * std::copysign(std::pow(std::abs(x(0)), a), x(0));
    return g;
  };
  double worst = 0.0;
  for (double r : {0.5, 2.0}) {
    worst = std::max(worst, scaling_check(quad, quad_g, 2, r, 0.25, a, 1.0 / 32.0).rel_error);
    worst = std::max(worst, scaling_check(absp, absp_g, 2, r, 0.25, a, 1.0 / 32.0).rel_error);
  }
  return {worst <= 0.01, "max relative error " + num(worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "holderlab_acceptance";
  fs::remove_all(root);
  bool ok = true;
  int files = 0;
  const unsigned before = thread_count();
  for (const char* command : {"check-geometry", "second-diff", "verify-c0a", "schauder"}) {
    cli::RunConfig c;
    c.command = command;
    c.phi = "abspow:0.5";
    c.f = "const:1";
    c.resolution = 129;
    c.seed = 11;
    cli::validate(c);
    const fs::path a = root / (std::string(command) + "_a");
    const fs::path b = root / (std::string(command) + "_b");
    const fs::path d = root / (std::string(command) + "_c");
    set_thread_count(1);
    cli::run(c, a.string());
    cli::run(c, b.string());
    set_thread_count(4);
    cli::run(c, d.string());
    for (const auto& entry : fs::directory_iterator(a)) {
      const std::string ref = slurp(entry.path());
      ok = ok && ref == slurp(b / entry.path().filename()) && ref == slurp(d / entry.path().filename());
      ++files;
    }
  }
  set_thread_count(before);
  fs::remove_all(root);
  return {ok && files > 0, std::to_string(files) + " artifacts identical across repeated runs and 1 vs 4 threads"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"automorphism identities and Jacobian", automorphisms},
      {"disc Poisson solver accuracy and order", poisson_solver},
      {"radial profile and toric Newton solver", radial_and_toric},
      {"det^(1/n) superadditivity", superadditivity},
      {"barrier comparison W <= 2u_x", barrier},
      {"mean-value deviation and dyadic ladder exponents", mean_value_machine},
      {"sub-mean-value positivity and sup bound", bounds},
      {"second-difference exponents", second_differences},
      {"interior estimate ratios under refinement", estimate_ratios},
      {"Poisson interior estimates over the mu sweep", schauder},
      {"scaling law of the gradient seminorm", scaling},
      {"determinism across runs and thread counts", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failures;
    std::printf("%s %zu %s: %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures;
}
