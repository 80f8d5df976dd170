#include "runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <json.hpp>

#include "holderlab/csv.hpp"
#include "holderlab/solve.hpp"

namespace holderlab::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Context {
  const RunConfig& c;
  std::filesystem::path dir;
  RunOutcome out;
  Json metrics = Json::object();

  void write(const std::string& name, const std::string& table, const std::string& body) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + (dir / name).string() + "'");
    f << csv_preamble(c, table) << body;
    out.files.push_back(name);
  }
};

Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

int coarse_resolution(int res) {
  int coarse = (res + 1) / 2;
  if (coarse % 2 == 0) ++coarse;
  return coarse;
}

double relative_change(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

Instance instance_of(const RunConfig& c) {
  Instance inst = make_instance(c.n, c.r, c.symmetry, c.phi, c.f, c.alpha);
  try {
    inst.problem.validate(derive_seed(c.seed, 0));
  } catch (const Error& e) {
    throw ConfigError(std::string("instance: ") + e.what());
  }
  return inst;
}

constexpr double kStability = 0.10;

void cmd_solve(Context& x) {
  const Instance inst = instance_of(x.c);
  SolveOptions so;
  so.resolution = x.c.resolution;
  const SolveResult r = solve(inst.problem, so);
  x.write("solution.csv", "solution", r.csv_header() + r.csv_rows());
  SolvedField sf{r.u.evaluator, r.u.gradient_evaluator, r.grid_step, r.method, r.residual, r.psh_margin};
  const BoundsReport b = solution_bounds(inst, sf, 500, derive_seed(x.c.seed, 1));
  x.write("bounds.csv", "bounds", BoundsReport::csv_header() + b.csv_row());
  x.metrics["solve"] = Json::parse(r.summary_json());
  x.metrics["sup_u"] = num(b.sup_u);
  x.metrics["min_sphere_excess"] = num(b.min_sphere_excess);
  const double psh_tol = -10.0 * r.grid_step * r.grid_step;
  const bool psh = r.psh_margin >= psh_tol;
  x.out.verdict = (psh && b.sup_bound && b.positivity) ? Verdict::Pass : Verdict::Fail;
  x.out.message = r.method + " residual " + short_num(r.residual) + ", psh margin " + short_num(r.psh_margin) +
                  " (tolerance " + short_num(psh_tol) + "), sup bound " + (b.sup_bound ? "ok" : "violated") +
                  ", sub-mean-value " + (b.positivity ? "ok" : "violated") + " (tolerance 1e-06)";
}

void cmd_geometry(Context& x) {
  const auto rows = automorphism_suite(1000, derive_seed(x.c.seed, 0));
  std::string body = "check,max_error,tolerance,pass\n";
  bool all = true;
  for (const auto& r : rows) {
    body += csv_line({"\"" + r.check + "\"", fmt_num(r.max_error), fmt_num(r.tolerance), r.pass ? "1" : "0"});
    x.metrics[r.check] = num(r.max_error);
    all = all && r.pass;
  }
  x.write("geometry.csv", "geometry", body);
  x.out.verdict = all ? Verdict::Pass : Verdict::Fail;
  x.out.message = std::to_string(rows.size()) + " automorphism identities over 1000 samples " +
                  (all ? "within tolerance" : "with failures");
}

void cmd_estimate(Context& x, bool c1) {
  const Instance inst = instance_of(x.c);
  const auto experiment = c1 ? interior_c1alpha_experiment : interior_c0alpha_experiment;
  std::vector<int> resolutions{x.c.resolution};
  const int coarse = coarse_resolution(x.c.resolution);
  if (coarse >= 33) resolutions.push_back(coarse);
  std::string body = "resolution," + EstimateRatio::csv_header();
  std::vector<EstimateRatio> est;
  for (int res : resolutions) {
    EstimateOptions eo;
    eo.resolution = res;
    eo.scan.seed = derive_seed(x.c.seed, 1);
    est.push_back(experiment(inst, x.c.t, x.c.alpha, eo));
    body += std::to_string(res) + "," + est.back().csv_row();
  }
  x.write(c1 ? "c1a.csv" : "c0a.csv", c1 ? "c1a" : "c0a", body);
  const EstimateRatio& e = est.front();
  x.metrics["lhs"] = num(e.lhs);
  x.metrics["rhs"] = num(e.rhs());
  x.metrics["ratio"] = num(e.ratio);

  const std::string name = c1 ? "C^{1,alpha}" : "C^{0,alpha}";
  if (c1 && !inst.smooth_data) {
    x.out.verdict = Verdict::Inconclusive;
    x.out.message = "data are not C^{1,alpha}; ratio " + short_num(e.ratio) + " recorded only";
    return;
  }
  if (!std::isfinite(e.ratio)) {
    x.out.verdict = Verdict::Fail;
    x.out.message = name + " seminorm " + short_num(e.lhs) + " with vanishing right-hand side";
    return;
  }
  if (est.size() > 1) {
    const double change = relative_change(e.ratio, est[1].ratio);
    x.metrics["coarse_ratio"] = num(est[1].ratio);
    x.metrics["relative_change"] = num(change);
    if (change > kStability) {
      x.out.verdict = Verdict::Inconclusive;
      x.out.message = name + " ratio " + short_num(e.ratio) + " moves by " + short_num(100 * change) +
                      "% under refinement (tolerance 10%)";
      return;
    }
  }
  x.out.verdict = Verdict::Pass;
  x.out.message = name + " ratio " + short_num(e.ratio) + " (lhs " + short_num(e.lhs) + ", rhs " + short_num(e.rhs()) +
                  "), stable under refinement within 10%";
}

void cmd_second_diff(Context& x) {
  const Instance inst = instance_of(x.c);
  const SolvedField s = solve_instance(inst, x.c.resolution);
  SecondDifferenceOptions o;
  o.radius = x.c.r;
  o.seed = derive_seed(x.c.seed, 2);
  o.min_scale = s.method == "poisson-disc" ? s.grid_step : 0.0;
  const SecondDifferenceReport rep = second_difference_scan(s.u, 2 * x.c.n, x.c.t, x.c.alpha, o);
  x.write("second_diff.csv", "second_diff", SecondDifferenceReport::csv_header() + rep.csv_rows());
  x.metrics["slope"] = num(rep.fit.slope);
  x.metrics["fit_residual"] = num(rep.fit.residual);
  x.metrics["positivity_floor"] = num(rep.positivity_floor);
  const double target = 1.0 + x.c.alpha - 0.1;
  const bool positive = rep.positivity_floor >= -1e-6;
  if (std::isnan(rep.fit.slope)) {
    x.out.verdict = positive ? Verdict::Inconclusive : Verdict::Fail;
    x.out.message = "only " + std::to_string(rep.fit.scales.size()) +
                    " scales above the grid step, 4 needed for a fit; positivity floor " +
                    short_num(rep.positivity_floor) + " (tolerance -1e-06)";
    return;
  }
  const bool slope_ok = !inst.smooth_data || rep.fit.slope >= target;
  x.out.verdict = positive && slope_ok ? Verdict::Pass : Verdict::Fail;
  x.out.message = "fitted slope " + short_num(rep.fit.slope) +
                  (inst.smooth_data ? " (tolerance >= " + short_num(target) + ")" : " (recorded only)") +
                  ", positivity floor " + short_num(rep.positivity_floor) + " (tolerance -1e-06)";
}

void cmd_schauder(Context& x) {
  const double fine = 2.0 / (x.c.resolution - 1);
  std::string body = "spacing,solution," + std::string("mu,lhs1,rhs1,ratio1,lhs2,rhs2,ratio2\n");
  std::vector<SchauderFamilyReport> reps;
  for (double sp : {fine, 2.0 * fine}) {
    reps.push_back(schauder_family(x.c.alpha, sp));
    for (const auto& [label, r] : reps.back().reports) {
      for (const auto& row : r.rows) {
        body += csv_line({fmt_num(sp), label, fmt_num(row.mu), fmt_num(row.lhs1), fmt_num(row.rhs1), fmt_num(row.ratio1),
                          fmt_num(row.lhs2), fmt_num(row.rhs2), fmt_num(row.ratio2)});
      }
    }
  }
  x.write("schauder.csv", "schauder", body);
  const double ch1 = relative_change(reps[0].constant1, reps[1].constant1);
  const double ch2 = relative_change(reps[0].constant2, reps[1].constant2);
  x.metrics["constant1"] = num(reps[0].constant1);
  x.metrics["constant2"] = num(reps[0].constant2);
  x.metrics["relative_change1"] = num(ch1);
  x.metrics["relative_change2"] = num(ch2);
  const bool finite = std::isfinite(reps[0].constant1) && std::isfinite(reps[0].constant2);
  x.out.verdict = !finite ? Verdict::Fail : (ch1 <= kStability && ch2 <= kStability ? Verdict::Pass : Verdict::Inconclusive);
  x.out.message = "family constants " + short_num(reps[0].constant1) + " and " + short_num(reps[0].constant2) +
                  ", refinement change " + short_num(100 * std::max(ch1, ch2)) + "% (tolerance 10%)";
}

void cmd_smoothing(Context& x) {
  if (x.c.n != 1) throw ConfigError("smoothing supports n = 1 instances");
  const Instance inst = instance_of(x.c);
  const SmoothingReport rep = smoothing_convergence_check(inst, x.c.eps, x.c.resolution);
  x.write("smoothing.csv", "smoothing", SmoothingReport::csv_header() + rep.csv_rows());
  x.metrics["order"] = num(rep.order);
  x.metrics["monotone"] = rep.monotone;
  const bool negligible = std::isnan(rep.order);
  if (!rep.monotone) {
    x.out.verdict = Verdict::Fail;
  } else if (negligible || rep.order >= 0.5) {
    x.out.verdict = Verdict::Pass;
  } else {
    x.out.verdict = Verdict::Inconclusive;
  }
  x.out.message = std::string("sup|u_eps - u| ") + (rep.monotone ? "decreases" : "does not decrease") +
                  " along the ladder, observed order " + (negligible ? "n/a (differences below 1e-12)" : short_num(rep.order)) +
                  " (tolerance >= 0.5)";
}

void cmd_sweep(Context& x) {
  std::vector<int> resolutions{x.c.resolution};
  const int coarse = coarse_resolution(x.c.resolution);
  if (coarse >= 33) resolutions.push_back(coarse);
  std::string body = "resolution," + EstimateRatio::csv_header();
  std::map<std::string, std::vector<double>> constants;
  std::uint64_t k = 10;
  for (int res : resolutions) {
    double c1 = 0.0;
    double c0 = 0.0;
    EstimateOptions eo;
    eo.resolution = res;
    for (const auto& inst : c1alpha_family(x.c.alpha)) {
      eo.scan.seed = derive_seed(x.c.seed, k++);
      const EstimateRatio e = interior_c1alpha_experiment(inst, x.c.t, x.c.alpha, eo);
      body += std::to_string(res) + "," + e.csv_row();
      c1 = std::max(c1, e.ratio);
    }
    for (const auto& inst : c0alpha_family(x.c.alpha)) {
      eo.scan.seed = derive_seed(x.c.seed, k++);
      const EstimateRatio e = interior_c0alpha_experiment(inst, x.c.t, x.c.alpha, eo);
      body += std::to_string(res) + "," + e.csv_row();
      c0 = std::max(c0, e.ratio);
    }
    constants["c1a"].push_back(c1);
    constants["c0a"].push_back(c0);
  }
  x.write("sweep.csv", "sweep", body);

  std::string bounds = BoundsReport::csv_header();
  bool bounds_ok = true;
  std::uint64_t j = 100;
  for (const auto& inst : c1alpha_family(x.c.alpha, true)) {
    const SolvedField s = solve_instance(inst, x.c.resolution);
    const BoundsReport b = solution_bounds(inst, s, 500, derive_seed(x.c.seed, j++));
    bounds += b.csv_row();
    bounds_ok = bounds_ok && b.sup_bound && b.positivity;
  }
  x.write("bounds.csv", "bounds", bounds);

  double change = 0.0;
  for (const auto& [kind, v] : constants) {
    x.metrics[kind + "_constant"] = num(v.front());
    if (v.size() > 1) change = std::max(change, relative_change(v[0], v[1]));
  }
  x.metrics["relative_change"] = num(change);
  x.metrics["bounds_ok"] = bounds_ok;
  if (!bounds_ok) {
    x.out.verdict = Verdict::Fail;
  } else {
    x.out.verdict = change <= kStability ? Verdict::Pass : Verdict::Inconclusive;
  }
  x.out.message = "family constants C1 " + short_num(constants["c1a"].front()) + ", C0 " +
                  short_num(constants["c0a"].front()) + ", refinement change " + short_num(100 * change) +
                  "% (tolerance 10%), bounds " + (bounds_ok ? "ok" : "violated");
}

}  // namespace

std::string csv_preamble(const RunConfig& c, const std::string& table) {
  return "# tool=" + std::string(kToolVersion) + "\n# table=" + table + "\n# command=" + c.command +
         "\n# config_hash=" + c.hash() + "\n# seed=" + std::to_string(c.seed) +
         "\n# resolution=" + std::to_string(c.resolution) + "\n";
}

RunOutcome run(const RunConfig& c, const std::string& out_dir) {
  validate(c);
  Context x{c, out_dir, {}};
  std::filesystem::create_directories(x.dir);
  try {
    if (c.command == "solve") cmd_solve(x);
    else if (c.command == "check-geometry") cmd_geometry(x);
    else if (c.command == "verify-c1a") cmd_estimate(x, true);
    else if (c.command == "verify-c0a") cmd_estimate(x, false);
    else if (c.command == "second-diff") cmd_second_diff(x);
    else if (c.command == "schauder") cmd_schauder(x);
    else if (c.command == "smoothing") cmd_smoothing(x);
    else cmd_sweep(x);
  } catch (const ConvergenceError& e) {
    x.out.verdict = Verdict::Inconclusive;
    x.out.message = std::string("solver did not converge: ") + e.what();
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  Json s;
  s["tool"] = kToolVersion;
  s["command"] = c.command;
  s["config_hash"] = c.hash();
  s["seed"] = c.seed;
  s["resolution"] = c.resolution;
  s["verdict"] = to_string(x.out.verdict);
  s["message"] = x.out.message;
  s["metrics"] = x.metrics;
  s["files"] = x.out.files;
  std::ofstream f(x.dir / "summary.json", std::ios::binary);
  f << s.dump(2) << "\n";
  x.out.files.push_back("summary.json");
  return x.out;
}

}  // namespace holderlab::cli
