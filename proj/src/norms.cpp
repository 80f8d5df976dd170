#include "holderlab/norms.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "holderlab/csv.hpp"
#include <unordered_map>

#include "holderlab/parallel.hpp"
#include "holderlab/quadrature.hpp"

namespace holderlab {

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::Sup: return "sup";
    case NormKind::Derivative: return "derivative";
    case NormKind::Seminorm: return "seminorm";
    case NormKind::Starred: return "starred";
    case NormKind::Primed: return "primed";
    case NormKind::Weighted: return "weighted";
    case NormKind::Boundary: return "boundary";
  }
  return "unknown";
}

std::string HolderReport::csv_header() {
  return csv_line({"kind", "k", "alpha", "value", "witness_x", "witness_y", "n_pairs_scanned"});
}

std::string HolderReport::csv_row() const {
  return csv_line({to_string(kind), std::to_string(k), fmt_num(alpha), fmt_num(value), fmt_point(witness_x),
                   fmt_point(witness_y), std::to_string(pairs_scanned)});
}

namespace {

constexpr double kDegenerate = 1e-12;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t i = kNone;
  std::size_t j = kNone;
  std::size_t count = 0;
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;

  void offer(double v, std::size_t a, std::size_t b, double d) {
    if (std::isnan(v)) return;
    ++count;
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
    if (v > value || (v == value && std::make_pair(a, b) < std::make_pair(i, j))) {
      value = v;
      i = a;
      j = b;
    }
  }
};

Best combine(Best a, const Best& b) {
  a.count += b.count;
  a.dmin = std::min(a.dmin, b.dmin);
  a.dmax = std::max(a.dmax, b.dmax);
  if (b.i != kNone &&
      (b.value > a.value || (b.value == a.value && std::make_pair(b.i, b.j) < std::make_pair(a.i, a.j)))) {
    a.value = b.value;
    a.i = b.i;
    a.j = b.j;
  }
  return a;
}

double estimate_spacing(const std::vector<Vec>& points) {
  const Eigen::Index dim = points.front().size();
  Vec lo = points.front();
  Vec hi = points.front();
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  double volume = 1.0;
  for (Eigen::Index d = 0; d < dim; ++d) volume *= std::max(hi(d) - lo(d), 1e-300);
  return std::pow(volume / static_cast<double>(points.size()), 1.0 / static_cast<double>(dim));
}

}  // namespace

PairScanResult scan_pairs(const std::vector<Vec>& points, std::optional<double> spacing, const ScanOptions& options,
                          const std::function<double(std::size_t, std::size_t, double)>& pair_value) {
  const std::size_t n = points.size();
  PairScanResult result;
  if (n < 2) return result;

  auto evaluate = [&](Best& best, std::size_t i, std::size_t j) {
    const double d = (points[i] - points[j]).norm();
    if (d < kDegenerate) return;
    best.offer(pair_value(i, j, d), i, j, d);
  };

  Best best;
  const double total_pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  if (total_pairs <= static_cast<double>(options.exhaustive_limit)) {
    best = parallel_reduce(
        n, Best{},
        [&](std::size_t i) {
          Best b;
          for (std::size_t j = i + 1; j < n; ++j) evaluate(b, i, j);
          return b;
        },
        combine);
  } else {
    const double h = spacing.value_or(estimate_spacing(points));
    const double radius = options.short_range_steps * h;
    const int dim = static_cast<int>(points.front().size());

    // Short range: bucket sites into cells of side `radius`, visit neighbouring cells.
    auto cell_hash = [](const std::vector<long>& k) {
      std::uint64_t hsh = 1469598103934665603ULL;
      for (long v : k) hsh = (hsh ^ static_cast<std::uint64_t>(v + 0x40000000L)) * 1099511628211ULL;
      return static_cast<std::size_t>(hsh);
    };
    std::vector<std::vector<long>> cell_of(n, std::vector<long>(dim));
    std::vector<std::pair<std::vector<long>, std::vector<std::size_t>>> cell_list;
    std::unordered_map<std::size_t, std::vector<std::size_t>> hash_to_cells;
    for (std::size_t i = 0; i < n; ++i) {
      for (int d = 0; d < dim; ++d) cell_of[i][d] = static_cast<long>(std::floor(points[i](d) / radius));
      const std::size_t hsh = cell_hash(cell_of[i]);
      auto& candidates = hash_to_cells[hsh];
      std::size_t slot = kNone;
      for (std::size_t c : candidates) {
        if (cell_list[c].first == cell_of[i]) {
          slot = c;
          break;
        }
      }
      if (slot == kNone) {
        slot = cell_list.size();
        cell_list.push_back({cell_of[i], {}});
        candidates.push_back(slot);
      }
      cell_list[slot].second.push_back(i);
    }
    auto find_cell = [&](const std::vector<long>& k) -> const std::vector<std::size_t>* {
      const auto it = hash_to_cells.find(cell_hash(k));
      if (it == hash_to_cells.end()) return nullptr;
      for (std::size_t c : it->second) {
        if (cell_list[c].first == k) return &cell_list[c].second;
      }
      return nullptr;
    };
    int offsets = 1;
    for (int d = 0; d < dim; ++d) offsets *= 3;

    best = parallel_reduce(
        n, Best{},
        [&](std::size_t i) {
          Best b;
          std::vector<long> k(dim);
          for (int o = 0; o < offsets; ++o) {
            int code = o;
            for (int d = 0; d < dim; ++d) {
              k[d] = cell_of[i][d] + (code % 3) - 1;
              code /= 3;
            }
            const auto* members = find_cell(k);
            if (!members) continue;
            for (std::size_t j : *members) {
              if (j <= i) continue;
              const double dist = (points[i] - points[j]).norm();
              if (dist > radius || dist < kDegenerate) continue;
              b.offer(pair_value(i, j, dist), i, j, dist);
            }
          }
          return b;
        },
        combine);

    // Long range: seeded random pairs beyond the short-range radius.
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(options.long_range_pairs);
    const std::size_t max_draws = 4 * options.long_range_pairs + 16;
    for (std::size_t draw = 0; draw < max_draws && pairs.size() < options.long_range_pairs; ++draw) {
      std::size_t a = pick(rng);
      std::size_t b = pick(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if ((points[a] - points[b]).norm() <= radius) continue;
      pairs.emplace_back(a, b);
    }
    const Best far = parallel_reduce(
        pairs.size(), Best{},
        [&](std::size_t p) {
          Best b;
          evaluate(b, pairs[p].first, pairs[p].second);
          return b;
        },
        combine);
    best = combine(best, far);
  }

  result.pairs = best.count;
  if (best.i != kNone) {
    result.found = true;
    result.value = best.value;
    result.i = best.i;
    result.j = best.j;
    result.min_distance = best.dmin;
    result.max_distance = best.dmax;
  }
  return result;
}

namespace {

void require_samples(const SampledFunction& v, std::size_t at_least) {
  v.validate();
  if (v.size() < at_least) {
    throw InputError("need at least " + std::to_string(at_least) + " samples, got " + std::to_string(v.size()));
  }
}

void require_distances(const SampledFunction& v) {
  if (v.boundary_distance.size() != v.size()) throw InputError("boundary-distance map required");
}

void check_order(int k, double alpha, bool allow_zero_alpha) {
  if (k != 0 && k != 1) throw InputError("only k in {0, 1} is supported");
  const bool ok = allow_zero_alpha ? (alpha >= 0.0 && alpha <= 1.0) : (alpha > 0.0 && alpha <= 1.0);
  if (!ok) throw InputError("alpha out of range: " + fmt_num(alpha));
}

HolderReport finish(NormKind kind, int k, double alpha, const SampledFunction& v, const PairScanResult& scan,
                    double fd_error) {
  if (!scan.found) throw InputError("every sample pair was degenerate or lacked data");
  HolderReport r;
  r.kind = kind;
  r.k = k;
  r.alpha = alpha;
  r.value = scan.value;
  r.witness_x = v.points[scan.i];
  r.witness_y = v.points[scan.j];
  r.pairs_scanned = scan.pairs;
  r.min_pair_distance = scan.min_distance;
  r.max_pair_distance = scan.max_distance;
  r.fd_error = fd_error;
  return r;
}

// max over sites of weight(i) * |data(i)|, point witness.
HolderReport pointwise_sup(NormKind kind, int k, const SampledFunction& v, const std::function<double(std::size_t)>& f,
                           double fd_error) {
  double best = -1.0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double value = f(i);
    if (std::isnan(value)) continue;
    if (value > best) {
      best = value;
      at = i;
    }
  }
  if (best < 0.0) throw InputError("no usable samples");
  HolderReport r;
  r.kind = kind;
  r.k = k;
  r.value = best;
  r.witness_x = v.points[at];
  r.fd_error = fd_error;
  return r;
}

}  // namespace

HolderReport sup_norm(const SampledFunction& v) {
  require_samples(v, 1);
  return pointwise_sup(NormKind::Sup, 0, v, [&](std::size_t i) { return std::abs(v.values[i]); }, 0.0);
}

HolderReport derivative_sup(const SampledFunction& v, int k) {
  require_samples(v, 1);
  if (k == 0) {
    HolderReport r = sup_norm(v);
    r.kind = NormKind::Derivative;
    return r;
  }
  if (k != 1) throw InputError("only k in {0, 1} is supported");
  const GradientSamples g = resolve_gradients(v);
  return pointwise_sup(
      NormKind::Derivative, 1, v,
      [&](std::size_t i) { return g.values[i] ? g.values[i]->norm() : std::numeric_limits<double>::quiet_NaN(); },
      g.fd_error);
}

namespace {

HolderReport weighted_scan(NormKind kind, const SampledFunction& v, int k, double alpha, const ScanOptions& options,
                           bool weighted) {
  if (k == 0) {
    const auto scan = scan_pairs(v.points, v.lattice_spacing, options, [&](std::size_t i, std::size_t j, double d) {
      const double w = weighted ? std::pow(std::min(v.boundary_distance[i], v.boundary_distance[j]), alpha) : 1.0;
      return w * std::abs(v.values[i] - v.values[j]) / std::pow(d, alpha);
    });
    return finish(kind, 0, alpha, v, scan, 0.0);
  }
  const GradientSamples g = resolve_gradients(v);
  const auto scan = scan_pairs(v.points, v.lattice_spacing, options, [&](std::size_t i, std::size_t j, double d) {
    if (!g.values[i] || !g.values[j]) return std::numeric_limits<double>::quiet_NaN();
    const double w = weighted ? std::pow(std::min(v.boundary_distance[i], v.boundary_distance[j]), 1.0 + alpha) : 1.0;
    return w * (*g.values[i] - *g.values[j]).norm() / std::pow(d, alpha);
  });
  return finish(kind, 1, alpha, v, scan, g.fd_error);
}

}  // namespace

HolderReport holder_seminorm(const SampledFunction& v, int k, double alpha, const ScanOptions& options) {
  check_order(k, alpha, false);
  require_samples(v, 2);
  return weighted_scan(NormKind::Seminorm, v, k, alpha, options, false);
}

HolderReport starred_seminorm(const SampledFunction& v, int k, double alpha, const ScanOptions& options) {
  check_order(k, alpha, true);
  require_distances(v);
  if (alpha == 0.0) {
    require_samples(v, 1);
    if (k == 0) {
      HolderReport r = pointwise_sup(NormKind::Starred, 0, v, [&](std::size_t i) { return std::abs(v.values[i]); }, 0.0);
      return r;
    }
    const GradientSamples g = resolve_gradients(v);
    return pointwise_sup(
        NormKind::Starred, 1, v,
        [&](std::size_t i) {
          return g.values[i] ? v.boundary_distance[i] * g.values[i]->norm() : std::numeric_limits<double>::quiet_NaN();
        },
        g.fd_error);
  }
  require_samples(v, 2);
  return weighted_scan(NormKind::Starred, v, k, alpha, options, true);
}

double primed_norm(const SampledFunction& v, int k, double alpha, const ScanOptions& options) {
  if (!v.ball_radius) throw InputError("primed norm needs a ball domain of known radius");
  check_order(k, alpha, true);
  const double r = *v.ball_radius;
  double total = 0.0;
  for (int i = 0; i <= k; ++i) total += std::pow(r, i) * derivative_sup(v, i).value;
  if (alpha > 0.0) total += std::pow(r, k + alpha) * holder_seminorm(v, k, alpha, options).value;
  return total;
}

WeightedNorm weighted_density_norm(const SampledFunction& f, int k, std::optional<double> alpha,
                                   const ScanOptions& options) {
  require_samples(f, 1);
  require_distances(f);
  WeightedNorm out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    out.sup_term = std::max(out.sup_term, std::pow(f.boundary_distance[i], k) * std::abs(f.values[i]));
  }
  if (alpha) {
    if (!(*alpha > 0.0 && *alpha <= 1.0)) throw InputError("alpha out of range: " + fmt_num(*alpha));
    require_samples(f, 2);
    const double a = *alpha;
    const auto scan = scan_pairs(f.points, f.lattice_spacing, options, [&](std::size_t i, std::size_t j, double d) {
      const double w = std::pow(std::min(f.boundary_distance[i], f.boundary_distance[j]), k + a);
      return w * std::abs(f.values[i] - f.values[j]) / std::pow(d, a);
    });
    if (!scan.found) throw InputError("every sample pair was degenerate");
    out.holder_term = scan.value;
  }
  return out;
}

SampledFunction sphere_samples(int dim, double radius, int order, const ScalarField& phi) {
  const SphereQuadrature q = SphereQuadrature::make(dim, order);
  std::vector<Vec> pts;
  pts.reserve(q.size());
  for (const auto& e : q.nodes()) pts.push_back(radius * e);
  SampledFunction s = SampledFunction::on_points(dim, radius, std::move(pts), phi);
  return s;
}

HolderReport boundary_seminorm_c0(const SampledFunction& phi, double alpha, const ScanOptions& options) {
  check_order(0, alpha, false);
  require_samples(phi, 2);
  HolderReport r = weighted_scan(NormKind::Boundary, phi, 0, alpha, options, false);
  return r;
}

Extension restriction_extension(ScalarField phi, VectorField gradient) {
  return Extension{std::move(phi), std::move(gradient)};
}

namespace {

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

}  // namespace

Extension default_extension(ScalarField phi, double radius, int dim) {
  const SphereQuadrature q = SphereQuadrature::make(dim, dim <= 2 ? 512 : 24);
  const double mean = q.average([&](const Vec& e) { return phi(radius * e); });
  ScalarField value = [phi = std::move(phi), radius, mean](const Vec& x) {
    const double s = x.norm() / radius;
    const double chi = smooth_step((s - 0.25) / 0.5);
    if (chi == 0.0) return mean;
    return chi * phi(radius * x / x.norm()) + (1.0 - chi) * mean;
  };
  return Extension{std::move(value), {}};
}

HolderReport boundary_seminorm_c1a(const Extension& extension, int dim, double radius, double spacing, double alpha,
                                   const ScanOptions& options) {
  if (!extension.value) throw InputError("extension construction failed: no evaluator");
  SampledFunction s = SampledFunction::on_ball(dim, radius, spacing, extension.value, extension.gradient);
  HolderReport r = holder_seminorm(s, 1, alpha, options);
  r.kind = NormKind::Boundary;
  r.upper_bound = true;
  return r;
}

SampledFunction normalize_linear(const SampledFunction& v, double phi0, const Vec& grad_phi0) {
  SampledFunction out = v;
  for (std::size_t i = 0; i < v.size(); ++i) out.values[i] = v.values[i] - phi0 - grad_phi0.dot(v.points[i]);
  if (v.gradients) {
    for (auto& g : *out.gradients) g -= grad_phi0;
  }
  if (v.evaluator) {
    out.evaluator = [f = v.evaluator, phi0, grad_phi0](const Vec& x) { return f(x) - phi0 - grad_phi0.dot(x); };
  }
  if (v.gradient_evaluator) {
    out.gradient_evaluator = [g = v.gradient_evaluator, grad_phi0](const Vec& x) -> Vec { return g(x) - grad_phi0; };
  }
  return out;
}

ScalarField rescale_field(ScalarField u, double r) {
  if (!(r > 0.0)) throw InputError("rescale: radius must be positive");
  if (r == 1.0) return u;
  return [u = std::move(u), r](const Vec& z) { return r * r * u(z / r); };
}

VectorField rescale_gradient(VectorField grad, double r) {
  if (!grad) return {};
  if (!(r > 0.0)) throw InputError("rescale: radius must be positive");
  if (r == 1.0) return grad;
  return [grad = std::move(grad), r](const Vec& z) -> Vec { return r * grad(z / r); };
}

namespace {

SampledFunction scale_samples(const SampledFunction& v, double point_scale, double value_scale, double grad_scale) {
  SampledFunction out = v;
  for (auto& p : out.points) p *= point_scale;
  for (auto& x : out.values) x *= value_scale;
  for (auto& d : out.boundary_distance) d *= point_scale;
  if (out.gradients) {
    for (auto& g : *out.gradients) g *= grad_scale;
  }
  if (out.lattice_spacing) *out.lattice_spacing *= point_scale;
  if (out.ball_radius) *out.ball_radius *= point_scale;
  out.fd_step *= point_scale;
  return out;
}

}  // namespace

SampledFunction rescale(const SampledFunction& v, double r) {
  if (!(r > 0.0)) throw InputError("rescale: radius must be positive");
  SampledFunction out = scale_samples(v, r, r * r, r);
  if (v.evaluator) out.evaluator = rescale_field(v.evaluator, r);
  if (v.gradient_evaluator) out.gradient_evaluator = rescale_gradient(v.gradient_evaluator, r);
  return out;
}

SampledFunction rescale_inverse(const SampledFunction& v, double r) {
  if (!(r > 0.0)) throw InputError("rescale: radius must be positive");
  SampledFunction out = scale_samples(v, 1.0 / r, 1.0 / (r * r), 1.0 / r);
  if (v.evaluator) out.evaluator = rescale_field(v.evaluator, 1.0 / r);
  if (v.gradient_evaluator) out.gradient_evaluator = rescale_gradient(v.gradient_evaluator, 1.0 / r);
  return out;
}

}  // namespace holderlab
