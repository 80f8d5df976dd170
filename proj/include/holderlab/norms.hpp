#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holderlab/common.hpp"
#include "holderlab/sampled_function.hpp"

namespace holderlab {

enum class NormKind { Sup, Derivative, Seminorm, Starred, Primed, Weighted, Boundary };

std::string to_string(NormKind kind);

// A measured norm or seminorm with the sample(s) realizing the recorded
// supremum. Pair scans give lower bounds of the true supremum; upper_bound is
// set when the value instead bounds an infimum from above.
struct HolderReport {
  NormKind kind = NormKind::Sup;
  int k = 0;
  double alpha = 0.0;
  double value = 0.0;
  Vec witness_x;
  Vec witness_y;
  std::size_t pairs_scanned = 0;
  double min_pair_distance = 0.0;
  double max_pair_distance = 0.0;
  double fd_error = 0.0;
  bool upper_bound = false;

  static std::string csv_header();
  std::string csv_row() const;
};

// Pair-scan strategy: every pair when there are at most exhaustive_limit of
// them; otherwise all pairs within short_range_steps lattice steps plus
// long_range_pairs seeded random pairs. Pairs closer than 1e-12 are skipped.
struct ScanOptions {
  std::size_t exhaustive_limit = 4'000'000;
  double short_range_steps = 8.0;
  std::size_t long_range_pairs = 1'000'000;
  std::uint64_t seed = 0x5eedULL;
};

struct PairScanResult {
  double value = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  bool found = false;
  std::size_t pairs = 0;
  double min_distance = 0.0;
  double max_distance = 0.0;
};

// Maximizes pair_value(i, j, |x_i - x_j|) over the scanned pairs; NaN values
// are ignored. Deterministic under any thread count.
PairScanResult scan_pairs(const std::vector<Vec>& points, std::optional<double> spacing, const ScanOptions& options,
                          const std::function<double(std::size_t, std::size_t, double)>& pair_value);

// |v|_0 = sup |v|.
HolderReport sup_norm(const SampledFunction& v);

// [v]_k = sup |grad^k v| for k in {0, 1}.
HolderReport derivative_sup(const SampledFunction& v, int k);

// [v]_{k,alpha} = sup |grad^k v(x) - grad^k v(y)| / |x - y|^alpha, k in {0,1}, alpha in (0,1].
HolderReport holder_seminorm(const SampledFunction& v, int k, double alpha, const ScanOptions& options = {});

// Interior seminorms weighted by d_{x,y}^{k+alpha}; alpha = 0 gives sup d_x^k |grad^k v|.
HolderReport starred_seminorm(const SampledFunction& v, int k, double alpha, const ScanOptions& options = {});

// |v|'_{k,alpha} = sum_{i<=k} r^i [v]_i + r^{k+alpha} [v]_{k,alpha} on a ball of radius r.
double primed_norm(const SampledFunction& v, int k, double alpha, const ScanOptions& options = {});

struct WeightedNorm {
  double sup_term = 0.0;
  double holder_term = 0.0;
  double total() const { return sup_term + holder_term; }
};

// |f|^{(k)}_{0,alpha} = sup d_x^k |f| + sup d_{x,y}^{k+alpha} |f(x)-f(y)|/|x-y|^alpha.
// Without alpha only the first term is computed.
WeightedNorm weighted_density_norm(const SampledFunction& f, int k, std::optional<double> alpha,
                                   const ScanOptions& options = {});

// Samples of phi on the sphere of the given radius in R^dim at the nodes of the
// sphere quadrature of the given order.
SampledFunction sphere_samples(int dim, double radius, int order, const ScalarField& phi);

// [phi]_{0,alpha} over boundary samples with chordal distances.
HolderReport boundary_seminorm_c0(const SampledFunction& phi, double alpha, const ScanOptions& options = {});

// An extension of boundary data into the closed ball.
struct Extension {
  ScalarField value;
  VectorField gradient;  // may be empty; differences of value are used then
};

// phi is a formula valid on the whole space: extend by the same formula.
Extension restriction_extension(ScalarField phi, VectorField gradient = {});

// Extension of data known only on the sphere of radius r: phi(r x/|x|) blended
// smoothly into the boundary mean of phi inside |x| < r/2.
Extension default_extension(ScalarField phi, double radius, int dim);

// [Phi]_{1,alpha;B_r} for the supplied extension, sampled on the lattice of the
// given spacing. This is an upper bound for the infimum over all extensions.
HolderReport boundary_seminorm_c1a(const Extension& extension, int dim, double radius, double spacing, double alpha,
                                   const ScanOptions& options = {});

// v - Phi(0) - <grad Phi(0), x>.
SampledFunction normalize_linear(const SampledFunction& v, double phi0, const Vec& grad_phi0);

// r^2 u(z / r), and its inverse z -> u(r z) / r^2.
ScalarField rescale_field(ScalarField u, double r);
VectorField rescale_gradient(VectorField grad, double r);
SampledFunction rescale(const SampledFunction& v, double r);
SampledFunction rescale_inverse(const SampledFunction& v, double r);

}  // namespace holderlab
