#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "roeflow/operator.hpp"
#include "roeflow/rng.hpp"
#include "roeflow/space.hpp"

namespace roeflow {

/// A coarse disjoint union of connected graph blocks X_n with weights w(n).
/// The generator h = sum_n w(n) p_n uses the rank-one averaging projections
/// p_n onto the constant vectors of each block.
struct BlockFamily {
  std::vector<FiniteSpace> blocks;
  std::vector<double> weights;
  SpacePtr union_space;
  std::vector<std::size_t> offsets;                   // first union index of each block
  std::vector<std::vector<std::size_t>> half_splits;  // A_n, |A_n| = ceil(|X_n| / 2)
  std::vector<double> spectral_gaps;                  // second normalized-Laplacian eigenvalue

  std::size_t block_count() const noexcept { return blocks.size(); }
};

BlockFamily make_block_family(std::vector<FiniteSpace> blocks, std::vector<double> weights);

enum class WeightPreset { constant, linear, quadratic };

WeightPreset parse_weight_preset(const std::string& name);

/// w(n) for n = 1..count: scale, scale * n or scale * n^2.
std::vector<double> preset_weights(WeightPreset preset, std::size_t count, double scale = 1.0);

/// Random simple connected `degree`-regular graph on `size` vertices from the
/// pairing model, resampled until simple and connected. size == degree + 1
/// yields the complete graph directly.
std::vector<Edge> random_regular_graph(std::size_t size, std::size_t degree, Rng& rng);

/// Blocks from random_regular_graph, one per entry of `sizes` (a single size
/// is broadcast to n_blocks). Empty weights select the quadratic preset.
BlockFamily make_regular_family(std::size_t n_blocks, std::size_t degree,
                                std::vector<std::size_t> sizes, std::uint64_t seed,
                                std::vector<double> weights = {});

/// Second-smallest eigenvalue of I - D^{-1/2} A D^{-1/2} for the graph whose
/// edges are the distance-1 pairs of the block; 0 for a single point.
double normalized_laplacian_gap(const FiniteSpace& block);

bool is_expanding(const BlockFamily& fam, double threshold = 0.1);

OperatorMatrix averaging_projection(const BlockFamily& fam, std::size_t n);

/// p_A for A = union of the half splits.
OperatorMatrix halfsplit_projection(const BlockFamily& fam);

/// h = sum_n w(n) p_n
OperatorMatrix preflow_generator(const BlockFamily& fam);

/// id + sum_n (e^{itw(n)} - 1) p_n
OperatorMatrix preflow_unitary(const BlockFamily& fam, double t);

/// ||p_n p_{A_n} - p_{A_n} p_n||, measured numerically on the block.
double halfsplit_commutator_norm(const BlockFamily& fam, std::size_t n);

/// sqrt(|A_n| |X_n \ A_n|) / |X_n|, which is 1/2 for even blocks.
double halfsplit_factor(const BlockFamily& fam, std::size_t n);

struct DiscontinuityReport {
  double t = 0.0;
  double measured = 0.0;     // ||e^{ith} p_A e^{-ith} - p_A||
  double closed_form = 0.0;  // max_n factor_n |e^{itw(n)} - 1|
  std::size_t block_of_max = 0;
};

/// Throws NumericError when |measured - closed_form| > 1e-9. The unitary is
/// the spectral exponential of preflow_generator, independent of the closed
/// form.
std::vector<DiscontinuityReport> discontinuity_sweep(const BlockFamily& fam,
                                                     std::span<const double> times);
DiscontinuityReport discontinuity_profile(const BlockFamily& fam, double t);

struct WmapBound {
  double t = 0.0;
  double lhs = 0.0;  // ||e^{ith} e^{-itk} - id||
  double rhs = 0.0;  // max_n factor_n |e^{itw(n)} - 1|
};

/// Throws NumericError when lhs < rhs - 1e-9. k is a real function on the
/// union (a diagonal generator).
std::vector<WmapBound> wmap_lower_bound_sweep(const BlockFamily& fam, std::span<const double> k,
                                              std::span<const double> times);
WmapBound wmap_lower_bound(const BlockFamily& fam, std::span<const double> k, double t);

}  // namespace roeflow
