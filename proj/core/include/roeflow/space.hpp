#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace roeflow {

using Edge = std::pair<std::size_t, std::size_t>;

/// A finite metric space on the points 0..n-1, stored as its full distance
/// matrix. Construction verifies the metric axioms exhaustively, so every
/// FiniteSpace in existence is a genuine (discrete) metric space.
class FiniteSpace {
 public:
  explicit FiniteSpace(Eigen::MatrixXd dist, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return static_cast<std::size_t>(dist_.rows()); }
  double distance(std::size_t x, std::size_t y) const { return dist_(x, y); }
  const Eigen::MatrixXd& distances() const noexcept { return dist_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  double diameter() const noexcept { return diameter_; }

  /// Sorted distinct values taken by the metric, always starting with 0.
  const std::vector<double>& distance_set() const noexcept { return distance_set_; }

 private:
  Eigen::MatrixXd dist_;
  std::vector<std::string> labels_;
  double diameter_ = 0.0;
  std::vector<double> distance_set_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

template <class... Args>
SpacePtr make_space(Args&&... args) {
  return std::make_shared<const FiniteSpace>(std::forward<Args>(args)...);
}

/// Describes the first metric-axiom violation of `dist`, or returns an empty
/// string when it is a valid discrete metric. Exhaustive over all triples.
std::string metric_violation(const Eigen::MatrixXd& dist);

/// Shortest-path (hop count) metric of a connected simple graph.
FiniteSpace from_edge_list(std::span<const Edge> edges, std::size_t n_points);

/// Coarse disjoint union. Block k occupies a contiguous index range in input
/// order; cross-block distances are |c_m - c_n| with c_1 = 0 and
/// c_{k+1} = c_k + diam(X_k) + diam(X_{k+1}) + k + 1 (1-based k).
FiniteSpace coarse_union(std::span<const FiniteSpace> blocks);

/// The offsets c_k used by coarse_union, one per block.
std::vector<double> coarse_union_offsets(std::span<const FiniteSpace> blocks);

/// max_x |{y : d(x,y) <= r}|.
std::size_t growth_profile(const FiniteSpace& s, double r);

// Common graph metrics.
FiniteSpace path_space(std::size_t n);
FiniteSpace cycle_space(std::size_t n);
FiniteSpace complete_space(std::size_t n);

/// Edge-list text format: a header line "n <n_points>" followed by one "u v"
/// pair per line. Blank lines and lines starting with '#' are ignored.
FiniteSpace read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, std::size_t n_points, std::span<const Edge> edges);

}  // namespace roeflow
