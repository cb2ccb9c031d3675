#include "roeflow/expander.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <tuple>

#include "roeflow/errors.hpp"
#include "roeflow/spectral.hpp"

namespace roeflow {

namespace {

constexpr int kMaxGraphAttempts = 100000;
constexpr double kIdentityTol = 1e-9;

bool connected(std::size_t size, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::size_t>> adj(size);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(size, 0);
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (auto y : adj[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        queue.push_back(y);
      }
    }
  }
  return reached == size;
}

std::vector<double> block_factors(const BlockFamily& fam) {
  std::vector<double> factors;
  for (std::size_t n = 0; n < fam.block_count(); ++n) factors.push_back(halfsplit_factor(fam, n));
  return factors;
}

// max_n factor_n |e^{itw(n)} - 1| and its (first) argmax.
std::pair<double, std::size_t> closed_form(const BlockFamily& fam,
                                           const std::vector<double>& factors, double t) {
  double best = -1.0;
  std::size_t where = 0;
  for (std::size_t n = 0; n < fam.block_count(); ++n) {
    const double value = factors[n] * std::abs(std::polar(1.0, t * fam.weights[n]) - 1.0);
    if (value > best) {
      best = value;
      where = n;
    }
  }
  return {best, where};
}

void require_index(const BlockFamily& fam, std::size_t n) {
  if (n >= fam.block_count()) {
    throw InvalidArgument("block index " + std::to_string(n) + " out of range (" +
                          std::to_string(fam.block_count()) + " blocks)");
  }
}

}  // namespace

BlockFamily make_block_family(std::vector<FiniteSpace> blocks, std::vector<double> weights) {
  if (blocks.empty()) throw InvalidArgument("make_block_family: no blocks");
  if (weights.size() != blocks.size()) {
    throw InvalidArgument("make_block_family: need one weight per block");
  }
  BlockFamily fam;
  fam.union_space = std::make_shared<const FiniteSpace>(coarse_union(blocks));
  std::size_t offset = 0;
  for (const auto& block : blocks) {
    fam.offsets.push_back(offset);
    std::vector<std::size_t> split;
    const auto half = (block.size() + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) split.push_back(offset + i);
    fam.half_splits.push_back(std::move(split));
    fam.spectral_gaps.push_back(normalized_laplacian_gap(block));
    offset += block.size();
  }
  fam.blocks = std::move(blocks);
  fam.weights = std::move(weights);
  return fam;
}

WeightPreset parse_weight_preset(const std::string& name) {
  if (name == "constant") return WeightPreset::constant;
  if (name == "linear") return WeightPreset::linear;
  if (name == "quadratic") return WeightPreset::quadratic;
  throw InvalidArgument("unknown weight preset '" + name + "'");
}

std::vector<double> preset_weights(WeightPreset preset, std::size_t count, double scale) {
  std::vector<double> w(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double n = static_cast<double>(i + 1);
    switch (preset) {
      case WeightPreset::constant: w[i] = scale; break;
      case WeightPreset::linear: w[i] = scale * n; break;
      case WeightPreset::quadratic: w[i] = scale * n * n; break;
    }
  }
  return w;
}

std::vector<Edge> random_regular_graph(std::size_t size, std::size_t degree, Rng& rng) {
  if (degree == 0 || size <= degree || (size * degree) % 2 != 0) {
    throw InvalidArgument("random_regular_graph: no connected " + std::to_string(degree) +
                          "-regular graph on " + std::to_string(size) + " vertices");
  }
  std::vector<Edge> edges;
  if (size == degree + 1) {
    for (std::size_t u = 0; u < size; ++u) {
      for (std::size_t v = u + 1; v < size; ++v) edges.emplace_back(u, v);
    }
    return edges;
  }
  if (degree == 1) {
    throw InvalidArgument("random_regular_graph: 1-regular graphs on more than 2 vertices are disconnected");
  }
  std::vector<std::size_t> stubs;
  for (std::size_t v = 0; v < size; ++v) stubs.insert(stubs.end(), degree, v);
  for (int attempt = 0; attempt < kMaxGraphAttempts; ++attempt) {
    rng.shuffle(stubs.begin(), stubs.end());
    edges.clear();
    std::set<Edge> seen;
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size() && simple; i += 2) {
      const auto u = std::min(stubs[i], stubs[i + 1]);
      const auto v = std::max(stubs[i], stubs[i + 1]);
      simple = u != v && seen.insert({u, v}).second;
      edges.emplace_back(u, v);
    }
    if (simple && connected(size, edges)) {
      std::sort(edges.begin(), edges.end());
      return edges;
    }
  }
  throw NumericError("random_regular_graph: pairing model did not produce a simple connected graph");
}

BlockFamily make_regular_family(std::size_t n_blocks, std::size_t degree,
                                std::vector<std::size_t> sizes, std::uint64_t seed,
                                std::vector<double> weights) {
  if (n_blocks == 0) throw InvalidArgument("make_regular_family: need at least one block");
  if (sizes.size() == 1) sizes.assign(n_blocks, sizes.front());
  if (sizes.size() != n_blocks) {
    throw InvalidArgument("make_regular_family: sizes must have one entry or one per block");
  }
  if (weights.empty()) weights = preset_weights(WeightPreset::quadratic, n_blocks);
  Rng rng(seed);
  std::vector<FiniteSpace> blocks;
  for (auto size : sizes) {
    const auto edges = random_regular_graph(size, degree, rng);
    blocks.push_back(from_edge_list(edges, size));
  }
  return make_block_family(std::move(blocks), std::move(weights));
}

double normalized_laplacian_gap(const FiniteSpace& block) {
  const auto n = block.size();
  if (n < 2) return 0.0;
  Eigen::VectorXd degree = Eigen::VectorXd::Zero(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) degree(x) += block.distance(x, y) == 1.0 ? 1.0 : 0.0;
  }
  Matrix lap = Matrix::Identity(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (block.distance(x, y) == 1.0) lap(x, y) -= 1.0 / std::sqrt(degree(x) * degree(y));
    }
  }
  return jacobi_eigensystem(lap).values(1);
}

bool is_expanding(const BlockFamily& fam, double threshold) {
  return std::all_of(fam.spectral_gaps.begin(), fam.spectral_gaps.end(),
                     [&](double gap) { return gap > threshold; });
}

OperatorMatrix averaging_projection(const BlockFamily& fam, std::size_t n) {
  require_index(fam, n);
  const auto total = fam.union_space->size();
  const auto m = fam.blocks[n].size();
  Matrix p = Matrix::Zero(total, total);
  p.block(fam.offsets[n], fam.offsets[n], m, m).setConstant(1.0 / static_cast<double>(m));
  return {fam.union_space, std::move(p)};
}

OperatorMatrix halfsplit_projection(const BlockFamily& fam) {
  std::vector<double> indicator(fam.union_space->size(), 0.0);
  for (const auto& split : fam.half_splits) {
    for (auto x : split) indicator[x] = 1.0;
  }
  return OperatorMatrix::diagonal(fam.union_space, indicator);
}

OperatorMatrix preflow_generator(const BlockFamily& fam) {
  auto h = OperatorMatrix::zero(fam.union_space);
  for (std::size_t n = 0; n < fam.block_count(); ++n) {
    h += averaging_projection(fam, n) * fam.weights[n];
  }
  return h;
}

OperatorMatrix preflow_unitary(const BlockFamily& fam, double t) {
  auto u = OperatorMatrix::identity(fam.union_space);
  for (std::size_t n = 0; n < fam.block_count(); ++n) {
    u += averaging_projection(fam, n) * (std::polar(1.0, t * fam.weights[n]) - 1.0);
  }
  return u;
}

double halfsplit_commutator_norm(const BlockFamily& fam, std::size_t n) {
  require_index(fam, n);
  const auto m = static_cast<Eigen::Index>(fam.blocks[n].size());
  const Matrix p = Matrix::Constant(m, m, 1.0 / static_cast<double>(m));
  Matrix split = Matrix::Zero(m, m);
  for (auto x : fam.half_splits[n]) {
    const auto local = static_cast<Eigen::Index>(x - fam.offsets[n]);
    split(local, local) = 1.0;
  }
  return spectral_norm(p * split - split * p);
}

double halfsplit_factor(const BlockFamily& fam, std::size_t n) {
  require_index(fam, n);
  const auto m = static_cast<double>(fam.blocks[n].size());
  const auto a = static_cast<double>(fam.half_splits[n].size());
  return std::sqrt(a * (m - a)) / m;
}

std::vector<DiscontinuityReport> discontinuity_sweep(const BlockFamily& fam,
                                                     std::span<const double> times) {
  const UnitaryGroup group(preflow_generator(fam));
  const auto pa = halfsplit_projection(fam);
  const auto factors = block_factors(fam);
  std::vector<DiscontinuityReport> out;
  out.reserve(times.size());
  for (double t : times) {
    DiscontinuityReport r;
    r.t = t;
    r.measured = operator_norm(group.conjugate(t, pa) - pa);
    std::tie(r.closed_form, r.block_of_max) = closed_form(fam, factors, t);
    if (std::abs(r.measured - r.closed_form) > kIdentityTol) {
      std::ostringstream msg;
      msg << "discontinuity_profile: measured " << r.measured << " != closed form "
          << r.closed_form << " at t = " << t;
      throw NumericError(msg.str());
    }
    out.push_back(r);
  }
  return out;
}

DiscontinuityReport discontinuity_profile(const BlockFamily& fam, double t) {
  const double times[] = {t};
  return discontinuity_sweep(fam, times).front();
}

std::vector<WmapBound> wmap_lower_bound_sweep(const BlockFamily& fam, std::span<const double> k,
                                              std::span<const double> times) {
  if (k.size() != fam.union_space->size()) {
    throw InvalidArgument("wmap_lower_bound: k must have one value per point of the union");
  }
  const UnitaryGroup group(preflow_generator(fam));
  const auto factors = block_factors(fam);
  const auto n = static_cast<Eigen::Index>(k.size());
  std::vector<WmapBound> out;
  out.reserve(times.size());
  for (double t : times) {
    Eigen::VectorXcd phases(n);
    for (Eigen::Index x = 0; x < n; ++x) phases(x) = std::polar(1.0, -t * k[x]);
    const Matrix w = group.at(t).matrix() * phases.asDiagonal();
    WmapBound b;
    b.t = t;
    b.lhs = spectral_norm(w - Matrix::Identity(n, n));
    b.rhs = closed_form(fam, factors, t).first;
    if (b.lhs < b.rhs - kIdentityTol) {
      std::ostringstream msg;
      msg << "wmap_lower_bound: lhs " << b.lhs << " < rhs " << b.rhs << " at t = " << t;
      throw NumericError(msg.str());
    }
    out.push_back(b);
  }
  return out;
}

WmapBound wmap_lower_bound(const BlockFamily& fam, std::span<const double> k, double t) {
  const double times[] = {t};
  return wmap_lower_bound_sweep(fam, k, times).front();
}

}  // namespace roeflow
