#include "roeflow/space.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "roeflow/errors.hpp"

namespace roeflow {

namespace {

// Slack for the triangle inequality on non-integer metrics.
constexpr double kTriangleSlack = 1e-12;

}  // namespace

std::string metric_violation(const Eigen::MatrixXd& dist) {
  const auto n = dist.rows();
  std::ostringstream msg;
  if (dist.cols() != n) {
    msg << "distance matrix is " << dist.rows() << "x" << dist.cols();
    return msg.str();
  }
  for (Eigen::Index x = 0; x < n; ++x) {
    if (dist(x, x) != 0.0) {
      msg << "d(" << x << "," << x << ") = " << dist(x, x) << " != 0";
      return msg.str();
    }
    for (Eigen::Index y = 0; y < n; ++y) {
      const double d = dist(x, y);
      if (!std::isfinite(d)) {
        msg << "d(" << x << "," << y << ") is not finite";
        return msg.str();
      }
      if (d != dist(y, x)) {
        msg << "d(" << x << "," << y << ") != d(" << y << "," << x << ")";
        return msg.str();
      }
      if (x != y && !(d > 0.0)) {
        msg << "d(" << x << "," << y << ") = " << d << " is not positive";
        return msg.str();
      }
    }
  }
  const double scale = n > 0 ? dist.maxCoeff() : 0.0;
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) {
      for (Eigen::Index z = 0; z < n; ++z) {
        if (dist(x, z) > dist(x, y) + dist(y, z) + kTriangleSlack * scale) {
          msg << "triangle inequality fails on (" << x << "," << y << "," << z << ")";
          return msg.str();
        }
      }
    }
  }
  return {};
}

FiniteSpace::FiniteSpace(Eigen::MatrixXd dist, std::vector<std::string> labels)
    : dist_(std::move(dist)), labels_(std::move(labels)) {
  if (dist_.rows() == 0) throw InvalidArgument("FiniteSpace: need at least one point");
  if (auto why = metric_violation(dist_); !why.empty()) {
    throw InvalidArgument("FiniteSpace: " + why);
  }
  if (!labels_.empty() && labels_.size() != size()) {
    throw InvalidArgument("FiniteSpace: label count does not match point count");
  }
  diameter_ = dist_.maxCoeff();
  std::vector<double> values(dist_.data(), dist_.data() + dist_.size());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  distance_set_ = std::move(values);
}

FiniteSpace from_edge_list(std::span<const Edge> edges, std::size_t n_points) {
  if (n_points == 0) throw InvalidArgument("from_edge_list: need at least one point");
  std::vector<std::vector<std::size_t>> adjacency(n_points);
  for (const auto& [u, v] : edges) {
    if (u >= n_points || v >= n_points) {
      throw InvalidArgument("from_edge_list: edge endpoint out of range");
    }
    if (u == v) {
      throw InvalidArgument("from_edge_list: self-loop at point " + std::to_string(u));
    }
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }

  Eigen::MatrixXd dist(n_points, n_points);
  constexpr auto unseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> hops(n_points);
  std::deque<std::size_t> queue;
  for (std::size_t source = 0; source < n_points; ++source) {
    std::fill(hops.begin(), hops.end(), unseen);
    hops[source] = 0;
    queue.assign(1, source);
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop_front();
      for (auto y : adjacency[x]) {
        if (hops[y] == unseen) {
          hops[y] = hops[x] + 1;
          queue.push_back(y);
        }
      }
    }
    for (std::size_t y = 0; y < n_points; ++y) {
      if (hops[y] == unseen) {
        throw InvalidArgument("from_edge_list: graph is disconnected (no path " +
                              std::to_string(source) + " -> " + std::to_string(y) + ")");
      }
      dist(source, y) = static_cast<double>(hops[y]);
    }
  }
  return FiniteSpace(std::move(dist));
}

std::vector<double> coarse_union_offsets(std::span<const FiniteSpace> blocks) {
  std::vector<double> offsets;
  offsets.reserve(blocks.size());
  double c = 0.0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (k > 0) {
      // 1-based recursion index is k, so the additive gap is k + 1.
      c += blocks[k - 1].diameter() + blocks[k].diameter() + static_cast<double>(k) + 1.0;
    }
    offsets.push_back(c);
  }
  return offsets;
}

FiniteSpace coarse_union(std::span<const FiniteSpace> blocks) {
  if (blocks.empty()) throw InvalidArgument("coarse_union: empty block list");
  if (blocks.size() == 1) return blocks.front();

  const auto offsets = coarse_union_offsets(blocks);
  std::size_t total = 0;
  std::vector<std::size_t> start;
  for (const auto& b : blocks) {
    start.push_back(total);
    total += b.size();
  }

  Eigen::MatrixXd dist(total, total);
  std::vector<std::string> labels;
  bool any_labels = false;
  for (const auto& b : blocks) any_labels = any_labels || !b.labels().empty();

  for (std::size_t m = 0; m < blocks.size(); ++m) {
    const auto& bm = blocks[m];
    for (std::size_t n = 0; n < blocks.size(); ++n) {
      const auto& bn = blocks[n];
      if (m == n) {
        dist.block(start[m], start[m], bm.size(), bm.size()) = bm.distances();
      } else {
        dist.block(start[m], start[n], bm.size(), bn.size()).setConstant(
            std::abs(offsets[m] - offsets[n]));
      }
    }
    if (any_labels) {
      for (std::size_t x = 0; x < bm.size(); ++x) {
        labels.push_back(bm.labels().empty()
                             ? std::to_string(m) + ":" + std::to_string(x)
                             : bm.labels()[x]);
      }
    }
  }
  return FiniteSpace(std::move(dist), std::move(labels));
}

std::size_t growth_profile(const FiniteSpace& s, double r) {
  std::size_t best = 0;
  const auto& d = s.distances();
  for (Eigen::Index x = 0; x < d.rows(); ++x) {
    std::size_t ball = 0;
    for (Eigen::Index y = 0; y < d.cols(); ++y) {
      if (d(x, y) <= r) ++ball;
    }
    best = std::max(best, ball);
  }
  return best;
}

FiniteSpace path_space(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return from_edge_list(edges, n);
}

FiniteSpace cycle_space(std::size_t n) {
  if (n < 3) throw InvalidArgument("cycle_space: need at least 3 points");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return from_edge_list(edges, n);
}

FiniteSpace complete_space(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return from_edge_list(edges, n);
}

FiniteSpace read_edge_list(std::istream& in) {
  std::string line;
  std::size_t n_points = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!have_header) {
      std::string tag;
      if (!(fields >> tag >> n_points) || tag != "n") {
        throw InvalidArgument("edge list line " + std::to_string(line_no) +
                              ": expected header 'n <n_points>'");
      }
      have_header = true;
      continue;
    }
    long long u = -1, v = -1;
    if (!(fields >> u >> v) || u < 0 || v < 0) {
      throw InvalidArgument("edge list line " + std::to_string(line_no) +
                            ": expected 'u v' with nonnegative integers");
    }
    edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }
  if (!have_header) throw InvalidArgument("edge list: missing 'n <n_points>' header");
  return from_edge_list(edges, n_points);
}

void write_edge_list(std::ostream& out, std::size_t n_points, std::span<const Edge> edges) {
  out << "n " << n_points << '\n';
  for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
}

}  // namespace roeflow
