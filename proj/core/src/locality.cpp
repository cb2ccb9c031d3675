#include "roeflow/locality.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <set>

#include "roeflow/errors.hpp"
#include "roeflow/parallel.hpp"
#include "roeflow/spectral.hpp"

namespace roeflow {

namespace {

// ||p_A a p_B|| for index lists A (rows) and B (columns).
double corner_norm(const Matrix& a, const std::vector<Eigen::Index>& rows,
                   const std::vector<Eigen::Index>& cols) {
  Matrix sub(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = a(rows[i], cols[j]);
  }
  if (sub.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  return spectral_norm(sub);
}

// Far set of A: every y with d(y, A) > r. Returns the corner norm (0 if empty).
double far_corner(const OperatorMatrix& a, const std::vector<char>& in_a, double r) {
  const auto& d = a.space().distances();
  const auto n = static_cast<Eigen::Index>(a.size());
  std::vector<Eigen::Index> rows, cols;
  for (Eigen::Index x = 0; x < n; ++x) {
    if (in_a[x]) rows.push_back(x);
  }
  for (Eigen::Index y = 0; y < n; ++y) {
    bool far = true;
    for (auto x : rows) {
      if (d(x, y) <= r) {
        far = false;
        break;
      }
    }
    if (far) cols.push_back(y);
  }
  if (rows.empty() || cols.empty()) return 0.0;
  return corner_norm(a.matrix(), rows, cols);
}

std::vector<std::vector<char>> ball_candidates(const FiniteSpace& s) {
  const auto n = s.size();
  std::set<std::vector<char>> unique;
  for (std::size_t x = 0; x < n; ++x) {
    for (double radius : s.distance_set()) {
      std::vector<char> ball(n, 0);
      for (std::size_t y = 0; y < n; ++y) ball[y] = s.distance(x, y) <= radius;
      unique.insert(std::move(ball));
    }
  }
  return {unique.begin(), unique.end()};
}

}  // namespace

const char* to_string(QLMode mode) { return mode == QLMode::exact ? "exact" : "lower"; }

double ql_value(const OperatorMatrix& a, double r, QLMode mode, std::size_t max_points,
                unsigned threads) {
  const auto n = a.size();
  if (mode == QLMode::lower) {
    // Singletons are the radius-0 balls.
    double best = 0.0;
    for (const auto& set : ball_candidates(a.space())) best = std::max(best, far_corner(a, set, r));
    return best;
  }

  if (n > max_points || n >= 63) {
    throw SizeGuardError("ql_exact", "exact quasi-locality refused: " + std::to_string(n) +
                                         " points exceeds guard of " + std::to_string(max_points));
  }
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::vector<double> best(subsets, 0.0);
  parallel_for(subsets - 1, threads, [&](std::size_t k) {
    const std::uint64_t mask = k + 1;
    std::vector<char> in_a(n);
    for (std::size_t x = 0; x < n; ++x) in_a[x] = (mask >> x) & 1u;
    best[mask] = far_corner(a, in_a, r);
  });
  return *std::max_element(best.begin(), best.end());
}

QLProfile ql_profile(const OperatorMatrix& a, QLMode mode, std::span<const double> radii,
                     std::size_t max_points, unsigned threads) {
  QLProfile profile;
  profile.mode = mode;
  if (radii.empty()) {
    profile.radii = a.space().distance_set();
  } else {
    profile.radii.assign(radii.begin(), radii.end());
  }
  if (!std::is_sorted(profile.radii.begin(), profile.radii.end())) {
    throw InvalidArgument("ql_profile: radii must be increasing");
  }
  for (double r : profile.radii) profile.values.push_back(ql_value(a, r, mode, max_points, threads));
  return profile;
}

void write_profile_csv(std::ostream& out, std::span<const QLProfile> profiles) {
  out << "radius,value,mode\n";
  char buf[96];
  for (const auto& p : profiles) {
    for (std::size_t i = 0; i < p.radii.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,", p.radii[i], p.values[i]);
      out << buf << to_string(p.mode) << '\n';
    }
  }
}

double eps_r_certificate(const OperatorMatrix& a, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("eps_r_certificate: eps must be positive");
  const auto& radii = a.space().distance_set();
  for (double r : radii) {
    if (operator_norm(a - truncate(a, r)) <= eps) return r;
  }
  return radii.back();
}

double equi_approx_profile(std::span<const OperatorMatrix> family, double eps) {
  if (family.empty()) throw InvalidArgument("equi_approx_profile: empty family");
  double r = 0.0;
  for (const auto& member : family) {
    if (member.space().distances() != family.front().space().distances()) {
      throw InvalidArgument("equi_approx_profile: members live on different spaces");
    }
    r = std::max(r, eps_r_certificate(member, eps));
  }
  return r;
}

}  // namespace roeflow
