#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "roeflow/operator.hpp"

namespace roeflow {

/// Exhaustive quasi-locality runs over all 2^n subsets.
inline constexpr std::size_t kQuasiLocalityGuard = 16;

enum class QLMode { exact, lower };

const char* to_string(QLMode mode);

/// sup ||p_A a p_B|| over A nonempty and B = {y : d(y, A) > r} nonempty.
/// Exact mode ranges A over every subset (size guarded, "ql_exact"); lower
/// mode restricts A to singletons and closed metric balls, which gives a
/// lower bound in O(n^2) candidates.
double ql_value(const OperatorMatrix& a, double r, QLMode mode,
                std::size_t max_points = kQuasiLocalityGuard, unsigned threads = 1);

struct QLProfile {
  std::vector<double> radii;
  std::vector<double> values;
  QLMode mode = QLMode::lower;
};

/// ql_value at each radius (defaults to the distance set of the space).
QLProfile ql_profile(const OperatorMatrix& a, QLMode mode, std::span<const double> radii = {},
                     std::size_t max_points = kQuasiLocalityGuard, unsigned threads = 1);

/// CSV with columns radius,value,mode. Values use 17 significant digits.
void write_profile_csv(std::ostream& out, std::span<const QLProfile> profiles);

/// Smallest r in the distance set with ||a - truncate(a, r)|| <= eps. This is
/// an upper-bound certificate for the best-approximation radius.
double eps_r_certificate(const OperatorMatrix& a, double eps);

/// max over the family of eps_r_certificate: one radius serving every member.
double equi_approx_profile(std::span<const OperatorMatrix> family, double eps);

}  // namespace roeflow
