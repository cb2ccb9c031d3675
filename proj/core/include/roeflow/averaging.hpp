#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "roeflow/operator.hpp"

namespace roeflow {

/// Exhaustive sign-group averages sum 2^n terms.
inline constexpr std::size_t kSignAverageGuard = 14;

/// An element of {-1, +1}^X, acting as the diagonal unitary pi(eps).
class SignVector {
 public:
  explicit SignVector(std::vector<int> signs);

  /// The index-th vector in canonical order: point 0 is the most significant
  /// digit and +1 precedes -1, so index 0 is all-plus.
  static SignVector at(std::size_t n, std::uint64_t index);

  std::size_t size() const noexcept { return signs_.size(); }
  int operator[](std::size_t x) const { return signs_[x]; }
  const std::vector<int>& signs() const noexcept { return signs_; }

 private:
  std::vector<int> signs_;
};

/// pi(eps)^* a pi(eps): entry (x, y) becomes eps_x eps_y a_xy.
OperatorMatrix conjugate_by_sign(const OperatorMatrix& a, const SignVector& eps);

using SignFamily = std::function<OperatorMatrix(const SignVector&)>;

/// 2^{-n} sum over all sign vectors of family(eps), summed in canonical order
/// with compensated (Neumaier) accumulation. Size guarded ("sign_average").
OperatorMatrix brute_average(const SpacePtr& space, const SignFamily& family,
                             std::size_t max_points = kSignAverageGuard);

/// Average of pi(eps)^* a pi(eps) over the sign group: the brute sum up to
/// the guard, the closed form expectation(a) above it.
OperatorMatrix sign_average(const OperatorMatrix& a, std::size_t max_points = kSignAverageGuard);

/// Maps any operator to one of propagation at most r.
using Selector = std::function<OperatorMatrix(const OperatorMatrix&, double r)>;

Selector truncation_selector();

struct ExtractionReport {
  OperatorMatrix h_prime;
  double defect = 0.0;           // ||h - h'||
  double max_remainder = 0.0;    // max_eps ||c_eps||, an upper bound for defect
  double diagonal_residual = 0.0;  // ||w + h - E(h)||
  double propagation = 0.0;      // propagation(h')
};

/// Builds a finite-propagation approximant of h by sign-group averaging:
/// m_eps = pi(eps)^*[h, pi(eps)], b_eps = selector(m_eps, r),
/// c_eps = m_eps - b_eps, w = avg m_eps, b = avg b_eps, h' = w + h - b.
/// Throws InvalidArgument if the selector breaks the propagation bound and
/// NumericError if ||w + h - E(h)|| > 1e-10.
ExtractionReport extract_finite_prop(const OperatorMatrix& h, double r,
                                     const Selector& selector = truncation_selector(),
                                     std::size_t max_points = kSignAverageGuard);

}  // namespace roeflow
