#include "roeflow/averaging.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "roeflow/errors.hpp"
#include "roeflow/spectral.hpp"

namespace roeflow {

namespace {

void check_guard(std::size_t n, std::size_t max_points) {
  if (n > max_points || n >= 63) {
    throw SizeGuardError("sign_average", "sign-group average refused: " + std::to_string(n) +
                                             " points exceeds guard of " +
                                             std::to_string(max_points));
  }
}

// Entrywise Neumaier summation; real and imaginary parts tracked separately.
class CompensatedSum {
 public:
  explicit CompensatedSum(Eigen::Index n)
      : sum_(Eigen::MatrixXd::Zero(2 * n, n)), carry_(Eigen::MatrixXd::Zero(2 * n, n)) {}

  void add(const Matrix& m) {
    const auto n = m.rows();
    for (Eigen::Index y = 0; y < n; ++y) {
      for (Eigen::Index x = 0; x < n; ++x) {
        accumulate(x, y, m(x, y).real());
        accumulate(n + x, y, m(x, y).imag());
      }
    }
  }

  Matrix scaled(double factor) const {
    const auto n = sum_.cols();
    Matrix out(n, n);
    for (Eigen::Index y = 0; y < n; ++y) {
      for (Eigen::Index x = 0; x < n; ++x) {
        out(x, y) = Complex((sum_(x, y) + carry_(x, y)) * factor,
                            (sum_(n + x, y) + carry_(n + x, y)) * factor);
      }
    }
    return out;
  }

 private:
  void accumulate(Eigen::Index i, Eigen::Index j, double value) {
    const double s = sum_(i, j);
    const double t = s + value;
    if (std::abs(s) >= std::abs(value)) {
      carry_(i, j) += (s - t) + value;
    } else {
      carry_(i, j) += (value - t) + s;
    }
    sum_(i, j) = t;
  }

  Eigen::MatrixXd sum_;
  Eigen::MatrixXd carry_;
};

}  // namespace

SignVector::SignVector(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_) {
    if (s != 1 && s != -1) throw InvalidArgument("SignVector: entries must be +1 or -1");
  }
}

SignVector SignVector::at(std::size_t n, std::uint64_t index) {
  if (n < 64 && index >> n != 0) throw InvalidArgument("SignVector::at: index out of range");
  std::vector<int> signs(n);
  for (std::size_t x = 0; x < n; ++x) signs[x] = ((index >> (n - 1 - x)) & 1u) ? -1 : 1;
  return SignVector(std::move(signs));
}

OperatorMatrix conjugate_by_sign(const OperatorMatrix& a, const SignVector& eps) {
  if (eps.size() != a.size()) throw InvalidArgument("conjugate_by_sign: size mismatch");
  Matrix m = a.matrix();
  for (Eigen::Index y = 0; y < m.cols(); ++y) {
    for (Eigen::Index x = 0; x < m.rows(); ++x) {
      if (eps[x] != eps[y]) m(x, y) = -m(x, y);
    }
  }
  return a.with_matrix(std::move(m));
}

OperatorMatrix brute_average(const SpacePtr& space, const SignFamily& family,
                             std::size_t max_points) {
  const auto n = space->size();
  check_guard(n, max_points);
  const std::uint64_t count = std::uint64_t{1} << n;
  CompensatedSum sum(static_cast<Eigen::Index>(n));
  for (std::uint64_t k = 0; k < count; ++k) {
    const auto term = family(SignVector::at(n, k));
    if (term.size() != n) throw InvalidArgument("brute_average: family member has wrong size");
    sum.add(term.matrix());
  }
  return {space, sum.scaled(std::ldexp(1.0, -static_cast<int>(n)))};
}

OperatorMatrix sign_average(const OperatorMatrix& a, std::size_t max_points) {
  if (a.size() > max_points) return expectation(a);
  return brute_average(a.space_ptr(), [&](const SignVector& eps) {
    return conjugate_by_sign(a, eps);
  }, max_points);
}

Selector truncation_selector() {
  return [](const OperatorMatrix& m, double r) { return truncate(m, r); };
}

ExtractionReport extract_finite_prop(const OperatorMatrix& h, double r, const Selector& selector,
                                     std::size_t max_points) {
  const auto n = h.size();
  check_guard(n, max_points);
  const std::uint64_t count = std::uint64_t{1} << n;
  const auto dim = static_cast<Eigen::Index>(n);
  CompensatedSum w_sum(dim), b_sum(dim);
  double max_remainder = 0.0;

  for (std::uint64_t k = 0; k < count; ++k) {
    const auto eps = SignVector::at(n, k);
    // pi(eps)^* [h, pi(eps)] = pi(eps) h pi(eps) - h, since pi(eps)^2 = 1.
    const auto m = conjugate_by_sign(h, eps) - h;
    const auto b = selector(m, r);
    const double prop = propagation(b, 0.0);
    if (prop > r) {
      std::ostringstream msg;
      msg << "extract_finite_prop: selector returned propagation " << prop << " > r = " << r;
      throw InvalidArgument(msg.str());
    }
    max_remainder = std::max(max_remainder, operator_norm(m - b));
    w_sum.add(m.matrix());
    b_sum.add(b.matrix());
  }

  const double scale = std::ldexp(1.0, -static_cast<int>(n));
  const OperatorMatrix w = h.with_matrix(w_sum.scaled(scale));
  const OperatorMatrix b = h.with_matrix(b_sum.scaled(scale));

  ExtractionReport report{w + h - b};
  report.defect = operator_norm(h - report.h_prime);
  report.max_remainder = max_remainder;
  report.diagonal_residual = operator_norm(w + h - expectation(h));
  report.propagation = propagation(report.h_prime);
  if (report.diagonal_residual > 1e-10) {
    std::ostringstream msg;
    msg << "extract_finite_prop: ||w + h - E(h)|| = " << report.diagonal_residual
        << " exceeds 1e-10";
    throw NumericError(msg.str());
  }
  return report;
}

}  // namespace roeflow
