#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>

#include <Eigen/Core>

#include "roeflow/space.hpp"

namespace roeflow {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// A bounded operator on l2(X) for a finite space X, stored densely.
/// Entry (x, y) is <a delta_y, delta_x>: rows index outputs, columns inputs.
class OperatorMatrix {
 public:
  OperatorMatrix(SpacePtr space, Matrix entries);

  static OperatorMatrix zero(SpacePtr space);
  static OperatorMatrix identity(SpacePtr space);
  static OperatorMatrix diagonal(SpacePtr space, std::span<const double> values);

  const FiniteSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  const Matrix& matrix() const noexcept { return entries_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }

  Complex operator()(std::size_t x, std::size_t y) const { return entries_(x, y); }

  OperatorMatrix adjoint() const;
  OperatorMatrix with_matrix(Matrix entries) const { return {space_, std::move(entries)}; }

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(Complex scalar);

  friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
  friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
  friend OperatorMatrix operator*(OperatorMatrix a, Complex s) { return a *= s; }
  friend OperatorMatrix operator*(Complex s, OperatorMatrix a) { return a *= s; }
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

 private:
  void require_same_space(const OperatorMatrix& other, const char* op) const;

  SpacePtr space_;
  Matrix entries_;
};

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// u a u^*
OperatorMatrix conjugate(const OperatorMatrix& u, const OperatorMatrix& a);

/// Default cutoff used by propagation(): 1e-12 * max |a_xy|.
double default_propagation_tol(const OperatorMatrix& a);

/// max d(x, y) over entries with |a_xy| > tol; a negative tol selects the
/// default cutoff.
double propagation(const OperatorMatrix& a, double tol = -1.0);

/// Diagonal part E(a).
OperatorMatrix expectation(const OperatorMatrix& a);

/// Keeps entry (x, y) iff d(x, y) <= r.
OperatorMatrix truncate(const OperatorMatrix& a, double r);

/// Largest singular value (via the Jacobi eigensolver on a^H a).
double operator_norm(const OperatorMatrix& a);

/// beta(r) * max |a_xy|, a certified bound on ||a|| for a with propagation
/// at most r. Throws InvalidArgument when propagation(a) > r.
double schur_bound(const OperatorMatrix& a, double r);

/// max |a_xy| over x != y; 0 on a one-point space.
double offdiag_sup(const OperatorMatrix& a);

double max_abs_entry(const OperatorMatrix& a);

/// ||a - a^H||_F
double hermiticity_residual(const OperatorMatrix& a);

struct HigsonProfile {
  double commutator_norm = 0.0;  // ||[a, M_f]||
  double entrywise_residual = 0.0;  // max |[a,M_f]_xy - (f_y - f_x) a_xy|
};

/// Commutator of a with the multiplication operator of f.
HigsonProfile higson_commutator_profile(const OperatorMatrix& a, std::span<const double> f);

/// Matrix text format: header "n <n>", then "x y re im" per nonzero entry,
/// numbers printed with 17 significant digits (exact double round-trip).
void write_matrix(std::ostream& out, const OperatorMatrix& a);
OperatorMatrix read_matrix(std::istream& in, SpacePtr space);

}  // namespace roeflow
