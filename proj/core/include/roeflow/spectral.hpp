#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "roeflow/operator.hpp"

namespace roeflow {

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// as the columns of `vectors`.
struct EigenSystem {
  Eigen::VectorXd values;
  Matrix vectors;
};

/// Cyclic complex Jacobi on the Hermitian part (m + m^H)/2. Converges when the
/// off-diagonal Frobenius mass is at most 1e-14 * ||m||_F; throws
/// NumericError if that does not happen within the sweep budget.
EigenSystem jacobi_eigensystem(const Matrix& m);

/// Checks Hermiticity (||a - a^H||_F <= 1e-10 (1 + ||a||_F)) and
/// diagonalizes. Throws InvalidArgument naming the residual otherwise.
EigenSystem hermitian_eig(const OperatorMatrix& a);

/// V diag(fn(lambda)) V^H
Matrix apply_function(const EigenSystem& es, const std::function<Complex(double)>& fn);

/// Largest singular value of an arbitrary (possibly rectangular) matrix.
double spectral_norm(const Matrix& m);

/// The one-parameter unitary group t -> e^{ith} of a Hermitian h. The
/// eigensystem is computed once and shared by every evaluation.
class UnitaryGroup {
 public:
  explicit UnitaryGroup(OperatorMatrix h);

  const OperatorMatrix& generator() const noexcept { return h_; }
  const EigenSystem& eigensystem() const noexcept { return es_; }

  OperatorMatrix at(double t) const;

  /// e^{ith} a e^{-ith}
  OperatorMatrix conjugate(double t, const OperatorMatrix& a) const;

 private:
  OperatorMatrix h_;
  EigenSystem es_;
};

OperatorMatrix unitary_exp(const OperatorMatrix& h, double t);

/// A time grid with the unitaries e^{i t_j h}.
struct FlowGrid {
  OperatorMatrix generator;
  std::vector<double> times;
  std::vector<OperatorMatrix> unitaries;
};

FlowGrid make_flow_grid(const OperatorMatrix& h, std::span<const double> times);
FlowGrid make_flow_grid(const UnitaryGroup& group, std::span<const double> times);

/// ||(u_d - u_{-d}) / (2d) - i h|| where +-d are the grid points closest to 0
/// (they must be symmetric). Second-order accurate in d.
double generator_check(const FlowGrid& grid);

/// Convenience: evaluates generator_check on the grid {-delta, 0, delta}.
double generator_check(const OperatorMatrix& h, double delta);

}  // namespace roeflow
