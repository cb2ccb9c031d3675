#include "roeflow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "roeflow/errors.hpp"

namespace roeflow {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kConvergence = 1e-14;
// Accepted when the sweep budget runs out but rounding has stalled here.
constexpr double kStallFloor = 1e-11;

double offdiag_mass(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index q = 0; q < a.cols(); ++q) {
    for (Eigen::Index p = 0; p < a.rows(); ++p) {
      if (p != q) sum += std::norm(a(p, q));
    }
  }
  return std::sqrt(sum);
}

// Zeroes a(p, q) with the unitary G = diag(1, e^{-i phi}) * R(c, s), where
// phi = arg a(p, q) and R is the real Jacobi rotation for |a(p, q)|.
void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex phase_conj = std::conj(apq / mag);

  const Complex gpp = c;
  const Complex gpq = s;
  const Complex gqp = -s * phase_conj;
  const Complex gqq = c * phase_conj;

  const auto n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
}

}  // namespace

EigenSystem jacobi_eigensystem(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("jacobi_eigensystem: matrix is not square");
  const auto n = m.rows();
  Matrix a = (m + m.adjoint()) * 0.5;
  Matrix v = Matrix::Identity(n, n);

  const double scale = a.norm();
  const double target = kConvergence * scale;
  double off = offdiag_mass(a);
  int sweep = 0;
  while (off > target && sweep < kMaxSweeps) {
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
    off = offdiag_mass(a);
    ++sweep;
  }
  if (off > target && off > kStallFloor * scale) {
    std::ostringstream msg;
    msg << "jacobi_eigensystem: no convergence after " << kMaxSweeps
        << " sweeps (off-diagonal mass " << off << ")";
    throw NumericError(msg.str());
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
    return a(i, i).real() < a(j, j).real();
  });
  EigenSystem es;
  es.values.resize(n);
  es.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    es.values(k) = a(order[k], order[k]).real();
    es.vectors.col(k) = v.col(order[k]);
  }
  return es;
}

EigenSystem hermitian_eig(const OperatorMatrix& a) {
  const double residual = hermiticity_residual(a);
  const double bound = 1e-10 * (1.0 + a.matrix().norm());
  if (residual > bound) {
    std::ostringstream msg;
    msg << "hermitian_eig: input is not Hermitian (||a - a^H||_F = " << residual
        << " > " << bound << ")";
    throw InvalidArgument(msg.str());
  }
  return jacobi_eigensystem(a.matrix());
}

Matrix apply_function(const EigenSystem& es, const std::function<Complex(double)>& fn) {
  const auto n = es.values.size();
  Eigen::VectorXcd weights(n);
  for (Eigen::Index k = 0; k < n; ++k) weights(k) = fn(es.values(k));
  return es.vectors * weights.asDiagonal() * es.vectors.adjoint();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const Matrix gram = m.rows() <= m.cols() ? Matrix(m * m.adjoint()) : Matrix(m.adjoint() * m);
  if (gram.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const auto es = jacobi_eigensystem(gram);
  return std::sqrt(std::max(0.0, es.values(es.values.size() - 1)));
}

UnitaryGroup::UnitaryGroup(OperatorMatrix h) : h_(std::move(h)), es_(hermitian_eig(h_)) {}

OperatorMatrix UnitaryGroup::at(double t) const {
  if (t == 0.0) return OperatorMatrix::identity(h_.space_ptr());
  return h_.with_matrix(apply_function(es_, [t](double lambda) {
    return std::polar(1.0, t * lambda);
  }));
}

OperatorMatrix UnitaryGroup::conjugate(double t, const OperatorMatrix& a) const {
  return roeflow::conjugate(at(t), a);
}

OperatorMatrix unitary_exp(const OperatorMatrix& h, double t) { return UnitaryGroup(h).at(t); }

FlowGrid make_flow_grid(const UnitaryGroup& group, std::span<const double> times) {
  if (!std::is_sorted(times.begin(), times.end()) ||
      std::adjacent_find(times.begin(), times.end()) != times.end()) {
    throw InvalidArgument("make_flow_grid: times must be strictly increasing");
  }
  FlowGrid grid{group.generator(), {times.begin(), times.end()}, {}};
  grid.unitaries.reserve(times.size());
  for (double t : times) grid.unitaries.push_back(group.at(t));
  return grid;
}

FlowGrid make_flow_grid(const OperatorMatrix& h, std::span<const double> times) {
  return make_flow_grid(UnitaryGroup(h), times);
}

double generator_check(const FlowGrid& grid) {
  const auto& ts = grid.times;
  std::size_t plus = ts.size();
  for (std::size_t j = 0; j < ts.size(); ++j) {
    if (ts[j] > 0.0) {
      plus = j;
      break;
    }
  }
  if (plus == ts.size()) throw InvalidArgument("generator_check: grid has no positive time");
  const double delta = ts[plus];
  std::size_t minus = ts.size();
  for (std::size_t j = 0; j < plus; ++j) {
    if (std::abs(ts[j] + delta) <= 1e-12 * delta) minus = j;
  }
  if (minus == ts.size()) {
    throw InvalidArgument("generator_check: grid is not symmetric around 0");
  }
  const Matrix central =
      (grid.unitaries[plus].matrix() - grid.unitaries[minus].matrix()) / (ts[plus] - ts[minus]);
  return spectral_norm(central - Complex(0.0, 1.0) * grid.generator.matrix());
}

double generator_check(const OperatorMatrix& h, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("generator_check: delta must be positive");
  const double times[] = {-delta, 0.0, delta};
  return generator_check(make_flow_grid(h, times));
}

}  // namespace roeflow
