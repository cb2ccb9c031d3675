#include "roeflow/flows.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "roeflow/errors.hpp"

namespace roeflow {

namespace {

constexpr double kUnitarityTol = 1e-10;

double unitarity_residual(const OperatorMatrix& u) {
  const auto n = static_cast<Eigen::Index>(u.size());
  return spectral_norm(u.matrix().adjoint() * u.matrix() - Matrix::Identity(n, n));
}

}  // namespace

OperatorMatrix flow_apply(const OperatorMatrix& h, double t, const OperatorMatrix& a) {
  return UnitaryGroup(h).conjugate(t, a);
}

double flow_derivative_residual(const OperatorMatrix& h, const PartialTranslation& f,
                                double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("flow_derivative_residual: delta must be positive");
  const auto v = to_matrix(f);
  const auto moved = flow_apply(h, delta, v);
  const Matrix quotient = (moved.matrix() - v.matrix()) / delta;
  const Matrix derivative = Complex(0.0, 1.0) * commutator(h, v).matrix();
  return spectral_norm(quotient - derivative);
}

std::vector<double> flow_displacement_norms(const UnitaryGroup& flow, const OperatorMatrix& a,
                                            std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(operator_norm(flow.conjugate(t, a) - a));
  return out;
}

OperatorMatrix w_map(const OperatorMatrix& h, const OperatorMatrix& k, double t) {
  return unitary_exp(h, t) * unitary_exp(k, -t);
}

LipschitzReport lipschitz_audit(const OperatorMatrix& h, const OperatorMatrix& k,
                                std::span<const double> times) {
  if (times.size() < 2) throw InvalidArgument("lipschitz_audit: need at least 2 grid points");
  const UnitaryGroup gh(h), gk(k);
  std::vector<OperatorMatrix> w;
  w.reserve(times.size());
  for (double t : times) w.push_back(gh.at(t) * gk.at(-t));

  LipschitzReport report;
  report.bound = operator_norm(h - k);
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t j = i + 1; j < times.size(); ++j) {
      const double gap = std::abs(times[i] - times[j]);
      if (gap == 0.0) throw InvalidArgument("lipschitz_audit: repeated grid time");
      report.max_ratio = std::max(report.max_ratio, operator_norm(w[i] - w[j]) / gap);
    }
  }
  if (report.max_ratio > report.bound * (1.0 + 1e-8) + 1e-10) {
    std::ostringstream msg;
    msg << "lipschitz_audit: ratio " << report.max_ratio << " exceeds ||h - k|| = " << report.bound;
    throw NumericError(msg.str());
  }
  return report;
}

CocycleFamily::CocycleFamily(std::shared_ptr<const UnitaryGroup> base, std::vector<double> times,
                             std::vector<OperatorMatrix> elements,
                             std::shared_ptr<const UnitaryGroup> perturbed)
    : base_(std::move(base)),
      perturbed_(std::move(perturbed)),
      times_(std::move(times)),
      elements_(std::move(elements)) {
  if (!base_) throw InvalidArgument("CocycleFamily: missing base flow");
  if (times_.size() != elements_.size()) {
    throw InvalidArgument("CocycleFamily: one element per grid time required");
  }
  for (std::size_t j = 0; j < elements_.size(); ++j) {
    const double residual = unitarity_residual(elements_[j]);
    if (residual > kUnitarityTol) {
      std::ostringstream msg;
      msg << "CocycleFamily: element at t = " << times_[j] << " is not unitary (residual "
          << residual << ")";
      throw InvalidArgument(msg.str());
    }
  }
}

std::optional<std::size_t> CocycleFamily::grid_index(double t) const {
  for (std::size_t j = 0; j < times_.size(); ++j) {
    if (std::abs(times_[j] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return j;
  }
  return std::nullopt;
}

OperatorMatrix CocycleFamily::at(double t) const {
  if (auto j = grid_index(t)) return elements_[*j];
  if (!perturbed_) {
    std::ostringstream msg;
    msg << "CocycleFamily: t = " << t << " is off the grid and no generator is attached";
    throw InvalidArgument(msg.str());
  }
  return perturbed_->at(t) * base_->at(-t);
}

CocycleFamily CocycleFamily::with_element(double t, OperatorMatrix u) const {
  const auto j = grid_index(t);
  if (!j) throw InvalidArgument("CocycleFamily::with_element: t is not a grid time");
  auto elements = elements_;
  elements[*j] = std::move(u);
  return {base_, times_, std::move(elements), perturbed_};
}

CocycleFamily cocycle_from_generators(const OperatorMatrix& h, const OperatorMatrix& k,
                                      std::span<const double> times) {
  auto gh = std::make_shared<const UnitaryGroup>(h);
  auto gk = std::make_shared<const UnitaryGroup>(k);
  std::vector<OperatorMatrix> elements;
  elements.reserve(times.size());
  for (double t : times) elements.push_back(gk->at(t) * gh->at(-t));
  return {std::move(gh), {times.begin(), times.end()}, std::move(elements), std::move(gk)};
}

double cocycle_residual(const CocycleFamily& c, double t, double s) {
  const auto lhs = c.at(t + s);
  const auto rhs = c.at(t) * c.base_flow().conjugate(t, c.at(s));
  return operator_norm(lhs - rhs);
}

double lambda_scalar_residual(const OperatorMatrix& h, const OperatorMatrix& k,
                              const CocycleFamily& u, double t) {
  const auto lambda = unitary_exp(h, -t) * u.at(t) * unitary_exp(k, t);
  const auto n = static_cast<double>(lambda.size());
  const Complex mean = lambda.matrix().trace() / n;
  const auto scalar = OperatorMatrix::identity(lambda.space_ptr()) * mean;
  return operator_norm(lambda - scalar);
}

double diagonal_closeness(std::span<const double> h, std::span<const double> k) {
  if (h.size() != k.size()) throw InvalidArgument("diagonal_closeness: size mismatch");
  double best = 0.0;
  for (std::size_t x = 0; x < h.size(); ++x) best = std::max(best, std::abs(h[x] - k[x]));
  return best;
}

}  // namespace roeflow
