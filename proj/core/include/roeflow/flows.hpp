#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "roeflow/operator.hpp"
#include "roeflow/spectral.hpp"
#include "roeflow/translations.hpp"

namespace roeflow {

/// sigma_{h,t}(a) = e^{ith} a e^{-ith}
OperatorMatrix flow_apply(const OperatorMatrix& h, double t, const OperatorMatrix& a);

/// ||(sigma_{h,delta}(v_f) - v_f) / delta - i [h, v_f]||, the forward
/// difference error of the derivative at zero. O(delta ||h||^2).
double flow_derivative_residual(const OperatorMatrix& h, const PartialTranslation& f,
                                double delta);

/// ||sigma_{h,t}(a) - a|| at each grid time.
std::vector<double> flow_displacement_norms(const UnitaryGroup& flow, const OperatorMatrix& a,
                                            std::span<const double> times);

/// w_{h,k}(t) = e^{ith} e^{-itk}
OperatorMatrix w_map(const OperatorMatrix& h, const OperatorMatrix& k, double t);

struct LipschitzReport {
  double max_ratio = 0.0;  // max over grid pairs of ||w(t) - w(s)|| / |t - s|
  double bound = 0.0;      // ||h - k||
};

/// Audits t -> w_{h,k}(t) for the Lipschitz constant ||h - k||. Throws
/// NumericError if max_ratio > bound (1 + 1e-8) + 1e-10.
LipschitzReport lipschitz_audit(const OperatorMatrix& h, const OperatorMatrix& k,
                                std::span<const double> times);

/// A family of unitaries u_t over a time grid, attached to the base flow
/// sigma_h. When the perturbed generator k is known, u_t = e^{itk} e^{-ith}
/// is also available off the grid.
class CocycleFamily {
 public:
  CocycleFamily(std::shared_ptr<const UnitaryGroup> base, std::vector<double> times,
                std::vector<OperatorMatrix> elements,
                std::shared_ptr<const UnitaryGroup> perturbed = nullptr);

  const UnitaryGroup& base_flow() const noexcept { return *base_; }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<OperatorMatrix>& elements() const noexcept { return elements_; }

  /// u_t: the stored element when t is a grid time, otherwise computed from
  /// the generators (InvalidArgument if they are unknown).
  OperatorMatrix at(double t) const;

  /// Copy with the element at grid time t replaced (used for negative
  /// controls). The replacement must still be unitary.
  CocycleFamily with_element(double t, OperatorMatrix u) const;

 private:
  std::optional<std::size_t> grid_index(double t) const;

  std::shared_ptr<const UnitaryGroup> base_;
  std::shared_ptr<const UnitaryGroup> perturbed_;
  std::vector<double> times_;
  std::vector<OperatorMatrix> elements_;
};

/// u_t = w_{h,k}(t)^* = e^{itk} e^{-ith}, a cocycle for sigma_h whose
/// perturbation is sigma_k.
CocycleFamily cocycle_from_generators(const OperatorMatrix& h, const OperatorMatrix& k,
                                      std::span<const double> times);

/// ||u_{t+s} - u_t sigma_{h,t}(u_s)||
double cocycle_residual(const CocycleFamily& c, double t, double s);

/// Distance of lambda_t = e^{-ith} u_t e^{itk} from the scalars,
/// ||lambda_t - (tr(lambda_t)/n) I||. Zero up to rounding when sigma_h is
/// Ad(u_t) composed with sigma_k, e.g. u_t = w_{h,k}(t).
double lambda_scalar_residual(const OperatorMatrix& h, const OperatorMatrix& k,
                              const CocycleFamily& u, double t);

/// max_x |h_x - k_x|
double diagonal_closeness(std::span<const double> h, std::span<const double> k);

}  // namespace roeflow
