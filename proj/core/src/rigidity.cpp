#include "roeflow/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "roeflow/errors.hpp"
#include "roeflow/parallel.hpp"
#include "roeflow/spectral.hpp"

namespace roeflow {

namespace {

constexpr double kTieTol = 1e-12;

}  // namespace

RigidityReport probe(const OperatorMatrix& u) {
  const auto n = static_cast<Eigen::Index>(u.size());
  const double residual =
      spectral_norm(u.matrix().adjoint() * u.matrix() - Matrix::Identity(n, n));
  if (residual > 1e-8) {
    std::ostringstream msg;
    msg << "probe: input is not unitary (||u^H u - I|| = " << residual << ")";
    throw InvalidArgument(msg.str());
  }
  RigidityReport report;
  report.point_map.resize(u.size());
  report.delta = 1.0;
  for (Eigen::Index x = 0; x < n; ++x) {
    Eigen::Index best = 0;
    double best_abs = std::abs(u.matrix()(0, x));
    for (Eigen::Index y = 1; y < n; ++y) {
      const double value = std::abs(u.matrix()(y, x));
      if (value > best_abs + kTieTol) {
        best = y;
        best_abs = value;
      }
    }
    report.point_map[x] = static_cast<std::size_t>(best);
    report.delta = std::min(report.delta, best_abs);
    report.displacement = std::max(report.displacement, u.space().distance(x, best));
  }
  return report;
}

std::vector<RigiditySample> flow_displacement_sweep(const OperatorMatrix& h,
                                                    std::span<const double> times,
                                                    unsigned threads) {
  const UnitaryGroup group(h);
  std::vector<RigiditySample> out(times.size());
  parallel_for(times.size(), threads, [&](std::size_t j) {
    out[j] = {times[j], probe(group.at(times[j]))};
  });
  return out;
}

}  // namespace roeflow
