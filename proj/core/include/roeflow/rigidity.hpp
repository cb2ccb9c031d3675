#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "roeflow/operator.hpp"

namespace roeflow {

/// The point map underlying a unitary u: f(x) = argmax_y |u_yx|.
struct RigidityReport {
  std::vector<std::size_t> point_map;
  double delta = 0.0;         // min_x max_y |u_yx|, in [n^{-1/2}, 1]
  double displacement = 0.0;  // max_x d(x, f(x))
};

/// Throws InvalidArgument unless ||u^H u - I|| <= 1e-8. Ties (within 1e-12)
/// go to the smallest index.
RigidityReport probe(const OperatorMatrix& u);

struct RigiditySample {
  double t = 0.0;
  RigidityReport report;
};

/// probe(e^{ith}) at each grid time.
std::vector<RigiditySample> flow_displacement_sweep(const OperatorMatrix& h,
                                                    std::span<const double> times,
                                                    unsigned threads = 1);

}  // namespace roeflow
