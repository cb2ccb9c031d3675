#pragma once

#include <cstddef>
#include <vector>

#include "roeflow/operator.hpp"
#include "roeflow/rng.hpp"

namespace roeflow {

// Seeded operator generators shared by the experiment runner and the tests.

/// h_x = scale * d(x, origin)
std::vector<double> distance_function(const FiniteSpace& s, std::size_t origin, double scale = 1.0);

std::vector<double> random_function(std::size_t n, Rng& rng, double lo = -1.0, double hi = 1.0);

/// Hermitian matrix with entries uniform in the unit square (real diagonal in
/// [-1, 1]) on the pairs at distance <= band, scaled by `scale`.
OperatorMatrix random_hermitian_banded(const SpacePtr& space, double band, Rng& rng,
                                       double scale = 1.0);

/// General complex matrix with entries uniform in [-1, 1] + i[-1, 1].
OperatorMatrix random_complex(const SpacePtr& space, Rng& rng);

/// e^{ih} for a random Hermitian h of unit-order norm.
OperatorMatrix random_unitary(const SpacePtr& space, Rng& rng);

}  // namespace roeflow
