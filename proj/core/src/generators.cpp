#include "roeflow/generators.hpp"

#include "roeflow/errors.hpp"
#include "roeflow/spectral.hpp"

namespace roeflow {

std::vector<double> distance_function(const FiniteSpace& s, std::size_t origin, double scale) {
  if (origin >= s.size()) throw InvalidArgument("distance_function: origin out of range");
  std::vector<double> f(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) f[x] = scale * s.distance(x, origin);
  return f;
}

std::vector<double> random_function(std::size_t n, Rng& rng, double lo, double hi) {
  std::vector<double> f(n);
  for (auto& v : f) v = rng.uniform(lo, hi);
  return f;
}

OperatorMatrix random_hermitian_banded(const SpacePtr& space, double band, Rng& rng,
                                       double scale) {
  const auto n = space->size();
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    m(x, x) = scale * rng.uniform(-1.0, 1.0);
    for (std::size_t y = x + 1; y < n; ++y) {
      if (space->distance(x, y) > band) continue;
      const Complex v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      m(x, y) = scale * v;
      m(y, x) = scale * std::conj(v);
    }
  }
  return {space, std::move(m)};
}

OperatorMatrix random_complex(const SpacePtr& space, Rng& rng) {
  const auto n = space->size();
  Matrix m(n, n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) m(x, y) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  }
  return {space, std::move(m)};
}

OperatorMatrix random_unitary(const SpacePtr& space, Rng& rng) {
  return unitary_exp(random_hermitian_banded(space, space->diameter(), rng), 1.0);
}

}  // namespace roeflow
