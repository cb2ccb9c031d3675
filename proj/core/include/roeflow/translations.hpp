#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "roeflow/operator.hpp"
#include "roeflow/space.hpp"

namespace roeflow {

/// Default cap on the number of points for exhaustive translation searches;
/// the count of partial bijections grows superexponentially.
inline constexpr std::size_t kTranslationGuard = 10;

/// An injective partial map f on the points of a space, given as
/// (x, f(x)) pairs sorted by source.
class PartialTranslation {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;

  PartialTranslation(SpacePtr space, std::vector<Pair> pairs);

  const FiniteSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  const std::vector<Pair>& pairs() const noexcept { return pairs_; }
  bool empty() const noexcept { return pairs_.empty(); }

  /// max d(x, f(x)) over the domain, 0 when empty.
  double displacement() const noexcept { return displacement_; }

  PartialTranslation inverse() const;

 private:
  SpacePtr space_;
  std::vector<Pair> pairs_;
  double displacement_ = 0.0;
};

/// v_f: entry (f(x), x) = 1 for every pair.
OperatorMatrix to_matrix(const PartialTranslation& f);

/// Streams every partial bijection with displacement <= r exactly once,
/// starting with the empty translation. Throws SizeGuardError
/// ("translation_enumeration") when the space has more than max_points points.
class RTranslationStream {
 public:
  RTranslationStream(SpacePtr space, double r, std::size_t max_points = kTranslationGuard);

  std::optional<PartialTranslation> next();

 private:
  bool advance();
  PartialTranslation current() const;

  SpacePtr space_;
  // candidates_[x][0] is the "unmapped" marker; the rest are targets within r.
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::size_t> position_;
  std::vector<char> used_;
  bool started_ = false;
  bool done_ = false;
};

/// Callback form of the stream; visits the same sequence.
void for_each_r_translation(const SpacePtr& space, double r,
                            const std::function<void(const PartialTranslation&)>& visit,
                            std::size_t max_points = kTranslationGuard);

enum class CoarsenessMode { exact, heuristic };

/// sup over partial r-translations f of ||[h, v_f]||. Exact mode enumerates
/// all of them (size guarded); heuristic mode returns a lower bound from the
/// single-pair translations and a greedy matching.
double coarseness_modulus(const OperatorMatrix& h, double r, CoarsenessMode mode,
                          std::size_t max_points = kTranslationGuard);

}  // namespace roeflow
