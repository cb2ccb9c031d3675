#include "roeflow/translations.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "roeflow/errors.hpp"
#include "roeflow/spectral.hpp"

namespace roeflow {

namespace {

constexpr auto kUnmapped = std::numeric_limits<std::size_t>::max();

void check_guard(const FiniteSpace& s, std::size_t max_points) {
  if (s.size() > max_points) {
    throw SizeGuardError("translation_enumeration",
                         "translation enumeration refused: " + std::to_string(s.size()) +
                             " points exceeds guard of " + std::to_string(max_points));
  }
}

// ||[h, v_f]|| with v_f given by its pairs, without building the operator.
double commutator_norm(const Matrix& h, const std::vector<PartialTranslation::Pair>& pairs) {
  const auto n = h.rows();
  Matrix v = Matrix::Zero(n, n);
  for (const auto& [x, fx] : pairs) v(fx, x) = 1.0;
  return spectral_norm(h * v - v * h);
}

}  // namespace

PartialTranslation::PartialTranslation(SpacePtr space, std::vector<Pair> pairs)
    : space_(std::move(space)), pairs_(std::move(pairs)) {
  const auto n = space_->size();
  std::sort(pairs_.begin(), pairs_.end());
  std::vector<char> seen_source(n, 0), seen_target(n, 0);
  for (const auto& [x, fx] : pairs_) {
    if (x >= n || fx >= n) throw InvalidArgument("PartialTranslation: point out of range");
    if (seen_source[x]) {
      throw InvalidArgument("PartialTranslation: source " + std::to_string(x) + " repeated");
    }
    if (seen_target[fx]) {
      throw InvalidArgument("PartialTranslation: target " + std::to_string(fx) + " repeated");
    }
    seen_source[x] = seen_target[fx] = 1;
    displacement_ = std::max(displacement_, space_->distance(x, fx));
  }
}

PartialTranslation PartialTranslation::inverse() const {
  std::vector<Pair> flipped;
  flipped.reserve(pairs_.size());
  for (const auto& [x, fx] : pairs_) flipped.emplace_back(fx, x);
  return {space_, std::move(flipped)};
}

OperatorMatrix to_matrix(const PartialTranslation& f) {
  const auto n = f.space().size();
  Matrix v = Matrix::Zero(n, n);
  for (const auto& [x, fx] : f.pairs()) v(fx, x) = 1.0;
  return {f.space_ptr(), std::move(v)};
}

RTranslationStream::RTranslationStream(SpacePtr space, double r, std::size_t max_points)
    : space_(std::move(space)) {
  check_guard(*space_, max_points);
  const auto n = space_->size();
  candidates_.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    candidates_[x].push_back(kUnmapped);
    for (std::size_t y = 0; y < n; ++y) {
      if (space_->distance(x, y) <= r) candidates_[x].push_back(y);
    }
  }
  position_.assign(n, 0);
  used_.assign(n, 0);
}

// Odometer over per-point choices, last point fastest. Points after the one
// being advanced are always reset to unmapped, so every state is a valid
// partial bijection and each is reached exactly once.
bool RTranslationStream::advance() {
  for (std::size_t i = position_.size(); i-- > 0;) {
    auto& pos = position_[i];
    if (candidates_[i][pos] != kUnmapped) used_[candidates_[i][pos]] = 0;
    for (++pos; pos < candidates_[i].size(); ++pos) {
      const auto target = candidates_[i][pos];
      if (!used_[target]) {
        used_[target] = 1;
        return true;
      }
    }
    pos = 0;
  }
  return false;
}

PartialTranslation RTranslationStream::current() const {
  std::vector<PartialTranslation::Pair> pairs;
  for (std::size_t x = 0; x < position_.size(); ++x) {
    const auto target = candidates_[x][position_[x]];
    if (target != kUnmapped) pairs.emplace_back(x, target);
  }
  return {space_, std::move(pairs)};
}

std::optional<PartialTranslation> RTranslationStream::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return current();
  }
  if (!advance()) {
    done_ = true;
    return std::nullopt;
  }
  return current();
}

void for_each_r_translation(const SpacePtr& space, double r,
                            const std::function<void(const PartialTranslation&)>& visit,
                            std::size_t max_points) {
  RTranslationStream stream(space, r, max_points);
  while (auto f = stream.next()) visit(*f);
}

double coarseness_modulus(const OperatorMatrix& h, double r, CoarsenessMode mode,
                          std::size_t max_points) {
  const auto& s = h.space();
  const auto& hm = h.matrix();
  const auto n = s.size();

  if (mode == CoarsenessMode::exact) {
    check_guard(s, max_points);
    double best = 0.0;
    for_each_r_translation(h.space_ptr(), r, [&](const PartialTranslation& f) {
      if (!f.empty()) best = std::max(best, commutator_norm(hm, f.pairs()));
    }, max_points);
    return best;
  }

  // (i) single-pair translations
  double best = 0.0;
  std::vector<PartialTranslation::Pair> admissible;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (s.distance(x, y) <= r) {
        admissible.emplace_back(x, y);
        best = std::max(best, commutator_norm(hm, {{x, y}}));
      }
    }
  }

  // (ii) greedy matching: add the admissible pair that most increases the norm
  std::vector<PartialTranslation::Pair> matching;
  std::vector<char> source_used(n, 0), target_used(n, 0);
  double current = 0.0;
  for (;;) {
    double gain_value = current;
    std::size_t gain_index = admissible.size();
    for (std::size_t k = 0; k < admissible.size(); ++k) {
      const auto [x, y] = admissible[k];
      if (source_used[x] || target_used[y]) continue;
      matching.emplace_back(x, y);
      const double value = commutator_norm(hm, matching);
      matching.pop_back();
      if (value > gain_value) {
        gain_value = value;
        gain_index = k;
      }
    }
    if (gain_index == admissible.size()) break;
    const auto [x, y] = admissible[gain_index];
    matching.emplace_back(x, y);
    source_used[x] = target_used[y] = 1;
    current = gain_value;
  }
  return std::max(best, current);
}

}  // namespace roeflow
