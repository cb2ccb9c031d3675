#include <sstream>

#include "doctest.h"
#include "test_support.hpp"

using namespace roeflow;
using namespace roeflow::testing;

namespace {

OperatorMatrix rank_one(const SpacePtr& s, std::size_t x, std::size_t y) {
  Matrix m = Matrix::Zero(s->size(), s->size());
  m(y, x) = 1.0;
  return {s, std::move(m)};
}

double truncation_residual(const OperatorMatrix& a, double r) {
  return operator_norm(a - truncate(a, r));
}

}  // namespace

TEST_CASE("ql_value examples") {
  const auto s = path(4);  // d(0, 3) = 3
  const auto e = rank_one(s, 0, 3);
  for (auto mode : {QLMode::exact, QLMode::lower}) {
    CHECK(ql_value(e, 2.0, mode) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ql_value(e, 3.0, mode) == 0.0);
  }

  Rng rng(4);
  const auto banded = random_hermitian_banded(path(7), 2.0, rng);
  for (double r : {2.0, 3.0, 6.0}) {
    CHECK(ql_value(banded, r, QLMode::exact) == 0.0);
    CHECK(ql_value(banded, r, QLMode::lower) == 0.0);
  }
}

TEST_CASE("quasi-locality sandwich: lower <= exact <= truncation residual") {
  Rng rng(2024);
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto s = n % 2 ? path(n) : cycle(std::max<std::size_t>(n, 3));
    const auto a = random_complex(s, rng);
    for (double r : s->distance_set()) {
      const double exact = ql_value(a, r, QLMode::exact);
      const double lower = ql_value(a, r, QLMode::lower);
      CHECK(lower <= exact * (1.0 + 1e-12) + 1e-14);
      CHECK(exact <= truncation_residual(a, r) * (1.0 + 1e-10) + 1e-12);
    }
  }
}

TEST_CASE("exact quasi-locality is deterministic across thread counts") {
  Rng rng(6);
  const auto a = random_complex(cycle(9), rng);
  const double one = ql_value(a, 1.0, QLMode::exact, kQuasiLocalityGuard, 1);
  CHECK(ql_value(a, 1.0, QLMode::exact, kQuasiLocalityGuard, 3) == one);
  CHECK(ql_value(a, 1.0, QLMode::exact, kQuasiLocalityGuard, 8) == one);
}

TEST_CASE("ql_profile is nonincreasing and defaults to the distance set") {
  Rng rng(12);
  const auto s = path(8);
  const auto a = random_complex(s, rng);
  for (auto mode : {QLMode::exact, QLMode::lower}) {
    const auto profile = ql_profile(a, mode);
    CHECK(profile.mode == mode);
    CHECK(profile.radii == s->distance_set());
    REQUIRE(profile.values.size() == profile.radii.size());
    for (std::size_t j = 1; j < profile.values.size(); ++j) {
      CHECK(profile.values[j] <= profile.values[j - 1] * (1.0 + 1e-12) + 1e-14);
    }
    CHECK(profile.values.back() == 0.0);
  }
}

TEST_CASE("ql exact mode size guard") {
  const auto s = path(kQuasiLocalityGuard + 1);
  const auto a = OperatorMatrix::identity(s);
  try {
    ql_value(a, 1.0, QLMode::exact);
    FAIL("expected SizeGuardError");
  } catch (const SizeGuardError& e) {
    CHECK(e.guard() == "ql_exact");
  }
  CHECK(ql_value(a, 1.0, QLMode::lower) == 0.0);
}

TEST_CASE("write_profile_csv") {
  QLProfile p;
  p.radii = {0.0, 1.0};
  p.values = {0.1, 0.0};
  p.mode = QLMode::exact;
  std::ostringstream out;
  write_profile_csv(out, std::span<const QLProfile>(&p, 1));
  CHECK(out.str() ==
        "radius,value,mode\n"
        "0,0.10000000000000001,exact\n"
        "1,0,exact\n");
  CHECK(std::string(to_string(QLMode::lower)) == "lower");
}

TEST_CASE("eps_r_certificate examples") {
  Rng rng(41);
  const auto s = path(6);
  const auto d = OperatorMatrix::diagonal(s, random_function(6, rng));
  for (double eps : {1e-6, 0.5, 10.0}) CHECK(eps_r_certificate(d, eps) == 0.0);

  // band-1 part plus one entry of modulus 0.5 at distance 4
  Matrix m = truncate(random_hermitian_banded(s, 1.0, rng), 1.0).matrix();
  m(0, 4) = 0.5;
  const OperatorMatrix a(s, m);
  CHECK(eps_r_certificate(a, 0.6) == 1.0);
  CHECK(eps_r_certificate(a, 0.4) == 4.0);

  const auto dense = random_complex(s, rng);
  const double eps = operator_norm(dense);
  const double expected = truncation_residual(dense, 0.0) <= eps ? 0.0 : 1.0;
  CHECK(eps_r_certificate(dense, eps) <= expected);
  CHECK(truncation_residual(dense, eps_r_certificate(dense, eps)) <= eps);

  CHECK_THROWS_AS(eps_r_certificate(dense, 0.0), InvalidArgument);
}

TEST_CASE("equi_approx_profile") {
  const auto s = path(6);
  std::vector<OperatorMatrix> projections;
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    std::vector<double> indicator(6);
    for (std::size_t x = 0; x < 6; ++x) indicator[x] = (mask >> x) & 1U;
    projections.push_back(OperatorMatrix::diagonal(s, indicator));
  }
  CHECK(equi_approx_profile(projections, 1e-3) == 0.0);

  std::vector<OperatorMatrix> translations;
  for_each_r_translation(s, 2.0, [&](const PartialTranslation& f) {
    if (translations.size() < 400) translations.push_back(to_matrix(f));
  });
  CHECK(equi_approx_profile(translations, 1e-3) <= 2.0);

  CHECK_THROWS_AS(equi_approx_profile(std::vector<OperatorMatrix>{}, 0.1), InvalidArgument);
}
