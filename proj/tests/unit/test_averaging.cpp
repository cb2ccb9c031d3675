#include "doctest.h"
#include "test_support.hpp"

using namespace roeflow;
using namespace roeflow::testing;

TEST_CASE("SignVector") {
  CHECK(SignVector::at(3, 0).signs() == std::vector<int>{1, 1, 1});
  CHECK(SignVector::at(3, 1).signs() == std::vector<int>{1, 1, -1});
  CHECK(SignVector::at(3, 4).signs() == std::vector<int>{-1, 1, 1});
  CHECK(SignVector::at(3, 7).signs() == std::vector<int>{-1, -1, -1});
  CHECK_THROWS_AS(SignVector({1, 0, -1}), InvalidArgument);
  CHECK_THROWS_AS(SignVector::at(2, 4), InvalidArgument);
}

TEST_CASE("conjugate_by_sign examples") {
  Rng rng(1);
  const auto s = path(4);
  const auto a = random_complex(s, rng);
  CHECK(max_entry_diff(conjugate_by_sign(a, SignVector::at(4, 0)), a) == 0.0);

  const auto d = OperatorMatrix::diagonal(s, random_function(4, rng));
  for (std::uint64_t i = 0; i < 16; ++i) {
    CHECK(max_entry_diff(conjugate_by_sign(d, SignVector::at(4, i)), d) == 0.0);
  }

  const auto x = exchange(path(2), 0, 1);
  CHECK(max_entry_diff(conjugate_by_sign(x, SignVector({1, -1})), x * -1.0) == 0.0);

  const SignVector eps({1, -1, -1, 1});
  Matrix diag = Matrix::Zero(4, 4);
  for (std::size_t p = 0; p < 4; ++p) diag(p, p) = eps[p];
  CHECK(max_entry_diff(conjugate_by_sign(a, eps), a.with_matrix(diag * a.matrix() * diag)) == 0.0);
  CHECK_THROWS_AS(conjugate_by_sign(a, SignVector({1, 1})), InvalidArgument);
}

TEST_CASE("brute average of a constant family") {
  Rng rng(2);
  const auto s = cycle(6);
  const auto a = random_complex(s, rng);
  const auto avg = brute_average(s, [&](const SignVector&) { return a; });
  CHECK(max_entry_diff(avg, a) <= 1e-15);
}

TEST_CASE("sign-group average is the conditional expectation") {
  Rng rng(3);
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto s = path(n);
    const auto a = random_complex(s, rng);
    const auto avg = brute_average(s, [&](const SignVector& e) { return conjugate_by_sign(a, e); });
    CHECK(max_entry_diff(avg, expectation(a)) <= 1e-13);
    CHECK(max_entry_diff(sign_average(a), expectation(a)) <= 1e-13);
  }
  // the closed form takes over above the guard
  const auto big = random_complex(path(kSignAverageGuard + 2), rng);
  CHECK(max_entry_diff(sign_average(big), expectation(big)) == 0.0);
}

TEST_CASE("averaging preserves a propagation bound") {
  Rng rng(4);
  const auto s = path(8);
  const double r = 2.0;
  const auto avg = brute_average(s, [&](const SignVector& e) {
    Rng local(e.signs()[0] > 0 ? 5 : 6);
    return conjugate_by_sign(truncate(random_complex(s, local), r), e) * Complex(e[1], 0.0);
  });
  CHECK(propagation(avg, 0.0) <= r);
}

TEST_CASE("brute average size guard") {
  const auto s = path(kSignAverageGuard + 1);
  try {
    brute_average(s, [&](const SignVector&) { return OperatorMatrix::identity(s); });
    FAIL("expected SizeGuardError");
  } catch (const SizeGuardError& e) {
    CHECK(e.guard() == "sign_average");
  }
}

TEST_CASE("extraction with the truncation selector collapses to truncation") {
  Rng rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    const auto s = trial % 2 ? cycle(7) : path(8);
    const auto h = random_hermitian_banded(s, s->diameter(), rng);
    for (double r : {0.0, 1.0, 2.0}) {
      const auto report = extract_finite_prop(h, r);
      CHECK(max_entry_diff(report.h_prime, truncate(h, r)) <= 1e-12);
      CHECK(report.defect == doctest::Approx(operator_norm(h - truncate(h, r))).epsilon(1e-9));
      CHECK(report.propagation <= r);
      CHECK(report.diagonal_residual <= 1e-10);
      CHECK(report.defect <= report.max_remainder * (1.0 + 1e-10) + 1e-12);
    }
  }
}

TEST_CASE("extraction leaves diagonal operators alone") {
  Rng rng(8);
  const auto s = path(6);
  const auto h = OperatorMatrix::diagonal(s, random_function(6, rng));
  for (double r : {0.0, 3.0}) {
    const auto report = extract_finite_prop(h, r);
    CHECK(max_entry_diff(report.h_prime, h) == 0.0);
    CHECK(report.defect == 0.0);
  }
}

TEST_CASE("extraction defect for a single far pair") {
  const auto s = path(5);
  const double m = 0.75;
  Matrix entries = Matrix::Zero(5, 5);
  entries(0, 4) = Complex(0.0, m);
  entries(4, 0) = Complex(0.0, -m);
  entries(2, 2) = 1.0;
  const auto report = extract_finite_prop(OperatorMatrix(s, entries), 3.0);
  CHECK(report.defect == doctest::Approx(m).epsilon(1e-12));
  CHECK(report.propagation == 0.0);
}

TEST_CASE("extraction with a custom selector") {
  Rng rng(9);
  const auto s = cycle(6);
  const auto h = random_hermitian_banded(s, 3.0, rng);
  const Selector halve = [](const OperatorMatrix& m, double r) { return truncate(m, r) * 0.5; };
  const auto report = extract_finite_prop(h, 1.0, halve);
  CHECK(report.propagation <= 1.0);
  CHECK(report.defect <= report.max_remainder * (1.0 + 1e-10) + 1e-12);

  const Selector cheat = [](const OperatorMatrix& m, double) { return m; };
  CHECK_THROWS_AS(extract_finite_prop(h, 1.0, cheat), InvalidArgument);
  CHECK_THROWS_AS(extract_finite_prop(h, -1.0), InvalidArgument);
}
