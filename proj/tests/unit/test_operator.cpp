#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "doctest.h"
#include "test_support.hpp"

using namespace roeflow;
using namespace roeflow::testing;

TEST_CASE("OperatorMatrix validates shape and finiteness") {
  const auto s = path(3);
  CHECK_THROWS_AS(OperatorMatrix(s, Matrix::Zero(2, 2)), InvalidArgument);
  Matrix bad = Matrix::Zero(3, 3);
  bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(OperatorMatrix(s, bad), InvalidArgument);
  CHECK_THROWS_AS(OperatorMatrix::identity(s) + OperatorMatrix::identity(path(4)), InvalidArgument);
}

TEST_CASE("propagation") {
  const auto s = path(3);
  const double diag[] = {1.0, -2.0, 3.0};
  CHECK(propagation(OperatorMatrix::diagonal(s, diag)) == 0.0);
  CHECK(propagation(OperatorMatrix::zero(s)) == 0.0);
  CHECK(propagation(OperatorMatrix(s, Matrix::Ones(3, 3))) == 2.0);

  const auto p5 = path(5);
  const PartialTranslation shift(p5, {{0, 3}, {1, 2}});
  CHECK(propagation(to_matrix(shift)) == 3.0);

  // entries at or below the cutoff do not count
  Matrix m = Matrix::Identity(3, 3);
  m(0, 2) = 1e-15;
  CHECK(propagation(OperatorMatrix(s, m)) == 0.0);
  CHECK(propagation(OperatorMatrix(s, m), 0.0) == 2.0);
}

TEST_CASE("expectation") {
  const auto s = path(2);
  const double diag[] = {4.0, -1.0};
  const auto d = OperatorMatrix::diagonal(s, diag);
  CHECK(max_entry_diff(expectation(d), d) == 0.0);
  CHECK(max_entry_diff(expectation(exchange(s, 0, 1)), OperatorMatrix::zero(s)) == 0.0);

  Rng rng(11);
  const auto a = random_hermitian_banded(path(4), 3.0, rng);
  const auto e = expectation(a);
  CHECK(max_entry_diff(expectation(e), e) == 0.0);
  for (std::size_t x = 0; x < 4; ++x) CHECK(e(x, x) == a(x, x));
  CHECK(offdiag_sup(e) == 0.0);
}

TEST_CASE("truncate extracts exact bands") {
  const auto s = path(6);
  // entry (x, y) tagged with 10 * d(x, y) + 1 so the surviving band is visible
  Matrix m(6, 6);
  for (int x = 0; x < 6; ++x) {
    for (int y = 0; y < 6; ++y) m(x, y) = 10.0 * std::abs(x - y) + 1.0;
  }
  const OperatorMatrix a(s, m);
  CHECK(max_entry_diff(truncate(a, s->diameter()), a) == 0.0);
  CHECK(max_entry_diff(truncate(a, 0.0), expectation(a)) == 0.0);
  for (double r : {1.0, 2.0, 3.5}) {
    const auto t = truncate(a, r);
    CHECK(propagation(t) <= r);
    for (int x = 0; x < 6; ++x) {
      for (int y = 0; y < 6; ++y) {
        const bool kept = std::abs(x - y) <= r;
        CHECK(t(x, y) == (kept ? m(x, y) : Complex{}));
      }
    }
  }
}

TEST_CASE("truncate composes by minimum radius and its residual decreases") {
  Rng rng(5);
  const auto s = cycle(8);
  const auto a = random_complex(s, rng);
  for (double r1 : s->distance_set()) {
    for (double r2 : s->distance_set()) {
      CHECK(max_entry_diff(truncate(truncate(a, r1), r2), truncate(a, std::min(r1, r2))) == 0.0);
    }
  }
  double previous = std::numeric_limits<double>::infinity();
  for (double r : s->distance_set()) {
    const double residual = operator_norm(a - truncate(a, r));
    CHECK(residual <= previous + 1e-12);
    previous = residual;
  }
  CHECK(previous == doctest::Approx(0.0));
}

TEST_CASE("operator_norm") {
  const auto s = path(5);
  CHECK(operator_norm(OperatorMatrix::identity(s)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(operator_norm(OperatorMatrix(s, Matrix::Constant(5, 5, 0.2))) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(operator_norm(OperatorMatrix::zero(s)) == 0.0);

  // (1/|X|) [[0, -1^T], [1, 0]] on an evenly split block of size 6
  Matrix half = Matrix::Zero(6, 6);
  for (int i = 0; i < 3; ++i) {
    for (int j = 3; j < 6; ++j) {
      half(i, j) = -1.0 / 6.0;
      half(j, i) = 1.0 / 6.0;
    }
  }
  CHECK(std::abs(operator_norm(OperatorMatrix(path(6), half)) - 0.5) <= 1e-12);
}

TEST_CASE("operator_norm agrees with an SVD on random inputs") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_complex(cycle(3 + trial % 9), rng);
    const Eigen::JacobiSVD<Matrix> svd(a.matrix());
    const double expected = svd.singularValues()(0);
    CHECK(std::abs(operator_norm(a) - expected) <= 1e-10 * expected);
  }
}

TEST_CASE("schur_bound") {
  const auto s = path(7);
  const double diag[] = {1.0, -3.0, 2.0, 0.5, 0.0, 1.0, 2.5};
  const auto d = OperatorMatrix::diagonal(s, diag);
  CHECK(schur_bound(d, 0.0) == doctest::Approx(operator_norm(d)));

  const PartialTranslation f(s, {{0, 2}, {3, 5}, {6, 4}});
  CHECK(schur_bound(to_matrix(f), 2.0) >= 1.0);
  CHECK_THROWS_AS(schur_bound(to_matrix(f), 1.0), InvalidArgument);

  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto space = trial % 2 ? cycle(10) : path(9);
    const double band = static_cast<double>(trial % 4);
    const auto a = random_hermitian_banded(space, band, rng);
    CHECK(schur_bound(a, band) >= operator_norm(a) * (1.0 - 1e-12));
  }
}

TEST_CASE("offdiag_sup") {
  const auto s = path(3);
  const double diag[] = {7.0, 8.0, 9.0};
  CHECK(offdiag_sup(OperatorMatrix::diagonal(s, diag)) == 0.0);
  CHECK(offdiag_sup(exchange(s, 0, 2)) == 1.0);
  Matrix m = Matrix::Identity(3, 3) * 100.0;
  m(1, 2) = Complex(0.0, 3.0);
  CHECK(offdiag_sup(OperatorMatrix(s, m)) == 3.0);
  CHECK(offdiag_sup(OperatorMatrix::identity(path(1))) == 0.0);
}

TEST_CASE("higson_commutator_profile") {
  const auto s = path(2);
  const double constant[] = {2.0, 2.0};
  CHECK(higson_commutator_profile(exchange(s, 0, 1), constant).commutator_norm == 0.0);
  const double ramp[] = {0.0, 1.0};
  const double diag[] = {3.0, -1.0};
  CHECK(higson_commutator_profile(OperatorMatrix::diagonal(s, diag), ramp).commutator_norm == 0.0);
  // [X, diag(0,1)] = [[0, 1], [-1, 0]], norm 1
  CHECK(higson_commutator_profile(exchange(s, 0, 1), ramp).commutator_norm ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("higson commutator entrywise identity on random instances") {
  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const auto s = cycle(4 + trial % 7);
    const auto a = random_complex(s, rng);
    const auto f = random_function(s->size(), rng, -5.0, 5.0);
    CHECK(higson_commutator_profile(a, f).entrywise_residual <= 1e-12);
  }
}

TEST_CASE("propagation is subadditive on graph metrics") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = trial % 2 ? cycle(9) : path(8);
    const auto a = random_hermitian_banded(s, trial % 3, rng);
    const auto b = random_hermitian_banded(s, (trial / 3) % 3, rng);
    CHECK(propagation(a * b, 0.0) <= propagation(a, 0.0) + propagation(b, 0.0));
  }
}

TEST_CASE("matrix text format round-trips bit-exactly") {
  Rng rng(8);
  const auto s = cycle(5);
  Matrix m = random_complex(s, rng).matrix();
  m(0, 1) = 0.0;
  m(2, 3) = Complex(1.0 / 3.0, -0.0);
  m(4, 4) = Complex(5e-324, 1.7976931348623157e308);
  const OperatorMatrix a(s, m);
  std::stringstream io;
  write_matrix(io, a);
  const auto back = read_matrix(io, s);
  CHECK((back.matrix().array() == a.matrix().array()).all());

  std::istringstream wrong_size("n 3\n0 0 1 0\n");
  CHECK_THROWS_AS(read_matrix(wrong_size, s), InvalidArgument);
  std::istringstream bad_index("n 5\n9 0 1 0\n");
  CHECK_THROWS_AS(read_matrix(bad_index, s), InvalidArgument);
}
