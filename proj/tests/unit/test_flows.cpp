#include <memory>

#include "doctest.h"
#include "test_support.hpp"

using namespace roeflow;
using namespace roeflow::testing;

namespace {

const Complex kI(0.0, 1.0);

OperatorMatrix random_hermitian(const SpacePtr& s, Rng& rng, double scale = 1.0) {
  return random_hermitian_banded(s, s->diameter(), rng, scale);
}

}  // namespace

TEST_CASE("flow_apply basics") {
  Rng rng(1);
  const auto s = cycle(6);
  const auto h = random_hermitian(s, rng);
  const auto a = random_complex(s, rng);
  CHECK(max_entry_diff(flow_apply(h, 0.0, a), a) == 0.0);
  for (double t : {-1.5, 0.3, 2.0}) {
    CHECK(std::abs(operator_norm(flow_apply(h, t, a)) - operator_norm(a)) <= 1e-9);
  }
  // Hermitian inputs keep their spectrum
  const auto b = random_hermitian(s, rng);
  const auto before = hermitian_eig(b).values;
  const auto after = hermitian_eig(flow_apply(h, 0.8, b)).values;
  CHECK((before - after).cwiseAbs().maxCoeff() <= 1e-10);

  // a flow fixes functions of its own generator
  const auto p = OperatorMatrix(path(4), Matrix::Constant(4, 4, 0.25));
  CHECK(max_entry_diff(flow_apply(p * 3.0, 1.1, p), p) <= 1e-14);
}

TEST_CASE("flow of a diagonal generator on a partial translation") {
  Rng rng(2);
  const auto s = path(6);
  const auto values = random_function(6, rng, -3.0, 3.0);
  const auto h = OperatorMatrix::diagonal(s, values);
  const PartialTranslation f(s, {{0, 2}, {1, 0}, {3, 5}, {4, 4}});
  for (double t : {-2.0, 0.25, 1.0}) {
    const auto moved = flow_apply(h, t, to_matrix(f));
    Matrix expected = Matrix::Zero(6, 6);
    for (const auto& [x, y] : f.pairs()) expected(y, x) = std::polar(1.0, t * (values[y] - values[x]));
    CHECK((moved.matrix() - expected).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("flow homomorphism and group law") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = cycle(3 + trial % 6);
    const auto h = random_hermitian(s, rng);
    const auto a = random_complex(s, rng);
    const auto b = random_complex(s, rng);
    const double t = rng.uniform(-2.0, 2.0), r = rng.uniform(-2.0, 2.0);
    const double scale = operator_norm(a) * operator_norm(b);
    CHECK(operator_norm(flow_apply(h, t, a * b) - flow_apply(h, t, a) * flow_apply(h, t, b)) <=
          1e-9 * scale);
    CHECK(operator_norm(flow_apply(h, t + r, a) - flow_apply(h, t, flow_apply(h, r, a))) <=
          1e-9 * operator_norm(a));
  }
}

TEST_CASE("flow_derivative_residual") {
  Rng rng(4);
  const auto s = cycle(5);
  const PartialTranslation f(s, {{0, 1}, {1, 2}, {3, 3}});
  CHECK(flow_derivative_residual(OperatorMatrix::zero(s), f, 1e-3) == 0.0);

  const auto two = path(2);
  const double h2[] = {0.0, 5.0};
  const PartialTranslation swap(two, {{0, 1}, {1, 0}});
  for (double delta : {1e-5, 1e-3, 0.1}) {
    const double closed = std::abs((std::polar(1.0, 5.0 * delta) - 1.0) / delta - 5.0 * kI);
    const double residual = flow_derivative_residual(OperatorMatrix::diagonal(two, h2), swap, delta);
    CHECK(residual == doctest::Approx(closed).epsilon(1e-6));
    if (delta == 1e-5) CHECK(residual <= 1e-3);
  }

  const auto h = random_hermitian(s, rng);
  const double r1 = flow_derivative_residual(h, f, 1e-3);
  const double r2 = flow_derivative_residual(h, f, 5e-4);
  CHECK(r1 / r2 == doctest::Approx(2.0).epsilon(0.02));
  CHECK_THROWS_AS(flow_derivative_residual(h, f, 0.0), InvalidArgument);
}

TEST_CASE("flow_displacement_norms matches direct evaluation") {
  Rng rng(5);
  const auto s = path(5);
  const auto h = random_hermitian(s, rng);
  const auto a = random_complex(s, rng);
  const UnitaryGroup g(h);
  const auto times = linspace(-1.0, 1.0, 9);
  const auto norms = flow_displacement_norms(g, a, times);
  REQUIRE(norms.size() == times.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    CHECK(norms[j] == doctest::Approx(operator_norm(flow_apply(h, times[j], a) - a)).epsilon(1e-9));
  }
  CHECK(norms[4] == 0.0);
}

TEST_CASE("w_map cases") {
  Rng rng(6);
  const auto s = cycle(5);
  const auto h = random_hermitian(s, rng);
  for (double t : {-1.0, 0.5, 3.0}) {
    CHECK(operator_norm(w_map(h, h, t) - OperatorMatrix::identity(s)) <= 1e-12);
  }

  // commuting generators: functions of the same Hermitian matrix
  const auto k = h * h * 0.5 + h * 2.0;
  for (double t : {-0.7, 1.3}) {
    CHECK(operator_norm(w_map(h, k, t) - unitary_exp(h - k, t)) <= 1e-10);
  }

  const auto hv = random_function(5, rng, -2.0, 2.0);
  const auto kv = random_function(5, rng, -2.0, 2.0);
  const auto w = w_map(OperatorMatrix::diagonal(s, hv), OperatorMatrix::diagonal(s, kv), 0.9);
  for (std::size_t x = 0; x < 5; ++x) {
    CHECK(std::abs(w(x, x) - std::polar(1.0, 0.9 * (hv[x] - kv[x]))) <= 1e-14);
  }
  CHECK(offdiag_sup(w) == 0.0);
}

TEST_CASE("lipschitz_audit") {
  Rng rng(7);
  const auto s = cycle(6);
  const auto times = linspace(-1.0, 1.0, 64);

  const auto h = random_hermitian(s, rng);
  const auto same = lipschitz_audit(h, h, times);
  CHECK(same.bound == 0.0);
  CHECK(same.max_ratio <= 1e-10);

  const double hv[] = {0.0, 5.0, 1.0, 2.0, 3.0, 4.0};
  const auto diag = lipschitz_audit(OperatorMatrix::diagonal(s, hv), OperatorMatrix::zero(s), times);
  CHECK(diag.bound == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(diag.max_ratio <= 5.0 * (1.0 + 1e-8));
  const double fine[] = {-1e-4, 0.0, 1e-4};
  const auto tight = lipschitz_audit(OperatorMatrix::diagonal(s, hv), OperatorMatrix::zero(s), fine);
  CHECK(tight.max_ratio == doctest::Approx(5.0).epsilon(1e-6));

  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_hermitian(s, rng);
    const auto b = random_hermitian(s, rng);
    const auto report = lipschitz_audit(a, b, times);
    CHECK(report.max_ratio <= report.bound * (1.0 + 1e-8) + 1e-10);
    CHECK(report.max_ratio > 0.5 * report.bound);
  }

  const double one[] = {0.0};
  CHECK_THROWS_AS(lipschitz_audit(h, h, one), InvalidArgument);
}

TEST_CASE("cocycle from generators satisfies the cocycle identity") {
  Rng rng(8);
  const auto s = cycle(6);
  const auto h = random_hermitian(s, rng);
  const auto k = random_hermitian(s, rng);
  const auto times = linspace(-1.0, 1.0, 9);
  const auto c = cocycle_from_generators(h, k, times);
  REQUIRE(c.elements().size() == 9);
  CHECK(operator_norm(c.at(0.0) - OperatorMatrix::identity(s)) <= 1e-12);
  CHECK(cocycle_residual(c, 0.0, 0.0) <= 1e-12);
  CHECK(cocycle_residual(c, 0.3, 0.7) <= 1e-9);
  for (double t : times) {
    for (double r : times) CHECK(cocycle_residual(c, t, r) <= 1e-9);
  }

  const auto trivial = cocycle_from_generators(h, h, times);
  for (const auto& u : trivial.elements()) {
    CHECK(operator_norm(u - OperatorMatrix::identity(s)) <= 1e-12);
  }
}

TEST_CASE("corrupted cocycle is detected") {
  Rng rng(9);
  const auto s = cycle(5);
  const auto h = random_hermitian(s, rng);
  const auto k = random_hermitian(s, rng);
  const double times[] = {0.0, 0.25, 0.5, 0.75};
  const auto c = cocycle_from_generators(h, k, times);
  const auto broken = c.with_element(0.5, OperatorMatrix::identity(s));
  CHECK(cocycle_residual(broken, 0.5, 0.25) > 1e-3);
  CHECK(cocycle_residual(c, 0.5, 0.25) <= 1e-9);

  Matrix not_unitary = Matrix::Identity(5, 5) * 2.0;
  CHECK_THROWS_AS(c.with_element(0.5, OperatorMatrix(s, not_unitary)), InvalidArgument);
}

TEST_CASE("cocycle family without generators refuses off-grid times") {
  Rng rng(10);
  const auto s = path(3);
  auto base = std::make_shared<const UnitaryGroup>(random_hermitian(s, rng));
  const std::vector<double> times{0.0, 1.0};
  const std::vector<OperatorMatrix> elements(2, OperatorMatrix::identity(s));
  const CocycleFamily c(base, times, elements);
  CHECK(max_entry_diff(c.at(1.0), OperatorMatrix::identity(s)) == 0.0);
  CHECK_THROWS_AS(c.at(0.5), InvalidArgument);
  CHECK_THROWS_AS(CocycleFamily(base, times, {OperatorMatrix::identity(s)}), InvalidArgument);
}

TEST_CASE("lambda scalar residual") {
  Rng rng(11);
  const auto s = cycle(5);
  const auto h = random_hermitian(s, rng);
  const auto k = random_hermitian(s, rng);
  const auto times = linspace(-1.0, 1.0, 5);

  // u_t = w_{h,k}(t) intertwines: lambda_t = e^{-ith} e^{ith} e^{-itk} e^{itk} = I
  const auto u = cocycle_from_generators(k, h, times);
  for (double t : times) CHECK(lambda_scalar_residual(h, k, u, t) <= 1e-10);

  std::vector<OperatorMatrix> phased;
  for (std::size_t j = 0; j < times.size(); ++j) {
    phased.push_back(u.elements()[j] * std::polar(1.0, 0.7 * times[j] + 0.2));
  }
  const CocycleFamily with_phase(std::make_shared<const UnitaryGroup>(h),
                                 std::vector<double>(times.begin(), times.end()), phased);
  for (double t : times) CHECK(lambda_scalar_residual(h, k, with_phase, t) <= 1e-10);

  std::vector<OperatorMatrix> arbitrary;
  for (std::size_t j = 0; j < times.size(); ++j) arbitrary.push_back(random_unitary(s, rng));
  const CocycleFamily generic(std::make_shared<const UnitaryGroup>(h),
                              std::vector<double>(times.begin(), times.end()), arbitrary);
  CHECK(lambda_scalar_residual(h, k, generic, 0.5) > 0.1);
}

TEST_CASE("diagonal_closeness") {
  Rng rng(12);
  const auto s = cycle(7);
  const auto h = distance_function(*s, 0);
  CHECK(diagonal_closeness(h, h) == 0.0);
  std::vector<double> shifted(h);
  for (double& v : shifted) v += 3.0;
  CHECK(diagonal_closeness(h, shifted) == 3.0);

  const auto a = random_function(7, rng);
  const auto b = random_function(7, rng);
  std::vector<double> diff(7);
  for (std::size_t x = 0; x < 7; ++x) diff[x] = a[x] - b[x];
  CHECK(diagonal_closeness(a, b) ==
        doctest::Approx(operator_norm(OperatorMatrix::diagonal(s, diff))).epsilon(1e-12));
  CHECK_THROWS_AS(diagonal_closeness(a, std::vector<double>(3)), InvalidArgument);
}
