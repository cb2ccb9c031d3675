#include "roeflow/operator.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "roeflow/errors.hpp"
#include "roeflow/spectral.hpp"

namespace roeflow {

OperatorMatrix::OperatorMatrix(SpacePtr space, Matrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  if (!space_) throw InvalidArgument("OperatorMatrix: null space");
  const auto n = static_cast<Eigen::Index>(space_->size());
  if (entries_.rows() != n || entries_.cols() != n) {
    throw InvalidArgument("OperatorMatrix: expected " + std::to_string(n) + "x" +
                          std::to_string(n) + " entries, got " +
                          std::to_string(entries_.rows()) + "x" +
                          std::to_string(entries_.cols()));
  }
  if (!entries_.allFinite()) throw InvalidArgument("OperatorMatrix: non-finite entry");
}

OperatorMatrix OperatorMatrix::zero(SpacePtr space) {
  const auto n = static_cast<Eigen::Index>(space->size());
  return {std::move(space), Matrix::Zero(n, n)};
}

OperatorMatrix OperatorMatrix::identity(SpacePtr space) {
  const auto n = static_cast<Eigen::Index>(space->size());
  return {std::move(space), Matrix::Identity(n, n)};
}

OperatorMatrix OperatorMatrix::diagonal(SpacePtr space, std::span<const double> values) {
  if (values.size() != space->size()) {
    throw InvalidArgument("OperatorMatrix::diagonal: value count does not match space");
  }
  Matrix m = Matrix::Zero(values.size(), values.size());
  for (std::size_t x = 0; x < values.size(); ++x) m(x, x) = values[x];
  return {std::move(space), std::move(m)};
}

OperatorMatrix OperatorMatrix::adjoint() const { return {space_, entries_.adjoint()}; }

void OperatorMatrix::require_same_space(const OperatorMatrix& other, const char* op) const {
  if (space_ != other.space_ && space_->distances() != other.space_->distances()) {
    throw InvalidArgument(std::string("OperatorMatrix ") + op + ": operands live on different spaces");
  }
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  require_same_space(other, "+");
  entries_ += other.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  require_same_space(other, "-");
  entries_ -= other.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Complex scalar) {
  entries_ *= scalar;
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  a.require_same_space(b, "*");
  return {a.space_, a.entries_ * b.entries_};
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  return a * b - b * a;
}

OperatorMatrix conjugate(const OperatorMatrix& u, const OperatorMatrix& a) {
  return a.with_matrix(u.matrix() * a.matrix() * u.matrix().adjoint());
}

double max_abs_entry(const OperatorMatrix& a) {
  return a.size() == 0 ? 0.0 : a.matrix().cwiseAbs().maxCoeff();
}

double default_propagation_tol(const OperatorMatrix& a) { return 1e-12 * max_abs_entry(a); }

double propagation(const OperatorMatrix& a, double tol) {
  if (tol < 0.0) tol = default_propagation_tol(a);
  const auto& m = a.matrix();
  const auto& d = a.space().distances();
  double prop = 0.0;
  for (Eigen::Index y = 0; y < m.cols(); ++y) {
    for (Eigen::Index x = 0; x < m.rows(); ++x) {
      if (std::abs(m(x, y)) > tol && d(x, y) > prop) prop = d(x, y);
    }
  }
  return prop;
}

OperatorMatrix expectation(const OperatorMatrix& a) {
  return a.with_matrix(a.matrix().diagonal().asDiagonal().toDenseMatrix());
}

OperatorMatrix truncate(const OperatorMatrix& a, double r) {
  Matrix m = a.matrix();
  const auto& d = a.space().distances();
  for (Eigen::Index y = 0; y < m.cols(); ++y) {
    for (Eigen::Index x = 0; x < m.rows(); ++x) {
      if (d(x, y) > r) m(x, y) = 0.0;
    }
  }
  return a.with_matrix(std::move(m));
}

double operator_norm(const OperatorMatrix& a) { return spectral_norm(a.matrix()); }

double schur_bound(const OperatorMatrix& a, double r) {
  const double prop = propagation(a);
  if (prop > r) {
    throw InvalidArgument("schur_bound: propagation " + std::to_string(prop) +
                          " exceeds r = " + std::to_string(r));
  }
  return static_cast<double>(growth_profile(a.space(), r)) * max_abs_entry(a);
}

double offdiag_sup(const OperatorMatrix& a) {
  const auto& m = a.matrix();
  double best = 0.0;
  for (Eigen::Index y = 0; y < m.cols(); ++y) {
    for (Eigen::Index x = 0; x < m.rows(); ++x) {
      if (x != y) best = std::max(best, std::abs(m(x, y)));
    }
  }
  return best;
}

double hermiticity_residual(const OperatorMatrix& a) {
  return (a.matrix() - a.matrix().adjoint()).norm();
}

HigsonProfile higson_commutator_profile(const OperatorMatrix& a, std::span<const double> f) {
  if (f.size() != a.size()) {
    throw InvalidArgument("higson_commutator_profile: function size does not match space");
  }
  const auto mf = OperatorMatrix::diagonal(a.space_ptr(), f);
  const auto c = commutator(a, mf);
  HigsonProfile out;
  out.commutator_norm = operator_norm(c);
  for (std::size_t y = 0; y < a.size(); ++y) {
    for (std::size_t x = 0; x < a.size(); ++x) {
      const Complex expected = (f[y] - f[x]) * a(x, y);
      out.entrywise_residual = std::max(out.entrywise_residual, std::abs(c(x, y) - expected));
    }
  }
  return out;
}

void write_matrix(std::ostream& out, const OperatorMatrix& a) {
  out << "n " << a.size() << '\n';
  char buf[128];
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < a.size(); ++y) {
      const Complex v = a(x, y);
      if (v == Complex{}) continue;
      std::snprintf(buf, sizeof buf, "%zu %zu %.17g %.17g\n", x, y, v.real(), v.imag());
      out << buf;
    }
  }
}

OperatorMatrix read_matrix(std::istream& in, SpacePtr space) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  Matrix m;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!have_header) {
      std::string tag;
      std::size_t n = 0;
      if (!(fields >> tag >> n) || tag != "n") {
        throw InvalidArgument("matrix line " + std::to_string(line_no) + ": expected header 'n <n>'");
      }
      if (n != space->size()) {
        throw InvalidArgument("matrix header n = " + std::to_string(n) +
                              " does not match space size " + std::to_string(space->size()));
      }
      m = Matrix::Zero(n, n);
      have_header = true;
      continue;
    }
    long long x = -1, y = -1;
    std::string re_text, im_text;
    if (!(fields >> x >> y >> re_text >> im_text) || x < 0 || y < 0 ||
        x >= m.rows() || y >= m.cols()) {
      throw InvalidArgument("matrix line " + std::to_string(line_no) + ": expected 'x y re im'");
    }
    // strtod parses the shortest-round-trip output exactly.
    m(x, y) = Complex(std::strtod(re_text.c_str(), nullptr), std::strtod(im_text.c_str(), nullptr));
  }
  if (!have_header) throw InvalidArgument("matrix: missing 'n <n>' header");
  return {std::move(space), std::move(m)};
}

}  // namespace roeflow
