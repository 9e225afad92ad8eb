#include "holonomy/lie.hpp"

#include <algorithm>
#include <cmath>

#include "holonomy/error.hpp"

namespace holonomy {
namespace {

Vector vectorize(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

}  // namespace

LieBasis::LieBasis(std::vector<Matrix> generators, std::vector<double> structure_constants)
    : generators_(std::move(generators)), f_(std::move(structure_constants)) {
  const std::size_t d = generators_.size();
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "Lie basis needs a generator");
  if (f_.size() != d * d * d) {
    throw Error(ErrorCode::DimensionMismatch, "structure constants must have dim^3 entries");
  }
  const auto m = generators_.front().rows();
  for (const auto& g : generators_) {
    if (g.rows() != m || g.cols() != m) {
      throw Error(ErrorCode::DimensionMismatch, "basis generators must share one square size");
    }
  }
  design_.resize(m * m, static_cast<Eigen::Index>(d));
  for (std::size_t a = 0; a < d; ++a) design_.col(static_cast<Eigen::Index>(a)) = vectorize(generators_[a]);
  solver_.compute(design_);
  pinv_ = solver_.pseudoInverse();
}

LieBasis LieBasis::su2() {
  std::vector<Matrix> tau;
  for (int a = 1; a <= 3; ++a) tau.push_back(Complex(0.0, -0.5) * pauli(a));
  std::vector<double> f(27, 0.0);
  auto set = [&](int a, int b, int c, double v) { f[(a * 3 + b) * 3 + c] = v; };
  for (int a = 0; a < 3; ++a) {
    set(a, (a + 1) % 3, (a + 2) % 3, 1.0);
    set(a, (a + 2) % 3, (a + 1) % 3, -1.0);
  }
  return LieBasis(std::move(tau), std::move(f));
}

LieBasis LieBasis::u1() {
  Matrix g(1, 1);
  g(0, 0) = kI;
  return LieBasis({g}, {0.0});
}

LieBasis LieBasis::from_generators(std::vector<Matrix> generators) {
  const std::size_t d = generators.size();
  LieBasis probe(generators, std::vector<double>(d * d * d, 0.0));
  std::vector<double> f(d * d * d, 0.0);
  for (std::size_t b = 0; b < d; ++b) {
    for (std::size_t c = 0; c < d; ++c) {
      double residual = 0.0;
      const Vector coeffs = probe.components(commutator(generators[b], generators[c]), residual);
      for (std::size_t a = 0; a < d; ++a) f[(a * d + b) * d + c] = coeffs(static_cast<Eigen::Index>(a)).real();
    }
  }
  return LieBasis(std::move(generators), std::move(f));
}

std::size_t LieBasis::rank() const { return static_cast<std::size_t>(generators_.front().rows()); }

Matrix LieBasis::compose(const Vector& components) const {
  if (static_cast<std::size_t>(components.size()) != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "component vector length differs from basis size");
  }
  Matrix out = Matrix::Zero(generators_.front().rows(), generators_.front().cols());
  for (std::size_t a = 0; a < dim(); ++a) out += components(static_cast<Eigen::Index>(a)) * generators_[a];
  return out;
}

Vector LieBasis::components(const Matrix& x, double& residual) const {
  if (x.rows() != generators_.front().rows() || x.cols() != generators_.front().cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix size differs from basis generators");
  }
  const Vector target = vectorize(x);
  const Vector coeffs = solver_.solve(target);
  residual = (design_ * coeffs - target).norm();
  return coeffs;
}

LieBasisReport verify_lie_basis(const LieBasis& basis) {
  const std::size_t d = basis.dim();
  LieBasisReport report;
  for (std::size_t b = 0; b < d; ++b) {
    for (std::size_t c = 0; c < d; ++c) {
      Matrix expansion = Matrix::Zero(basis.generator(0).rows(), basis.generator(0).cols());
      for (std::size_t a = 0; a < d; ++a) {
        expansion += basis.f(a, b, c) * basis.generator(a);
        report.antisymmetry = std::max(report.antisymmetry, std::abs(basis.f(a, b, c) + basis.f(a, c, b)));
      }
      report.bracket = std::max(
          report.bracket, frobenius(commutator(basis.generator(b), basis.generator(c)) - expansion));
    }
  }
  // sum_e f^e_{cd} f^a_{be} + f^e_{db} f^a_{ce} + f^e_{bc} f^a_{de} = 0
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t dd = 0; dd < d; ++dd) {
          double sum = 0.0;
          for (std::size_t e = 0; e < d; ++e) {
            sum += basis.f(e, c, dd) * basis.f(a, b, e) + basis.f(e, dd, b) * basis.f(a, c, e) +
                   basis.f(e, b, c) * basis.f(a, dd, e);
          }
          report.jacobi = std::max(report.jacobi, std::abs(sum));
        }
      }
    }
  }
  return report;
}

}  // namespace holonomy
