#include "holonomy/linalg.hpp"

#include <cmath>

#include "holonomy/error.hpp"
#include "kernels.hpp"

namespace holonomy {
Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "expm needs a square matrix");
  }
  if (a.rows() == 0) return a;
  return kernels::dispatch_rank(static_cast<std::size_t>(a.rows()), [&](auto tag) -> Matrix {
    using MatT = typename decltype(tag)::type;
    return kernels::expm<MatT>(MatT(a));
  });
}

double frobenius(const Matrix& a) { return a.norm(); }

double unitarity_defect(const Matrix& a) {
  return (a.adjoint() * a - Matrix::Identity(a.rows(), a.cols())).norm();
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

bool all_finite(const Matrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    }
  }
  return true;
}

Matrix pauli(int index) {
  Matrix s = Matrix::Zero(2, 2);
  switch (index) {
    case 1:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case 2:
      s(0, 1) = -kI;
      s(1, 0) = kI;
      break;
    case 3:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
    default:
      throw Error(ErrorCode::InvalidArgument, "Pauli index must be 1, 2 or 3");
  }
  return s;
}

Matrix random_unitary(std::size_t m, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(m);
  Matrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) z(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace holonomy
