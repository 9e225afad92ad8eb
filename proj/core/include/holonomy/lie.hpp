#pragma once

#include <cstddef>
#include <vector>

#include "holonomy/linalg.hpp"

namespace holonomy {

/// Basis {tau_a} of a matrix Lie algebra with structure constants
/// [tau_b, tau_c] = sum_a f^a_{bc} tau_a.
class LieBasis {
 public:
  /// `structure_constants` is indexed f[(a * dim + b) * dim + c].
  LieBasis(std::vector<Matrix> generators, std::vector<double> structure_constants);

  /// tau_a = (-i/2) sigma_a; structure constants are the Levi-Civita symbols.
  static LieBasis su2();
  /// The 1-dimensional algebra u(1) = i R acting on C^1.
  static LieBasis u1();
  /// Structure constants fitted by least squares from the brackets.
  static LieBasis from_generators(std::vector<Matrix> generators);

  std::size_t dim() const { return generators_.size(); }
  /// Matrix size m of the generators.
  std::size_t rank() const;
  const Matrix& generator(std::size_t a) const { return generators_[a]; }
  const std::vector<Matrix>& generators() const { return generators_; }
  double f(std::size_t a, std::size_t b, std::size_t c) const {
    return f_[(a * dim() + b) * dim() + c];
  }

  /// sum_a c_a tau_a
  Matrix compose(const Vector& components) const;
  /// Least-squares coefficients of x in the complex span of the basis.
  /// `residual` receives ||x - compose(c)||_F.
  Vector components(const Matrix& x, double& residual) const;
  /// dim x m^2 map from a column-major vectorized matrix to its coefficients.
  const Matrix& pseudo_inverse() const { return pinv_; }

 private:
  std::vector<Matrix> generators_;
  std::vector<double> f_;
  Matrix design_;  // columns are the vectorized generators
  Eigen::CompleteOrthogonalDecomposition<Matrix> solver_;
  Matrix pinv_;
};

struct LieBasisReport {
  double bracket = 0.0;
  double antisymmetry = 0.0;
  double jacobi = 0.0;
};

LieBasisReport verify_lie_basis(const LieBasis& basis);

}  // namespace holonomy
