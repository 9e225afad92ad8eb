#pragma once

#include <complex>
#include <random>

#include "holonomy/error.hpp"
#include "holonomy/linalg.hpp"

namespace holonomy::test {

/// Independent matrix exponential: Taylor series after scaling by 2^s.
inline Matrix taylor_expm(const Matrix& a) {
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  while (norm / std::ldexp(1.0, s) > 0.25) ++s;
  const Matrix x = a / std::ldexp(1.0, s);
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

inline Matrix diag(std::initializer_list<Complex> entries) {
  Vector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (Complex c : entries) v(i++) = c;
  return v.asDiagonal();
}

inline Complex phase(double angle) { return std::polar(1.0, angle); }

inline Matrix tau(int a) { return Complex(0.0, -0.5) * pauli(a); }

inline Matrix random_hermitian(std::size_t m, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix x(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = Complex(u(rng), u(rng));
  return scale * 0.5 * (x + x.adjoint());
}

}  // namespace holonomy::test
