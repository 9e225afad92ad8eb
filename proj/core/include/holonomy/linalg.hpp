#pragma once

#include <complex>
#include <cstddef>
#include <random>

#include <Eigen/Dense>

namespace holonomy {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr Complex kI{0.0, 1.0};

/// Matrix exponential by scaling and squaring with a degree 3..13 Pade
/// approximant chosen from the 1-norm (Higham 2005 thresholds). Backward
/// error is at unit-roundoff level for every input norm.
Matrix expm(const Matrix& a);

double frobenius(const Matrix& a);

/// ||A^H A - I||_F
double unitarity_defect(const Matrix& a);

Matrix commutator(const Matrix& a, const Matrix& b);

bool all_finite(const Matrix& a);

/// Pauli matrix sigma_1, sigma_2 or sigma_3 (index 1..3).
Matrix pauli(int index);

/// Haar-distributed unitary from the QR factorization of a complex Gaussian
/// matrix, with the phases of R's diagonal absorbed into Q.
Matrix random_unitary(std::size_t m, std::mt19937_64& rng);

}  // namespace holonomy
