#pragma once

#include <cstddef>
#include <string>

#include "holonomy/connection.hpp"
#include "holonomy/geometry.hpp"
#include "holonomy/linalg.hpp"

namespace holonomy::oracle {

inline constexpr std::size_t kMinFineSteps = std::size_t{1} << 20;

struct OracleReport {
  std::string quantity;
  Matrix main_value;
  Matrix oracle_value;
  double deviation = 0.0;
  double bound = 0.0;
  bool pass = false;
};

OracleReport make_report(std::string quantity, Matrix main_value, Matrix oracle_value, double bound);

/// Uniform n_steps midpoint-exponential product in the global path parameter.
/// Steps that straddle a primitive boundary are split there. No adaptivity.
Matrix fine_step_transport(const ConnectionSpec& conn, const PathSpec& path, std::size_t n_steps);

/// rho I0 rho^{-1}
Matrix conjugation_oracle(const Matrix& rho, const Matrix& i0);

namespace detail {
/// fine_step_transport without the 2^20 floor, for convergence-order checks.
Matrix uniform_midpoint_product(const ConnectionSpec& conn, const PathSpec& path, std::size_t n_steps);
}  // namespace detail

}  // namespace holonomy::oracle
