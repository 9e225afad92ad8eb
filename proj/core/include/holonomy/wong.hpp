#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "holonomy/connection.hpp"
#include "holonomy/geometry.hpp"
#include "holonomy/lie.hpp"
#include "holonomy/linalg.hpp"

namespace holonomy {

/// Lie-algebra valued spin variable I = sum_a I^a tau_a.
struct SpinState {
  Matrix matrix;
  Vector components;

  static SpinState from_components(const LieBasis& basis, const Vector& components);
  /// BasisMismatch if the matrix is not in the (complex) span of the basis.
  static SpinState from_matrix(const LieBasis& basis, const Matrix& matrix);
};

/// Throws InvalidArgument unless matrix and components agree to 1e-10.
void check_spin_state(const LieBasis& basis, const SpinState& state);

struct WongResult {
  SpinState final_state;
  double spectral_drift = 0.0;
  double error_estimate = 0.0;
  std::size_t steps_used = 0;
};

inline constexpr double kBasisResidualTol = 1e-8;
inline constexpr std::size_t kSpectralCheckpoints = 32;

/// dI/dt = [G, I] stepped as I -> e^{hG} I e^{-hG} with the transport
/// partition and halving rule. Spectral drift is the largest movement of the
/// eigenvalues of I over >= 32 checkpoints of the converged run.
WongResult wong_transport(const ConnectionSpec& conn, const LieBasis& basis, const SpinState& i0,
                          const PathSpec& path, double tol);

/// Lockstep wong_transport of several initial states along one path. Each
/// state converges independently; results equal separate calls.
std::vector<WongResult> wong_transport_batch(const ConnectionSpec& conn, const LieBasis& basis,
                                             const std::vector<SpinState>& starts,
                                             const PathSpec& path, double tol);

struct WongComponents {
  Vector components;
  double error_estimate = 0.0;
};

/// Structure-constant form dI^a/dt = f^a_{bc} B^b I^c.
WongComponents wong_transport_components(const ConnectionSpec& conn, const LieBasis& basis,
                                         const Vector& i0_components, const PathSpec& path,
                                         double tol);

struct AdRhoReport {
  Matrix rho;
  std::size_t trials = 0;
  double max_deviation = 0.0;
  double max_spectral_drift = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Compares Wong transport of `trials` random I0 (components uniform in
/// [-1, 1]) with rho I0 rho^{-1}, rho the transport around the closed path.
AdRhoReport verify_ad_rho(const ConnectionSpec& conn, const LieBasis& basis, const PathSpec& path,
                          std::size_t trials, double tol, std::uint64_t seed = 0);

double isospectrality_report(const WongResult& result);

/// Greedy nearest pairing of two spectra; returns the largest pair distance.
double spectral_distance(const Eigen::VectorXcd& reference, const Eigen::VectorXcd& other);

}  // namespace holonomy
