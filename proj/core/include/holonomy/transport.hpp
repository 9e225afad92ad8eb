#pragma once

#include <cstddef>
#include <vector>

#include "holonomy/connection.hpp"
#include "holonomy/geometry.hpp"
#include "holonomy/linalg.hpp"

namespace holonomy {

/// Fundamental matrix T of dv/dt = G v along a path: v(1) = T v(0).
struct HolonomyResult {
  Matrix matrix;
  double error_estimate = 0.0;
  std::size_t steps_used = 0;
  bool path_closed = false;
  double min_pole_distance = 0.0;
  PlanePoint start;
  PlanePoint end;
};

struct TrajectorySample {
  double t;
  Vector v;
};

using TransportTrajectory = std::vector<TrajectorySample>;

inline constexpr double kMinTolerance = 1e-13;
inline constexpr double kMaxTolerance = 1e-2;
inline constexpr std::size_t kMaxSteps = std::size_t{1} << 24;

/// Midpoint matrix-exponential product over every primitive; all step counts
/// double until two successive products agree to `tol` (Frobenius norm).
HolonomyResult parallel_transport(const ConnectionSpec& conn, const PathSpec& path, double tol);

/// v(t_i) at n_out equally spaced t_i in [0, 1], using the step partition at
/// which parallel_transport converged.
TransportTrajectory transport_trajectory(const ConnectionSpec& conn, const PathSpec& path,
                                         const Vector& v0, std::size_t n_out, double tol);

/// `a` traversed first: matrix = b.matrix * a.matrix.
HolonomyResult compose_transport(const HolonomyResult& a, const HolonomyResult& b);

HolonomyResult identity_transport(std::size_t rank, PlanePoint at);

}  // namespace holonomy
