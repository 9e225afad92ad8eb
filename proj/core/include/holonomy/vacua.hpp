#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "holonomy/connection.hpp"
#include "holonomy/linalg.hpp"

namespace holonomy {

/// Conjugacy class of a unitary representation of Z: the sorted eigenphases
/// of the image of the generator, each in [0, 2 pi).
struct VacuumClassCyclic {
  std::vector<double> eigenphases;
};

/// Class of a unitary representation of Z/2Z: `plus` copies of the trivial
/// representation and `minus` copies of the sign representation.
struct VacuumClassZ2 {
  std::size_t plus = 0;
  std::size_t minus = 0;

  friend bool operator==(const VacuumClassZ2&, const VacuumClassZ2&) = default;
};

/// Distance between two angles measured along the unit circle.
double circle_distance(double a, double b);

VacuumClassCyclic canonical_vacuum_cyclic(const Matrix& u, double tol);

/// Cospectrality of two unitaries, phases paired by the best cyclic shift of
/// the sorted lists.
bool equivalent_reps_cyclic(const Matrix& u, const Matrix& v, double tol);

VacuumClassZ2 classify_z2(const Matrix& u, double tol);

/// (0, m), (1, m - 1), ..., (m, 0) listed as (plus, minus) with plus = i,
/// minus = m - i.
std::vector<VacuumClassZ2> enumerate_vacua_z2(std::size_t m);

/// Class of the monodromy around the single puncture of `conn`.
VacuumClassCyclic vacuum_from_connection(const ConnectionSpec& conn, double tol,
                                         std::optional<PlanePoint> basepoint = std::nullopt);

}  // namespace holonomy
