#pragma once

#include <string>
#include <vector>

#include "holonomy/connection.hpp"
#include "holonomy/geometry.hpp"

namespace holonomy::cli {

/// Reference scenes shared by `verify`, the acceptance suite and the tests.
namespace builtin {

/// Single solenoid of flux phi at the origin.
ConnectionSpec ab_solenoid(double phi = 1.7);

/// Three solenoids at (-1, 0), (1, 0), (0, 2).
ConnectionSpec ab_three_solenoids();

ConnectionSpec aharonov_casher(double lambda = 0.3);

/// su(2)-valued pole at the origin with Hermitian residue 0.3 s3 + 0.2 s1.
ConnectionSpec single_pole();

/// Poles at (-0.5, 0) and (0.5, 0) with noncommuting Hermitian residues.
ConnectionSpec two_pole();

}  // namespace builtin
}  // namespace holonomy::cli
