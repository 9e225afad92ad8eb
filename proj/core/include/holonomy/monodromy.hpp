#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holonomy/connection.hpp"
#include "holonomy/geometry.hpp"
#include "holonomy/linalg.hpp"

namespace holonomy {

/// Holonomy representation of the free group on the lasso generators.
struct Representation {
  std::size_t rank = 1;
  std::map<std::string, Matrix> generators;
  PlanePoint basepoint;
  std::map<std::string, double> error_estimates;
};

struct LoopLetter {
  std::string label;
  int exponent = 1;  // +1 or -1
};

using LoopWord = std::vector<LoopLetter>;

/// Radius of the lasso circle around each puncture: half the distance to the
/// nearest other puncture, capped at 0.5.
std::vector<double> lasso_radii(const PunctureSet& punctures);

/// Left of the configuration (x = xmin - 1), at the height whose spokes keep
/// the largest clearance from the other lasso discs.
PlanePoint default_basepoint(const PunctureSet& punctures);

/// For each puncture: spoke from the basepoint to the lasso circle, one
/// counterclockwise turn, and the spoke back. Keyed (and so ordered) by label.
std::map<std::string, PathSpec> generator_loops(const PunctureSet& punctures,
                                                std::optional<PlanePoint> basepoint = std::nullopt);

/// Transports every generator loop. CustomSampler connections require
/// `assume_flat`.
Representation monodromy_representation(const ConnectionSpec& conn,
                                         std::optional<PlanePoint> basepoint, double tol,
                                         bool assume_flat = false);

/// exp(2 pi i sum_j w_j R_j) for pairwise commuting residues.
Matrix abelian_oracle(std::span<const Matrix> residues, std::span<const int> windings);

/// Later letters multiply on the left.
Matrix evaluate_word(const Representation& rep, const LoopWord& word);

struct AbPhase {
  Complex phase;
  std::vector<int> windings;
};

/// exp(-i sum_j w_j Phi_j) with w_j the winding of the loop about puncture j.
AbPhase ab_phase_predict(std::span<const double> fluxes, const PathSpec& loop,
                         const PunctureSet& punctures);

}  // namespace holonomy
