#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "holonomy/geometry.hpp"
#include "holonomy/lie.hpp"
#include "holonomy/linalg.hpp"

namespace holonomy {

/// Scalar form -(1/2pi) sum_j Phi_j dz / (z - z_j).
struct MultiSolenoid {
  PunctureSet punctures;
  std::vector<double> fluxes;
};

/// M(z) dz = sum_j R_j dz / (z - z_j) + P(z) dz with P(z) = sum_k P_k z^k.
struct FuchsianLog {
  PunctureSet punctures;
  std::vector<Matrix> residues;
  std::vector<Matrix> polynomial;
};

/// i Lambda (dz / z) tau_3 on C^2, tau_3 = (-i/2) sigma_3.
struct AharonovCasher {
  double lambda = 0.0;
};

/// i (B/2)(-y dx + x dy) on C^1.
struct ConstantField {
  double b = 0.0;
};

/// A = A1(x) dx + A2(x) dy from user callbacks. Never assumed flat.
struct CustomSampler {
  std::size_t rank = 1;
  std::function<Matrix(PlanePoint)> a1;
  std::function<Matrix(PlanePoint)> a2;
  PunctureSet punctures;
};

using ConnectionVariant =
    std::variant<MultiSolenoid, FuchsianLog, AharonovCasher, ConstantField, CustomSampler>;

/// Residues of a pure logarithmic-pole form (no polynomial part).
struct LogResidues {
  PunctureSet punctures;
  std::vector<Matrix> residues;
};

/// Transport generator G(x, v) such that dv/dt = G v along a path.
class ConnectionSpec {
 public:
  static constexpr double kDefaultGuard = 1e-9;
  static constexpr double kSoftGuard = 1e-3;

  explicit ConnectionSpec(ConnectionVariant variant, double guard = kDefaultGuard);

  std::size_t rank() const { return rank_; }
  const PunctureSet& punctures() const { return punctures_; }
  const ConnectionVariant& variant() const { return variant_; }
  double guard() const { return guard_; }
  std::string_view kind() const;

  bool is_custom() const { return std::holds_alternative<CustomSampler>(variant_); }
  /// Holonomy around every closed loop is unitary: real fluxes, Hermitian
  /// pairwise commuting residues without polynomial part, or a pointwise
  /// anti-Hermitian potential.
  bool unitary_holonomy() const;
  std::optional<LogResidues> log_residues() const;

  Matrix generator(PlanePoint point, PlanePoint velocity) const;
  /// Writes the generator into a preallocated rank x rank matrix.
  void generator_into(PlanePoint point, PlanePoint velocity, Eigen::Ref<Matrix> out) const;

 private:
  ConnectionVariant variant_;
  PunctureSet punctures_;
  std::size_t rank_ = 1;
  double guard_ = kDefaultGuard;
};

Matrix evaluate_generator(const ConnectionSpec& conn, PlanePoint point, PlanePoint velocity);

/// Fourth-order central-difference C_12 = d1 A2 - d2 A1 - [A1, A2].
Matrix curvature_fd(const ConnectionSpec& conn, PlanePoint point, double h);

struct GridRegion {
  double xmin = 0.0;
  double xmax = 1.0;
  double ymin = 0.0;
  double ymax = 1.0;
  std::size_t nx = 2;
  std::size_t ny = 2;
};

/// Midpoint Riemann sum of ||C_12||_F^2 over the (nx-1)(ny-1) grid cells.
double ym_energy(const ConnectionSpec& conn, const GridRegion& region);

}  // namespace holonomy
