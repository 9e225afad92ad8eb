#include "holonomy/connection.hpp"

#include <algorithm>
#include <cmath>

#include "holonomy/error.hpp"

namespace holonomy {
namespace {

constexpr double kCommuteTol = 1e-10;
constexpr double kHermitianTol = 1e-12;

void check_square(const Matrix& m, std::size_t rank, const char* what) {
  if (m.rows() != static_cast<Eigen::Index>(rank) || m.cols() != static_cast<Eigen::Index>(rank)) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be " +
                                                  std::to_string(rank) + "x" + std::to_string(rank));
  }
  if (!all_finite(m)) throw Error(ErrorCode::NonFinite, what);
}

Matrix scalar(Complex c) {
  Matrix out(1, 1);
  out(0, 0) = c;
  return out;
}

}  // namespace

ConnectionSpec::ConnectionSpec(ConnectionVariant variant, double guard)
    : variant_(std::move(variant)), guard_(guard) {
  if (!(guard_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "pole guard must be positive");
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MultiSolenoid>) {
          if (v.fluxes.size() != v.punctures.size()) {
            throw Error(ErrorCode::InvalidArgument, "one flux per puncture required");
          }
          for (double phi : v.fluxes) {
            if (!std::isfinite(phi)) throw Error(ErrorCode::NonFinite, "flux");
          }
          punctures_ = v.punctures;
          rank_ = 1;
        } else if constexpr (std::is_same_v<T, FuchsianLog>) {
          if (v.residues.size() != v.punctures.size()) {
            throw Error(ErrorCode::InvalidArgument, "one residue per puncture required");
          }
          if (v.residues.empty() && v.polynomial.empty()) {
            throw Error(ErrorCode::InvalidArgument, "Fuchsian system without residues or polynomial part");
          }
          rank_ = static_cast<std::size_t>(v.residues.empty() ? v.polynomial.front().rows()
                                                              : v.residues.front().rows());
          for (const auto& r : v.residues) check_square(r, rank_, "residue");
          for (const auto& p : v.polynomial) check_square(p, rank_, "polynomial coefficient");
          punctures_ = v.punctures;
        } else if constexpr (std::is_same_v<T, AharonovCasher>) {
          if (!std::isfinite(v.lambda)) throw Error(ErrorCode::NonFinite, "lambda");
          punctures_ = PunctureSet({PlanePoint{0.0, 0.0}}, {"wire"});
          rank_ = 2;
        } else if constexpr (std::is_same_v<T, ConstantField>) {
          if (!std::isfinite(v.b)) throw Error(ErrorCode::NonFinite, "field strength");
          rank_ = 1;
        } else {
          if (!v.a1 || !v.a2) throw Error(ErrorCode::InvalidArgument, "custom sampler needs A1 and A2");
          if (v.rank == 0) throw Error(ErrorCode::InvalidArgument, "custom sampler rank must be positive");
          rank_ = v.rank;
          punctures_ = v.punctures;
        }
      },
      variant_);
}

std::string_view ConnectionSpec::kind() const {
  switch (variant_.index()) {
    case 0: return "multi_solenoid";
    case 1: return "fuchsian";
    case 2: return "aharonov_casher";
    case 3: return "constant_field";
    default: return "custom";
  }
}

std::optional<LogResidues> ConnectionSpec::log_residues() const {
  if (const auto* ms = std::get_if<MultiSolenoid>(&variant_)) {
    LogResidues out{ms->punctures, {}};
    for (double phi : ms->fluxes) out.residues.push_back(scalar(-phi / kTwoPi));
    return out;
  }
  if (const auto* ac = std::get_if<AharonovCasher>(&variant_)) {
    // i Lambda tau_3 = (Lambda / 2) sigma_3
    return LogResidues{punctures_, {0.5 * ac->lambda * pauli(3)}};
  }
  if (const auto* fl = std::get_if<FuchsianLog>(&variant_)) {
    const bool no_poly = std::all_of(fl->polynomial.begin(), fl->polynomial.end(),
                                     [](const Matrix& p) { return p.norm() == 0.0; });
    if (no_poly) return LogResidues{fl->punctures, fl->residues};
  }
  return std::nullopt;
}

bool ConnectionSpec::unitary_holonomy() const {
  if (std::holds_alternative<ConstantField>(variant_)) return true;
  const auto logs = log_residues();
  if (!logs) return false;
  const auto& rs = logs->residues;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if ((rs[i] - rs[i].adjoint()).norm() > kHermitianTol) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (commutator(rs[i], rs[j]).norm() > kCommuteTol) return false;
    }
  }
  return true;
}

Matrix ConnectionSpec::generator(PlanePoint point, PlanePoint velocity) const {
  const auto m = static_cast<Eigen::Index>(rank_);
  Matrix out(m, m);
  generator_into(point, velocity, out);
  return out;
}

void ConnectionSpec::generator_into(PlanePoint point, PlanePoint velocity,
                                    Eigen::Ref<Matrix> out) const {
  if (!std::isfinite(point.x) || !std::isfinite(point.y) || !std::isfinite(velocity.x) ||
      !std::isfinite(velocity.y)) {
    throw Error(ErrorCode::InvalidArgument, "generator evaluated at a non-finite point or velocity");
  }
  const auto& pts = punctures_.points();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (distance(point, pts[j]) < guard_) {
      throw Error(ErrorCode::PoleProximity,
                  "evaluation within the pole guard of puncture " + punctures_.labels()[j]);
    }
  }
  const Complex z = point.z();
  const Complex dz(velocity.x, velocity.y);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MultiSolenoid>) {
          Complex sum = 0.0;
          for (std::size_t j = 0; j < v.fluxes.size(); ++j) sum += v.fluxes[j] / (z - pts[j].z());
          out(0, 0) = -sum * dz / kTwoPi;
        } else if constexpr (std::is_same_v<T, FuchsianLog>) {
          // Horner for P(z), then the pole terms; everything scaled by dz.
          out.setZero();
          for (auto it = v.polynomial.rbegin(); it != v.polynomial.rend(); ++it) {
            out *= z;
            out += *it;
          }
          for (std::size_t j = 0; j < v.residues.size(); ++j) out += v.residues[j] / (z - pts[j].z());
          out *= dz;
        } else if constexpr (std::is_same_v<T, AharonovCasher>) {
          // i Lambda (dz/z) tau_3 = (Lambda/2)(dz/z) sigma_3
          const Complex w = 0.5 * v.lambda * dz / z;
          out.setZero();
          out(0, 0) = w;
          out(1, 1) = -w;
        } else if constexpr (std::is_same_v<T, ConstantField>) {
          out(0, 0) = kI * 0.5 * v.b * (-point.y * velocity.x + point.x * velocity.y);
        } else {
          const Matrix a1 = v.a1(point);
          const Matrix a2 = v.a2(point);
          check_square(a1, rank_, "custom A1");
          check_square(a2, rank_, "custom A2");
          out = a1 * velocity.x + a2 * velocity.y;
        }
      },
      variant_);
}

Matrix evaluate_generator(const ConnectionSpec& conn, PlanePoint point, PlanePoint velocity) {
  return conn.generator(point, velocity);
}

Matrix curvature_fd(const ConnectionSpec& conn, PlanePoint point, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
  const PlanePoint ex{1.0, 0.0};
  const PlanePoint ey{0.0, 1.0};
  // Fourth-order central differences of A2 along x and A1 along y.
  auto dx_a2 = [&](double s) { return conn.generator({point.x + s * h, point.y}, ey); };
  auto dy_a1 = [&](double s) { return conn.generator({point.x, point.y + s * h}, ex); };
  const Matrix d_a2 = (8.0 * (dx_a2(1) - dx_a2(-1)) - (dx_a2(2) - dx_a2(-2))) / (12.0 * h);
  const Matrix d_a1 = (8.0 * (dy_a1(1) - dy_a1(-1)) - (dy_a1(2) - dy_a1(-2))) / (12.0 * h);
  return d_a2 - d_a1 - commutator(conn.generator(point, ex), conn.generator(point, ey));
}

double ym_energy(const ConnectionSpec& conn, const GridRegion& region) {
  if (!(region.xmax > region.xmin) || !(region.ymax > region.ymin)) {
    throw Error(ErrorCode::InvalidArgument, "grid rectangle is empty");
  }
  if (region.nx < 2 || region.ny < 2) {
    throw Error(ErrorCode::InvalidArgument, "grid resolution must be at least 2x2");
  }
  const double dx = (region.xmax - region.xmin) / static_cast<double>(region.nx - 1);
  const double dy = (region.ymax - region.ymin) / static_cast<double>(region.ny - 1);
  for (std::size_t j = 0; j < conn.punctures().size(); ++j) {
    const PlanePoint p = conn.punctures().points()[j];
    if (p.x < region.xmin || p.x > region.xmax || p.y < region.ymin || p.y > region.ymax) continue;
    const double gx = std::abs(p.x - (region.xmin + std::round((p.x - region.xmin) / dx) * dx));
    const double gy = std::abs(p.y - (region.ymin + std::round((p.y - region.ymin) / dy) * dy));
    if (std::hypot(gx, gy) < 1e-6) {
      throw Error(ErrorCode::PoleProximity,
                  "puncture " + conn.punctures().labels()[j] + " sits on a grid node");
    }
  }
  const double h = 0.5 * std::min(dx, dy);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < region.nx; ++i) {
    for (std::size_t k = 0; k + 1 < region.ny; ++k) {
      const PlanePoint c{region.xmin + (static_cast<double>(i) + 0.5) * dx,
                         region.ymin + (static_cast<double>(k) + 0.5) * dy};
      sum += curvature_fd(conn, c, h).squaredNorm();
    }
  }
  return sum * dx * dy;
}

}  // namespace holonomy
