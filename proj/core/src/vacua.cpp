#include "holonomy/vacua.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holonomy/error.hpp"
#include "holonomy/monodromy.hpp"

namespace holonomy {
namespace {

void require_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  const double defect = unitarity_defect(u);
  if (!(defect < tol)) {
    throw Error(ErrorCode::NotUnitary, "||U^H U - I|| = " + std::to_string(defect));
  }
}

Eigen::VectorXcd spectrum(const Matrix& u) {
  if (u.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Matrix> solver(u, false);
  return solver.eigenvalues();
}

}  // namespace

double circle_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

VacuumClassCyclic canonical_vacuum_cyclic(const Matrix& u, double tol) {
  require_unitary(u, tol);
  VacuumClassCyclic out;
  const auto eig = spectrum(u);
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    double phase = std::arg(eig(i));
    if (phase < 0.0) phase += kTwoPi;
    if (phase >= kTwoPi) phase = 0.0;
    out.eigenphases.push_back(phase);
  }
  std::sort(out.eigenphases.begin(), out.eigenphases.end());
  return out;
}

bool equivalent_reps_cyclic(const Matrix& u, const Matrix& v, double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "representations differ in rank");
  }
  const auto a = canonical_vacuum_cyclic(u, tol).eigenphases;
  const auto b = canonical_vacuum_cyclic(v, tol).eigenphases;
  const std::size_t m = a.size();
  if (m == 0) return true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t shift = 0; shift < m; ++shift) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) worst = std::max(worst, circle_distance(a[i], b[(i + shift) % m]));
    best = std::min(best, worst);
  }
  return best < tol;
}

VacuumClassZ2 classify_z2(const Matrix& u, double tol) {
  require_unitary(u, tol);
  const auto m = u.rows();
  const double defect = (u * u - Matrix::Identity(m, m)).norm();
  if (!(defect < tol)) {
    throw Error(ErrorCode::NotInvolution, "||U^2 - I|| = " + std::to_string(defect));
  }
  VacuumClassZ2 out;
  const auto eig = spectrum(u);
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    const bool plus = eig(i).real() >= 0.0;
    const double residual = std::abs(eig(i) - (plus ? 1.0 : -1.0));
    if (!(residual < tol)) {
      throw Error(ErrorCode::NotInvolution, "eigenvalue does not snap to +-1");
    }
    ++(plus ? out.plus : out.minus);
  }
  return out;
}

std::vector<VacuumClassZ2> enumerate_vacua_z2(std::size_t m) {
  std::vector<VacuumClassZ2> out;
  out.reserve(m + 1);
  for (std::size_t i = 0; i <= m; ++i) out.push_back({i, m - i});
  return out;
}

VacuumClassCyclic vacuum_from_connection(const ConnectionSpec& conn, double tol,
                                         std::optional<PlanePoint> basepoint) {
  if (conn.punctures().size() != 1) {
    throw Error(ErrorCode::InvalidArgument, "cyclic vacuum needs exactly one puncture");
  }
  const Representation rep = monodromy_representation(conn, basepoint, tol);
  return canonical_vacuum_cyclic(rep.generators.begin()->second, tol);
}

}  // namespace holonomy
