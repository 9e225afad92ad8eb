#pragma once

// Fixed-size stepping kernels shared by the integrators. Private to the
// library: the public surface only sees dynamic matrices.

#include <array>
#include <cmath>
#include <type_traits>
#include <vector>

#include "holonomy/connection.hpp"
#include "holonomy/error.hpp"
#include "holonomy/geometry.hpp"
#include "holonomy/linalg.hpp"

namespace holonomy::kernels {

template <int M>
using Mat = Eigen::Matrix<Complex, M, M>;

namespace pade {

inline constexpr std::array<double, 4> k3 = {120.0, 60.0, 12.0, 1.0};
inline constexpr std::array<double, 6> k5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
inline constexpr std::array<double, 8> k7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                             25200.0,    1512.0,    56.0,      1.0};
inline constexpr std::array<double, 10> k9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                              302702400.0,   30270240.0,   2162160.0,
                                              110880.0,      3960.0,       90.0,
                                              1.0};
inline constexpr std::array<double, 14> k13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

inline constexpr double theta3 = 1.495585217958292e-2;
inline constexpr double theta5 = 2.539398330063230e-1;
inline constexpr double theta7 = 9.504178996162932e-1;
inline constexpr double theta9 = 2.097847961257068e0;
inline constexpr double theta13 = 5.371920351148152e0;

template <class MatT>
MatT solve(const MatT& denominator, const MatT& numerator) {
  if constexpr (MatT::RowsAtCompileTime != Eigen::Dynamic && MatT::RowsAtCompileTime <= 4) {
    return denominator.inverse() * numerator;
  } else {
    return denominator.partialPivLu().solve(numerator);
  }
}

// r(A) = (V - U)^{-1} (V + U) with U the odd and V the even part.
template <class MatT, std::size_t N>
MatT low(const MatT& a, const std::array<double, N>& b) {
  const auto n = a.rows();
  const MatT a2 = a * a;
  MatT power = MatT::Identity(n, n);
  MatT u_sum = MatT::Zero(n, n);
  MatT v_sum = MatT::Zero(n, n);
  for (std::size_t k = 0; k < N; k += 2) {
    v_sum += b[k] * power;
    u_sum += b[k + 1] * power;
    power = power * a2;
  }
  const MatT u = a * u_sum;
  return solve<MatT>(v_sum - u, v_sum + u);
}

template <class MatT>
MatT degree13(const MatT& a) {
  const auto& b = k13;
  const auto n = a.rows();
  const MatT ident = MatT::Identity(n, n);
  const MatT a2 = a * a;
  const MatT a4 = a2 * a2;
  const MatT a6 = a4 * a2;
  const MatT u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                      b[3] * a2 + b[1] * ident);
  const MatT v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
                 b[0] * ident;
  return solve<MatT>(v - u, v + u);
}

}  // namespace pade

/// Scaling and squaring with the smallest Pade degree whose Higham (2005)
/// threshold covers the 1-norm.
template <class MatT>
MatT expm(const MatT& a) {
  if (a.rows() == 1) {
    MatT out(1, 1);
    out(0, 0) = std::exp(a(0, 0));
    return out;
  }
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm)) throw Error(ErrorCode::NonFinite, "matrix exponential of a non-finite matrix");
  if (norm <= pade::theta3) return pade::low(a, pade::k3);
  if (norm <= pade::theta5) return pade::low(a, pade::k5);
  if (norm <= pade::theta7) return pade::low(a, pade::k7);
  if (norm <= pade::theta9) return pade::low(a, pade::k9);
  int squarings = 0;
  if (norm > pade::theta13) squarings = static_cast<int>(std::ceil(std::log2(norm / pade::theta13)));
  MatT result = pade::degree13<MatT>(a / std::ldexp(1.0, squarings));
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

/// Calls f(std::type_identity<MatT>{}) with a fixed-size type for ranks 1-4.
template <class F>
decltype(auto) dispatch_rank(std::size_t rank, F&& f) {
  switch (rank) {
    case 1: return f(std::type_identity<Mat<1>>{});
    case 2: return f(std::type_identity<Mat<2>>{});
    case 3: return f(std::type_identity<Mat<3>>{});
    case 4: return f(std::type_identity<Mat<4>>{});
    default: return f(std::type_identity<Matrix>{});
  }
}

/// Coarsest step count per primitive: at least 8, at least 64 per full turn,
/// and at least 16 per unit of the largest generator norm sampled along it.
std::vector<std::size_t> base_step_counts(const ConnectionSpec& conn, const PathSpec& path);

void check_tolerance(double tol);

/// PoleProximity unless the path clears the guard; returns the clearance.
double check_clearance(const ConnectionSpec& conn, const PathSpec& path);

/// visit(step) for every step of the given refinement level, in path order,
/// with step = (1/n) G(midpoint) in the primitive's own parameter.
template <class MatT, class Visit>
void for_each_step(const ConnectionSpec& conn, const PathSpec& path,
                   const std::vector<std::size_t>& base, int level, Visit&& visit) {
  const auto m = static_cast<Eigen::Index>(conn.rank());
  MatT g(m, m);
  const auto& prims = path.primitives();
  for (std::size_t k = 0; k < prims.size(); ++k) {
    const std::size_t n = base[k] << level;
    const double ds = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = (static_cast<double>(i) + 0.5) * ds;
      conn.generator_into(primitive_point(prims[k], s), primitive_derivative(prims[k], s), g);
      g *= ds;
      visit(static_cast<const MatT&>(g));
    }
  }
}

}  // namespace holonomy::kernels
