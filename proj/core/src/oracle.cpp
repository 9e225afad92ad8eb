#include "holonomy/oracle.hpp"

#include <algorithm>

#include "holonomy/error.hpp"
#include "kernels.hpp"

namespace holonomy::oracle {

OracleReport make_report(std::string quantity, Matrix main_value, Matrix oracle_value, double bound) {
  OracleReport r;
  r.quantity = std::move(quantity);
  if (main_value.rows() != oracle_value.rows() || main_value.cols() != oracle_value.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "oracle and main values differ in shape");
  }
  r.deviation = (main_value - oracle_value).norm();
  r.main_value = std::move(main_value);
  r.oracle_value = std::move(oracle_value);
  r.bound = bound;
  r.pass = r.deviation < bound;
  return r;
}

namespace detail {

Matrix uniform_midpoint_product(const ConnectionSpec& conn, const PathSpec& path, std::size_t n_steps) {
  if (n_steps < 1) throw Error(ErrorCode::InvalidArgument, "need at least one step");
  const double clearance = min_distance(path, conn.punctures());
  if (clearance < conn.guard()) throw Error(ErrorCode::PoleProximity, "path touches the pole guard");
  const auto m = static_cast<Eigen::Index>(conn.rank());
  const auto& breaks = path.breakpoints();
  const double h = 1.0 / static_cast<double>(n_steps);

  const Matrix acc = kernels::dispatch_rank(conn.rank(), [&](auto tag) -> Matrix {
    using MatT = typename decltype(tag)::type;
    MatT product = MatT::Identity(m, m);
    MatT g(m, m);
    auto piece = [&](double a, double b) {
      const double mid = 0.5 * (a + b);
      conn.generator_into(path.position(mid), path.velocity(mid), g);
      g *= (b - a);
      product = kernels::expm<MatT>(g) * product;
    };
    std::size_t next_break = 1;
    for (std::size_t i = 0; i < n_steps; ++i) {
      double a = static_cast<double>(i) * h;
      const double b = i + 1 == n_steps ? 1.0 : static_cast<double>(i + 1) * h;
      // Split at interior breakpoints so each piece samples one smooth primitive.
      while (next_break + 1 < breaks.size() && breaks[next_break] <= a) ++next_break;
      while (next_break + 1 < breaks.size() && breaks[next_break] < b) {
        piece(a, breaks[next_break]);
        a = breaks[next_break];
        ++next_break;
      }
      piece(a, b);
    }
    return Matrix(product);
  });
  if (!all_finite(acc)) throw Error(ErrorCode::NonFinite, "fine-step product overflowed");
  return acc;
}

}  // namespace detail

Matrix fine_step_transport(const ConnectionSpec& conn, const PathSpec& path, std::size_t n_steps) {
  if (n_steps < kMinFineSteps) {
    throw Error(ErrorCode::InvalidArgument, "fine-step oracle needs at least 2^20 steps");
  }
  return detail::uniform_midpoint_product(conn, path, n_steps);
}

Matrix conjugation_oracle(const Matrix& rho, const Matrix& i0) {
  if (rho.rows() != rho.cols() || rho.rows() != i0.rows() || i0.rows() != i0.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "conjugation needs square matrices of one size");
  }
  Eigen::FullPivLU<Matrix> lu(rho);
  if (!lu.isInvertible()) throw Error(ErrorCode::Singular, "rho is not invertible");
  return rho * i0 * lu.inverse();
}

}  // namespace holonomy::oracle
