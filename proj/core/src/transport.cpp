#include "holonomy/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "holonomy/error.hpp"
#include "kernels.hpp"

namespace holonomy {
namespace kernels {

constexpr int kProbeSamples = 32;
// Coarse steps per unit of the largest |G| along a primitive.
constexpr double kStepsPerUnitGenerator = 16.0;

std::vector<std::size_t> base_step_counts(const ConnectionSpec& conn, const PathSpec& path) {
  const auto rank = static_cast<Eigen::Index>(conn.rank());
  Matrix g(rank, rank);
  std::vector<std::size_t> counts;
  for (const auto& prim : path.primitives()) {
    std::size_t n = 8;
    if (const auto* arc = std::get_if<Arc>(&prim)) {
      n = std::max<std::size_t>(n, static_cast<std::size_t>(std::ceil(64.0 * std::abs(arc->sweep) / kTwoPi - 1e-9)));
    }
    double peak = 0.0;
    for (int i = 0; i <= kProbeSamples; ++i) {
      const double s = static_cast<double>(i) / kProbeSamples;
      conn.generator_into(primitive_point(prim, s), primitive_derivative(prim, s), g);
      peak = std::max(peak, g.norm());
    }
    const double weighted = std::min(std::ceil(kStepsPerUnitGenerator * peak), static_cast<double>(kMaxSteps));
    counts.push_back(std::max(n, static_cast<std::size_t>(weighted)));
  }
  return counts;
}

void check_tolerance(double tol) {
  if (!(tol >= kMinTolerance && tol <= kMaxTolerance)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must lie in [1e-13, 1e-2]");
  }
}

double check_clearance(const ConnectionSpec& conn, const PathSpec& path) {
  const double clearance = min_distance(path, conn.punctures());
  if (clearance < conn.guard()) {
    throw Error(ErrorCode::PoleProximity,
                "path passes within the pole guard (distance " + std::to_string(clearance) + ")");
  }
  return clearance;
}

}  // namespace kernels

namespace {

struct Converged {
  Matrix matrix;
  double error = 0.0;
  std::size_t steps = 0;
  int level = 0;
};

template <class MatT>
MatT product_at_level(const ConnectionSpec& conn, const PathSpec& path,
                      const std::vector<std::size_t>& base, int level) {
  const auto m = static_cast<Eigen::Index>(conn.rank());
  MatT acc = MatT::Identity(m, m);
  kernels::for_each_step<MatT>(conn, path, base, level,
                               [&](const MatT& step) { acc = kernels::expm<MatT>(step) * acc; });
  if (!all_finite(Matrix(acc))) throw Error(ErrorCode::NonFinite, "transport product overflowed");
  return acc;
}

Converged converge(const ConnectionSpec& conn, const PathSpec& path, double tol) {
  kernels::check_tolerance(tol);
  kernels::check_clearance(conn, path);
  const auto base = kernels::base_step_counts(conn, path);
  const std::size_t base_total = std::accumulate(base.begin(), base.end(), std::size_t{0});

  return kernels::dispatch_rank(conn.rank(), [&](auto tag) {
    using MatT = typename decltype(tag)::type;
    Converged out;
    MatT previous = product_at_level<MatT>(conn, path, base, 0);
    out.steps = base_total;
    for (int level = 1;; ++level) {
      const std::size_t steps = base_total << level;
      if (steps > kMaxSteps) {
        throw Error(ErrorCode::NoConvergence, "step count would exceed 2^24 before reaching tolerance");
      }
      MatT current = product_at_level<MatT>(conn, path, base, level);
      out.steps += steps;
      const double diff = (current - previous).norm();
      if (diff < tol) {
        out.matrix = current;
        out.error = diff;
        out.level = level;
        return out;
      }
      previous = current;
    }
  });
}

}  // namespace

HolonomyResult parallel_transport(const ConnectionSpec& conn, const PathSpec& path, double tol) {
  Converged c = converge(conn, path, tol);
  HolonomyResult r;
  r.matrix = std::move(c.matrix);
  r.error_estimate = c.error;
  r.steps_used = c.steps;
  r.path_closed = path.closed();
  r.min_pole_distance = min_distance(path, conn.punctures());
  r.start = path.start();
  r.end = path.end();
  return r;
}

TransportTrajectory transport_trajectory(const ConnectionSpec& conn, const PathSpec& path,
                                         const Vector& v0, std::size_t n_out, double tol) {
  if (n_out < 2) throw Error(ErrorCode::InvalidArgument, "trajectory needs at least 2 samples");
  if (v0.size() != static_cast<Eigen::Index>(conn.rank())) {
    throw Error(ErrorCode::DimensionMismatch, "initial vector length differs from connection rank");
  }
  const Converged c = converge(conn, path, tol);
  const auto base = kernels::base_step_counts(conn, path);
  const auto& prims = path.primitives();
  const auto& breaks = path.breakpoints();

  TransportTrajectory out;
  out.reserve(n_out);
  out.push_back({0.0, v0});
  std::size_t next = 1;
  auto target = [&](std::size_t i) { return static_cast<double>(i) / static_cast<double>(n_out - 1); };

  // Same partition and arithmetic as the converged product; outputs that fall
  // inside a step take a partial step from its left edge.
  Vector v = v0;
  for (std::size_t k = 0; k < prims.size() && next < n_out; ++k) {
    const std::size_t n = base[k] << c.level;
    const double ds = 1.0 / static_cast<double>(n);
    const double width = breaks[k + 1] - breaks[k];
    for (std::size_t i = 0; i < n && next < n_out; ++i) {
      const double s0 = static_cast<double>(i) * ds;
      const double t0 = breaks[k] + s0 * width;
      const double t1 = (k + 1 == prims.size() && i + 1 == n) ? 1.0 : t0 + ds * width;
      while (next < n_out && target(next) <= t1) {
        const double frac = std::clamp((target(next) - t0) / (ds * width), 0.0, 1.0);
        const double sm = s0 + 0.5 * frac * ds;
        const Matrix g = conn.generator(primitive_point(prims[k], sm), primitive_derivative(prims[k], sm));
        out.push_back({target(next), expm(frac * ds * g) * v});
        ++next;
      }
      const double sm = s0 + 0.5 * ds;
      v = expm(ds * conn.generator(primitive_point(prims[k], sm), primitive_derivative(prims[k], sm))) * v;
    }
  }
  while (next < n_out) {
    out.push_back({target(next), v});
    ++next;
  }
  return out;
}

HolonomyResult compose_transport(const HolonomyResult& a, const HolonomyResult& b) {
  if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "composed transports differ in rank");
  }
  HolonomyResult r;
  r.matrix = b.matrix * a.matrix;
  r.error_estimate = a.error_estimate + b.error_estimate;
  r.steps_used = a.steps_used + b.steps_used;
  r.min_pole_distance = std::min(a.min_pole_distance, b.min_pole_distance);
  r.start = a.start;
  r.end = b.end;
  const double scale =
      std::max({1.0, std::abs(r.start.x), std::abs(r.start.y), std::abs(r.end.x), std::abs(r.end.y)});
  r.path_closed = distance(r.start, r.end) <= PathSpec::kClosureTolerance * scale;
  return r;
}

HolonomyResult identity_transport(std::size_t rank, PlanePoint at) {
  HolonomyResult r;
  const auto m = static_cast<Eigen::Index>(rank);
  r.matrix = Matrix::Identity(m, m);
  r.path_closed = true;
  r.min_pole_distance = std::numeric_limits<double>::infinity();
  r.start = at;
  r.end = at;
  return r;
}

}  // namespace holonomy
