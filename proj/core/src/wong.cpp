#include "holonomy/wong.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "holonomy/error.hpp"
#include "holonomy/oracle.hpp"
#include "holonomy/transport.hpp"
#include "kernels.hpp"

namespace holonomy {
namespace {

Eigen::VectorXcd eigenvalues(const Matrix& m) {
  if (m.rows() == 1) return m.diagonal();
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  return solver.eigenvalues();
}

void require_in_span(const LieBasis& basis, const Matrix& step) {
  double residual = 0.0;
  basis.components(step, residual);
  if (residual > kBasisResidualTol * std::max(1.0, step.norm())) {
    throw Error(ErrorCode::BasisMismatch, "connection generator leaves the span of the Lie basis");
  }
}

// Checks the coarsest-level step generators against the basis span.
void check_basis(const ConnectionSpec& conn, const LieBasis& basis, const PathSpec& path) {
  if (basis.rank() != conn.rank()) {
    throw Error(ErrorCode::DimensionMismatch, "Lie basis and connection differ in matrix size");
  }
  kernels::for_each_step<Matrix>(conn, path, kernels::base_step_counts(conn, path), 0,
                                 [&](const Matrix& step) { require_in_span(basis, step); });
}

struct TrialState {
  Matrix previous;
  bool done = false;
  WongResult result;
};

template <class MatT>
void batch_levels(const ConnectionSpec& conn, const LieBasis& basis, const std::vector<SpinState>& starts,
                  const PathSpec& path, double tol, std::vector<TrialState>& trials) {
  const auto base = kernels::base_step_counts(conn, path);
  const std::size_t base_total = std::accumulate(base.begin(), base.end(), std::size_t{0});
  std::vector<Eigen::VectorXcd> spectra;
  for (const auto& s : starts) spectra.push_back(eigenvalues(s.matrix));

  std::vector<MatT> state(starts.size());
  std::vector<double> drift(starts.size());
  for (int level = 0;; ++level) {
    const std::size_t total = base_total << level;
    if (total > kMaxSteps) throw Error(ErrorCode::NoConvergence, "Wong transport exceeded 2^24 steps");
    const std::size_t every = std::max<std::size_t>(1, total / kSpectralCheckpoints);
    for (std::size_t t = 0; t < starts.size(); ++t) {
      if (!trials[t].done) state[t] = starts[t].matrix;
      drift[t] = 0.0;
    }
    std::size_t index = 0;
    kernels::for_each_step<MatT>(conn, path, base, level, [&](const MatT& step) {
      const MatT forward = kernels::expm<MatT>(step);
      const MatT backward = kernels::expm<MatT>(MatT(-step));
      const bool checkpoint = ++index % every == 0 || index == total;
      for (std::size_t t = 0; t < starts.size(); ++t) {
        if (trials[t].done) continue;
        state[t] = forward * state[t] * backward;
        if (checkpoint) {
          drift[t] = std::max(drift[t], spectral_distance(spectra[t], eigenvalues(Matrix(state[t]))));
        }
      }
    });
    bool all_done = true;
    for (std::size_t t = 0; t < starts.size(); ++t) {
      auto& trial = trials[t];
      if (trial.done) continue;
      const Matrix current(state[t]);
      if (!all_finite(current)) throw Error(ErrorCode::NonFinite, "Wong transport overflowed");
      trial.result.steps_used += total;
      if (level > 0) {
        const double diff = (current - trial.previous).norm();
        if (diff < tol) {
          trial.done = true;
          trial.result.final_state = SpinState::from_matrix(basis, current);
          trial.result.spectral_drift = drift[t];
          trial.result.error_estimate = diff;
          continue;
        }
      }
      trial.previous = current;
      all_done = false;
    }
    if (all_done) return;
  }
}

}  // namespace

SpinState SpinState::from_components(const LieBasis& basis, const Vector& components) {
  return SpinState{basis.compose(components), components};
}

SpinState SpinState::from_matrix(const LieBasis& basis, const Matrix& matrix) {
  double residual = 0.0;
  Vector c = basis.components(matrix, residual);
  if (residual > kBasisResidualTol * std::max(1.0, matrix.norm())) {
    throw Error(ErrorCode::BasisMismatch, "matrix is not in the span of the Lie basis");
  }
  return SpinState{matrix, std::move(c)};
}

void check_spin_state(const LieBasis& basis, const SpinState& state) {
  if ((basis.compose(state.components) - state.matrix).norm() > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "spin components do not reproduce the spin matrix");
  }
}

double spectral_distance(const Eigen::VectorXcd& reference, const Eigen::VectorXcd& other) {
  std::vector<bool> used(static_cast<std::size_t>(other.size()), false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < reference.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index pick = -1;
    for (Eigen::Index j = 0; j < other.size(); ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double d = std::abs(reference(i) - other(j));
      if (d < best) {
        best = d;
        pick = j;
      }
    }
    if (pick >= 0) used[static_cast<std::size_t>(pick)] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<WongResult> wong_transport_batch(const ConnectionSpec& conn, const LieBasis& basis,
                                             const std::vector<SpinState>& starts,
                                             const PathSpec& path, double tol) {
  kernels::check_tolerance(tol);
  for (const auto& s : starts) check_spin_state(basis, s);
  kernels::check_clearance(conn, path);
  check_basis(conn, basis, path);

  std::vector<TrialState> trials(starts.size());
  if (!starts.empty()) {
    kernels::dispatch_rank(conn.rank(), [&](auto tag) {
      using MatT = typename decltype(tag)::type;
      batch_levels<MatT>(conn, basis, starts, path, tol, trials);
    });
  }
  std::vector<WongResult> out;
  for (auto& t : trials) out.push_back(std::move(t.result));
  return out;
}

WongResult wong_transport(const ConnectionSpec& conn, const LieBasis& basis, const SpinState& i0,
                          const PathSpec& path, double tol) {
  return std::move(wong_transport_batch(conn, basis, {i0}, path, tol).front());
}

WongComponents wong_transport_components(const ConnectionSpec& conn, const LieBasis& basis,
                                         const Vector& i0_components, const PathSpec& path,
                                         double tol) {
  kernels::check_tolerance(tol);
  if (static_cast<std::size_t>(i0_components.size()) != basis.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "component vector length differs from basis size");
  }
  kernels::check_clearance(conn, path);
  check_basis(conn, basis, path);
  const auto d = static_cast<Eigen::Index>(basis.dim());
  const auto base = kernels::base_step_counts(conn, path);
  const std::size_t base_total = std::accumulate(base.begin(), base.end(), std::size_t{0});
  const Matrix& pinv = basis.pseudo_inverse();

  // Per step, exponentiate K_{ac} = sum_b f^a_{bc} B^b with B the step's
  // coefficients in the basis.
  auto run = [&](int level) -> Vector {
    return kernels::dispatch_rank(basis.dim(), [&](auto tag) -> Vector {
      using KMat = typename decltype(tag)::type;
      using KVec = Eigen::Matrix<Complex, KMat::RowsAtCompileTime, 1>;
      KVec c = i0_components;
      KMat k(d, d);
      kernels::dispatch_rank(conn.rank(), [&](auto gtag) {
        using GMat = typename decltype(gtag)::type;
        kernels::for_each_step<GMat>(conn, path, base, level, [&](const GMat& step) {
          const Vector b = pinv * Eigen::Map<const Vector>(step.data(), step.size());
          for (Eigen::Index a = 0; a < d; ++a) {
            for (Eigen::Index cc = 0; cc < d; ++cc) {
              Complex sum = 0.0;
              for (Eigen::Index bb = 0; bb < d; ++bb) {
                sum += basis.f(static_cast<std::size_t>(a), static_cast<std::size_t>(bb),
                               static_cast<std::size_t>(cc)) * b(bb);
              }
              k(a, cc) = sum;
            }
          }
          c = kernels::expm<KMat>(k) * c;
        });
      });
      return Vector(c);
    });
  };

  Vector previous = run(0);
  for (int level = 1;; ++level) {
    if ((base_total << level) > kMaxSteps) {
      throw Error(ErrorCode::NoConvergence, "component Wong transport exceeded 2^24 steps");
    }
    Vector current = run(level);
    const double diff = (current - previous).norm();
    if (diff < tol) return WongComponents{std::move(current), diff};
    previous = std::move(current);
  }
}

AdRhoReport verify_ad_rho(const ConnectionSpec& conn, const LieBasis& basis, const PathSpec& path,
                          std::size_t trials, double tol, std::uint64_t seed) {
  if (!path.closed()) throw Error(ErrorCode::NonClosedPath, "Ad-rho check needs a closed path");
  AdRhoReport report;
  report.trials = trials;
  report.rho = parallel_transport(conn, path, tol).matrix;
  report.bound = 10.0 * (tol + tol) + 1e-8;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<SpinState> starts;
  for (std::size_t t = 0; t < trials; ++t) {
    Vector c(static_cast<Eigen::Index>(basis.dim()));
    for (Eigen::Index a = 0; a < c.size(); ++a) c(a) = unit(rng);
    starts.push_back(SpinState::from_components(basis, c));
  }
  const auto results = wong_transport_batch(conn, basis, starts, path, tol);
  for (std::size_t t = 0; t < trials; ++t) {
    const Matrix expected = oracle::conjugation_oracle(report.rho, starts[t].matrix);
    report.max_deviation = std::max(report.max_deviation, (results[t].final_state.matrix - expected).norm());
    report.max_spectral_drift = std::max(report.max_spectral_drift, results[t].spectral_drift);
  }
  report.pass = report.max_deviation < report.bound;
  return report;
}

double isospectrality_report(const WongResult& result) { return result.spectral_drift; }

}  // namespace holonomy
