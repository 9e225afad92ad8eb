#include "holonomy/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holonomy/error.hpp"
#include "holonomy/parallel.hpp"
#include "holonomy/transport.hpp"

namespace holonomy {
namespace {

constexpr double kMaxLassoRadius = 0.5;
constexpr double kCommuteTol = 1e-10;

PlanePoint spoke_tip(PlanePoint base, PlanePoint center, double radius) {
  const Complex dir = base.z() - center.z();
  return PlanePoint::from(center.z() + radius * dir / std::abs(dir));
}

// Smallest ratio (distance from spoke j to puncture k) / r_k over k != j.
double spoke_score(const PunctureSet& punctures, const std::vector<double>& radii, PlanePoint base) {
  double score = std::numeric_limits<double>::infinity();
  const auto& pts = punctures.points();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const double d = distance(base, pts[j]);
    if (d <= radii[j]) return 0.0;
    const PlanePoint seg[] = {base, spoke_tip(base, pts[j], radii[j])};
    const PathSpec spoke = PathSpec::polyline(seg);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k != j) score = std::min(score, min_distance(spoke, pts[k]) / radii[k]);
    }
  }
  return score;
}

}  // namespace

std::vector<double> lasso_radii(const PunctureSet& punctures) {
  const auto& pts = punctures.points();
  std::vector<double> radii(pts.size(), kMaxLassoRadius);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k != j) radii[j] = std::min(radii[j], 0.5 * distance(pts[j], pts[k]));
    }
    if (radii[j] < ConnectionSpec::kDefaultGuard) {
      throw Error(ErrorCode::DegenerateConfiguration,
                  "puncture " + punctures.labels()[j] + " is too close to its neighbour for a lasso");
    }
  }
  return radii;
}

PlanePoint default_basepoint(const PunctureSet& punctures) {
  if (punctures.empty()) return {0.0, 0.0};
  const auto& pts = punctures.points();
  double xmin = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const auto radii = lasso_radii(punctures);
  const double mid = 0.5 * (ymin + ymax);
  const double spread = std::max(1.0, ymax - ymin);
  PlanePoint best{xmin - 1.0, mid};
  double best_score = spoke_score(punctures, radii, best);
  // Candidate heights mid, mid +- spread/16, mid +- 2 spread/16, ...
  for (int k = 1; k <= 32 && best_score < 2.0; ++k) {
    for (int sign : {1, -1}) {
      const PlanePoint cand{xmin - 1.0, mid + sign * k * spread / 16.0};
      const double score = spoke_score(punctures, radii, cand);
      if (score > best_score + 1e-12) {
        best = cand;
        best_score = score;
      }
    }
  }
  return best;
}

std::map<std::string, PathSpec> generator_loops(const PunctureSet& punctures,
                                                std::optional<PlanePoint> basepoint) {
  const auto radii = lasso_radii(punctures);
  const PlanePoint base = basepoint.value_or(default_basepoint(punctures));
  const auto& pts = punctures.points();
  std::map<std::string, PathSpec> loops;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (distance(base, pts[j]) <= radii[j]) {
      throw Error(ErrorCode::DegenerateConfiguration,
                  "basepoint lies inside the lasso disc of " + punctures.labels()[j]);
    }
    const PlanePoint tip = spoke_tip(base, pts[j], radii[j]);
    const PlanePoint seg[] = {base, tip};
    const PathSpec spoke = PathSpec::polyline(seg);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k != j && min_distance(spoke, pts[k]) <= PunctureSet::kMinSeparation) {
        throw Error(ErrorCode::DegenerateConfiguration,
                    "spoke to " + punctures.labels()[j] + " runs through " + punctures.labels()[k]);
      }
    }
    const double angle = std::arg(tip.z() - pts[j].z());
    const PathSpec parts[] = {spoke, PathSpec::circle(pts[j], radii[j], 1, angle), reverse(spoke)};
    loops.emplace(punctures.labels()[j], PathSpec::concat(parts));
  }
  return loops;
}

Representation monodromy_representation(const ConnectionSpec& conn,
                                         std::optional<PlanePoint> basepoint, double tol,
                                         bool assume_flat) {
  if (conn.is_custom() && !assume_flat) {
    throw Error(ErrorCode::FlatnessNotAcknowledged,
                "custom connections need an explicit flatness acknowledgment");
  }
  Representation rep;
  rep.rank = conn.rank();
  rep.basepoint = basepoint.value_or(default_basepoint(conn.punctures()));
  const auto loops = generator_loops(conn.punctures(), rep.basepoint);

  std::vector<std::pair<std::string, const PathSpec*>> jobs;
  for (const auto& [label, loop] : loops) jobs.emplace_back(label, &loop);
  std::vector<HolonomyResult> results(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) { results[i] = parallel_transport(conn, *jobs[i].second, tol); });
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    rep.generators.emplace(jobs[i].first, std::move(results[i].matrix));
    rep.error_estimates.emplace(jobs[i].first, results[i].error_estimate);
  }
  return rep;
}

Matrix abelian_oracle(std::span<const Matrix> residues, std::span<const int> windings) {
  if (residues.size() != windings.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one winding number per residue required");
  }
  if (residues.empty()) throw Error(ErrorCode::InvalidArgument, "no residues given");
  const auto m = residues.front().rows();
  Matrix sum = Matrix::Zero(m, m);
  for (std::size_t j = 0; j < residues.size(); ++j) {
    if (residues[j].rows() != m || residues[j].cols() != m) {
      throw Error(ErrorCode::DimensionMismatch, "residues differ in size");
    }
    for (std::size_t k = 0; k < j; ++k) {
      if (commutator(residues[j], residues[k]).norm() > kCommuteTol) {
        throw Error(ErrorCode::NonCommutingResidues,
                    "residues " + std::to_string(k) + " and " + std::to_string(j) + " do not commute");
      }
    }
    sum += static_cast<double>(windings[j]) * residues[j];
  }
  return expm(Complex(0.0, kTwoPi) * sum);
}

Matrix evaluate_word(const Representation& rep, const LoopWord& word) {
  const auto m = static_cast<Eigen::Index>(rep.rank);
  Matrix out = Matrix::Identity(m, m);
  for (const auto& letter : word) {
    const auto it = rep.generators.find(letter.label);
    if (it == rep.generators.end()) throw Error(ErrorCode::UnknownLabel, letter.label);
    if (letter.exponent == 1) {
      out = it->second * out;
    } else if (letter.exponent == -1) {
      Eigen::FullPivLU<Matrix> lu(it->second);
      if (!lu.isInvertible()) throw Error(ErrorCode::Singular, "generator " + letter.label);
      out = lu.inverse() * out;
    } else {
      throw Error(ErrorCode::InvalidArgument, "word exponents must be +1 or -1");
    }
  }
  return out;
}

AbPhase ab_phase_predict(std::span<const double> fluxes, const PathSpec& loop,
                         const PunctureSet& punctures) {
  if (fluxes.size() != punctures.size()) {
    throw Error(ErrorCode::InvalidArgument, "one flux per puncture required");
  }
  AbPhase out;
  double total = 0.0;
  for (std::size_t j = 0; j < punctures.size(); ++j) {
    out.windings.push_back(winding_number(loop, punctures.points()[j]));
    total += out.windings.back() * fluxes[j];
  }
  out.phase = std::exp(Complex(0.0, -total));
  return out;
}

}  // namespace holonomy
