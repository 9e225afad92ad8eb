#include "holonomy/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "holonomy/error.hpp"

namespace holonomy {
namespace {

bool finite(PlanePoint p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double closure_scale(PlanePoint a, PlanePoint b) {
  return std::max({1.0, std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y)});
}

bool coincide(PlanePoint a, PlanePoint b) {
  return distance(a, b) <= PathSpec::kClosureTolerance * closure_scale(a, b);
}

double segment_distance(const Segment& seg, PlanePoint p) {
  const Complex a = seg.from.z();
  const Complex d = seg.to.z() - a;
  const double len2 = std::norm(d);
  double s = len2 > 0.0 ? ((p.z() - a) * std::conj(d)).real() / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p.z() - (a + s * d));
}

double arc_distance(const Arc& arc, PlanePoint p) {
  const Complex rel = p.z() - arc.center.z();
  const double rho = std::abs(rel);
  if (std::abs(arc.sweep) >= kTwoPi || rho == 0.0) return std::abs(rho - arc.radius);
  // Angle of p measured from the arc start, in the direction of travel.
  const double lo = std::min(arc.start_angle, arc.start_angle + arc.sweep);
  double phi = std::arg(rel) - lo;
  phi -= kTwoPi * std::floor(phi / kTwoPi);
  if (phi <= std::abs(arc.sweep)) return std::abs(rho - arc.radius);
  return std::min(distance(p, primitive_point(arc, 0.0)), distance(p, primitive_point(arc, 1.0)));
}

double primitive_distance(const Primitive& prim, PlanePoint p) {
  return std::visit(
      [&](const auto& q) {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Segment>) {
          return segment_distance(q, p);
        } else {
          return arc_distance(q, p);
        }
      },
      prim);
}

}  // namespace

double distance(PlanePoint a, PlanePoint b) { return std::hypot(a.x - b.x, a.y - b.y); }

PunctureSet::PunctureSet(std::vector<PlanePoint> points, std::vector<std::string> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  if (labels_.empty()) {
    for (std::size_t i = 0; i < points_.size(); ++i) labels_.push_back("p" + std::to_string(i + 1));
  }
  if (labels_.size() != points_.size()) {
    throw Error(ErrorCode::InvalidArgument, "puncture labels and points differ in count");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!finite(points_[i])) throw Error(ErrorCode::NonFinite, "puncture " + labels_[i]);
    if (!seen.insert(labels_[i]).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate puncture label " + labels_[i]);
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (distance(points_[i], points_[j]) <= kMinSeparation) {
        throw Error(ErrorCode::InvalidArgument,
                    "punctures " + labels_[j] + " and " + labels_[i] + " coincide");
      }
    }
  }
}

PlanePoint primitive_point(const Primitive& p, double s) {
  if (const auto* seg = std::get_if<Segment>(&p)) {
    return {seg->from.x + s * (seg->to.x - seg->from.x), seg->from.y + s * (seg->to.y - seg->from.y)};
  }
  const auto& arc = std::get<Arc>(p);
  const double theta = arc.start_angle + arc.sweep * s;
  return {arc.center.x + arc.radius * std::cos(theta), arc.center.y + arc.radius * std::sin(theta)};
}

PlanePoint primitive_derivative(const Primitive& p, double s) {
  if (const auto* seg = std::get_if<Segment>(&p)) {
    return {seg->to.x - seg->from.x, seg->to.y - seg->from.y};
  }
  const auto& arc = std::get<Arc>(p);
  const double theta = arc.start_angle + arc.sweep * s;
  const double w = arc.radius * arc.sweep;
  return {-w * std::sin(theta), w * std::cos(theta)};
}

double primitive_length(const Primitive& p) {
  if (const auto* seg = std::get_if<Segment>(&p)) return distance(seg->from, seg->to);
  const auto& arc = std::get<Arc>(p);
  return arc.radius * std::abs(arc.sweep);
}

Primitive reversed(const Primitive& p) {
  if (const auto* seg = std::get_if<Segment>(&p)) return Segment{seg->to, seg->from};
  const auto& arc = std::get<Arc>(p);
  return Arc{arc.center, arc.radius, arc.start_angle + arc.sweep, -arc.sweep};
}

PathSpec::PathSpec(std::vector<Primitive> primitives) : primitives_(std::move(primitives)) {
  if (primitives_.empty()) throw Error(ErrorCode::InvalidPath, "path has no extent");
  std::vector<double> lengths;
  for (const auto& p : primitives_) {
    lengths.push_back(primitive_length(p));
    length_ += lengths.back();
  }
  if (!(length_ > 0.0) || !std::isfinite(length_)) {
    throw Error(ErrorCode::InvalidPath, "path length must be positive and finite");
  }
  breaks_.push_back(0.0);
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < lengths.size(); ++k) {
    acc += lengths[k];
    breaks_.push_back(acc / length_);
  }
  breaks_.push_back(1.0);
}

PathSpec PathSpec::polyline(std::span<const PlanePoint> points) {
  if (points.size() < 2) throw Error(ErrorCode::InvalidPath, "polyline needs at least 2 points");
  std::vector<Primitive> prims;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!finite(points[i])) throw Error(ErrorCode::NonFinite, "polyline vertex");
    if (i > 0 && distance(points[i - 1], points[i]) > 0.0) {
      prims.emplace_back(Segment{points[i - 1], points[i]});
    }
  }
  return PathSpec(std::move(prims));
}

PathSpec PathSpec::circle(PlanePoint center, double radius, int turns, double start_angle) {
  if (!finite(center) || !std::isfinite(start_angle)) {
    throw Error(ErrorCode::NonFinite, "circle parameters");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidPath, "circle radius must be positive");
  }
  if (turns == 0) throw Error(ErrorCode::InvalidPath, "circle turns must be nonzero");
  return PathSpec({Arc{center, radius, start_angle, kTwoPi * turns}});
}

PathSpec PathSpec::concat(std::span<const PathSpec> parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidPath, "concat of no paths");
  std::vector<Primitive> prims;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0 && !coincide(parts[i - 1].end(), parts[i].start())) {
      throw Error(ErrorCode::NonContiguous,
                  "part " + std::to_string(i) + " does not start where part " +
                      std::to_string(i - 1) + " ends");
    }
    prims.insert(prims.end(), parts[i].primitives_.begin(), parts[i].primitives_.end());
  }
  return PathSpec(std::move(prims));
}

PathSpec PathSpec::from_primitives(std::vector<Primitive> primitives) {
  for (std::size_t i = 1; i < primitives.size(); ++i) {
    if (!coincide(primitive_point(primitives[i - 1], 1.0), primitive_point(primitives[i], 0.0))) {
      throw Error(ErrorCode::NonContiguous, "primitive " + std::to_string(i) + " is detached");
    }
  }
  for (const auto& p : primitives) {
    if (const auto* arc = std::get_if<Arc>(&p)) {
      if (!(arc->radius > 0.0) || arc->sweep == 0.0) {
        throw Error(ErrorCode::InvalidPath, "degenerate arc");
      }
    }
  }
  return PathSpec(std::move(primitives));
}

PlanePoint PathSpec::start() const { return primitive_point(primitives_.front(), 0.0); }
PlanePoint PathSpec::end() const { return primitive_point(primitives_.back(), 1.0); }
bool PathSpec::closed() const { return coincide(start(), end()); }

std::size_t PathSpec::locate(double t, double& s) const {
  t = std::clamp(t, 0.0, 1.0);
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  std::size_t k = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
  k = std::min(k, primitives_.size() - 1);
  const double width = breaks_[k + 1] - breaks_[k];
  s = width > 0.0 ? std::clamp((t - breaks_[k]) / width, 0.0, 1.0) : 0.0;
  return k;
}

PlanePoint PathSpec::position(double t) const {
  double s = 0.0;
  const std::size_t k = locate(t, s);
  return primitive_point(primitives_[k], s);
}

PlanePoint PathSpec::velocity(double t) const {
  double s = 0.0;
  const std::size_t k = locate(t, s);
  const double width = breaks_[k + 1] - breaks_[k];
  const PlanePoint d = primitive_derivative(primitives_[k], s);
  return {d.x / width, d.y / width};
}

std::vector<PathSample> sample_path(const PathSpec& path, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "sample_path needs n >= 2");
  std::vector<PathSample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back({t, path.position(t), path.velocity(t)});
  }
  return out;
}

int winding_number(const PathSpec& loop, PlanePoint p) {
  if (!loop.closed()) throw Error(ErrorCode::NonClosedPath, "winding number of an open path");
  if (min_distance(loop, p) <= PunctureSet::kMinSeparation) {
    throw Error(ErrorCode::PointOnPath, "point lies on the loop");
  }
  // Refine until every chord is shorter than its endpoints' distance to p
  // (the inscribed polygon is then homotopic to the loop in the punctured
  // plane) and the summed angle sits within 0.01 of an integer.
  for (std::size_t n = 64; n <= (std::size_t{1} << 24); n *= 2) {
    double total = 0.0;
    bool resolved = true;
    for (const auto& prim : loop.primitives()) {
      Complex prev = primitive_point(prim, 0.0).z() - p.z();
      for (std::size_t i = 1; i <= n; ++i) {
        const Complex cur =
            primitive_point(prim, static_cast<double>(i) / static_cast<double>(n)).z() - p.z();
        const double chord = primitive_length(prim) / static_cast<double>(n);
        if (chord >= std::min(std::abs(prev), std::abs(cur))) resolved = false;
        total += std::arg(cur / prev);
        prev = cur;
      }
    }
    const double turns = total / kTwoPi;
    const double rounded = std::round(turns);
    if (resolved && std::abs(turns - rounded) < 0.01) return static_cast<int>(rounded);
  }
  throw Error(ErrorCode::NoConvergence, "winding number did not resolve");
}

PathSpec reverse(const PathSpec& path) {
  std::vector<Primitive> prims;
  const auto& src = path.primitives();
  for (auto it = src.rbegin(); it != src.rend(); ++it) prims.push_back(reversed(*it));
  return PathSpec::from_primitives(std::move(prims));
}

PathSpec concat(const PathSpec& a, const PathSpec& b) {
  const PathSpec parts[] = {a, b};
  return PathSpec::concat(parts);
}

double min_distance(const PathSpec& path, PlanePoint p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& prim : path.primitives()) best = std::min(best, primitive_distance(prim, p));
  return best;
}

double min_distance(const PathSpec& path, const PunctureSet& punctures) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : punctures.points()) best = std::min(best, min_distance(path, p));
  return best;
}

}  // namespace holonomy
