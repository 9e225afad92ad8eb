#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "holonomy/linalg.hpp"

namespace holonomy {

/// A point of the plane, identified with z = x + iy.
struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  Complex z() const { return {x, y}; }
  static PlanePoint from(Complex z) { return {z.real(), z.imag()}; }
};

double distance(PlanePoint a, PlanePoint b);

/// Labelled, pairwise distinct points removed from the plane.
class PunctureSet {
 public:
  static constexpr double kMinSeparation = 1e-9;

  PunctureSet() = default;
  /// Labels default to p1, p2, ... when empty.
  explicit PunctureSet(std::vector<PlanePoint> points, std::vector<std::string> labels = {});

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<PlanePoint>& points() const { return points_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<PlanePoint> points_;
  std::vector<std::string> labels_;
};

struct Segment {
  PlanePoint from;
  PlanePoint to;
};

/// Circular arc c + r exp(i(start_angle + sweep s)), s in [0, 1].
struct Arc {
  PlanePoint center;
  double radius = 1.0;
  double start_angle = 0.0;
  double sweep = kTwoPi;
};

using Primitive = std::variant<Segment, Arc>;

PlanePoint primitive_point(const Primitive& p, double s);
/// d/ds of primitive_point.
PlanePoint primitive_derivative(const Primitive& p, double s);
double primitive_length(const Primitive& p);
Primitive reversed(const Primitive& p);

struct PathSample {
  double t;
  PlanePoint point;
  PlanePoint velocity;
};

/// Piecewise-smooth path t in [0, 1] -> plane. The parameter is proportional
/// to arc length over the whole path, so the speed equals length().
class PathSpec {
 public:
  static constexpr double kClosureTolerance = 1e-12;

  /// Zero-length segments are dropped.
  static PathSpec polyline(std::span<const PlanePoint> points);
  /// turns > 0 winds counterclockwise.
  static PathSpec circle(PlanePoint center, double radius, int turns, double start_angle = 0.0);
  static PathSpec concat(std::span<const PathSpec> parts);
  /// Primitives must be endpoint-contiguous.
  static PathSpec from_primitives(std::vector<Primitive> primitives);

  const std::vector<Primitive>& primitives() const { return primitives_; }
  /// t-values of the primitive boundaries, from 0 to 1.
  const std::vector<double>& breakpoints() const { return breaks_; }

  double length() const { return length_; }
  PlanePoint start() const;
  PlanePoint end() const;
  bool closed() const;

  PlanePoint position(double t) const;
  PlanePoint velocity(double t) const;

 private:
  explicit PathSpec(std::vector<Primitive> primitives);
  std::size_t locate(double t, double& s) const;

  std::vector<Primitive> primitives_;
  std::vector<double> breaks_;
  double length_ = 0.0;
};

std::vector<PathSample> sample_path(const PathSpec& path, std::size_t n);

/// Signed number of counterclockwise turns of a closed path about p.
int winding_number(const PathSpec& loop, PlanePoint p);

PathSpec reverse(const PathSpec& path);
PathSpec concat(const PathSpec& a, const PathSpec& b);

/// Distance from the path to the nearest puncture; +infinity when there are
/// none. Segment and arc distances are computed in closed form.
double min_distance(const PathSpec& path, const PunctureSet& punctures);
double min_distance(const PathSpec& path, PlanePoint p);

}  // namespace holonomy
