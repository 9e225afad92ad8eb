#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holonomy/connection.hpp"
#include "holonomy/error.hpp"
#include "holonomy/geometry.hpp"
#include "holonomy/lie.hpp"

namespace holonomy::cli {

/// ParseError or ValidationError tagged with the 1-based line and the key.
class ConfigError : public Error {
 public:
  ConfigError(ErrorCode code, int line, std::string key, const std::string& message);

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

struct Tolerances {
  double transport_tol = 1e-9;
  double guard = ConnectionSpec::kDefaultGuard;
};

struct TransportSettings {
  std::optional<std::string> path;
  std::optional<Vector> v0;
  std::size_t samples = 101;
};

struct WongSettings {
  std::optional<LieBasis> basis;
  std::optional<Vector> i0;
  std::optional<std::string> path;
  std::size_t trials = 20;
};

struct SceneConfig {
  ConnectionSpec connection;
  std::vector<std::string> path_order;
  std::map<std::string, PathSpec> paths;
  std::optional<PlanePoint> basepoint;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  std::optional<GridRegion> region;
  TransportSettings transport;
  WongSettings wong;
  std::optional<Matrix> vacuum_matrix;

  const PathSpec& path(const std::string& name) const;
};

SceneConfig parse_config(const std::string& text);
SceneConfig load_config(const std::string& file);

/// A matrix written as rows of [re, im] pairs (a bare number is a real entry).
Matrix parse_matrix_text(const std::string& text);

}  // namespace holonomy::cli
