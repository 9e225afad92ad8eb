#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "holonomy/monodromy.hpp"
#include "holonomy/transport.hpp"

namespace holonomy::cli {
namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

[[noreturn]] void parse_fail(const YAML::Node& n, const std::string& key, const std::string& msg) {
  throw ConfigError(ErrorCode::ParseError, line_of(n), key, msg);
}

[[noreturn]] void invalid(const YAML::Node& n, const std::string& key, const std::string& msg) {
  throw ConfigError(ErrorCode::ValidationError, line_of(n), key, msg);
}

void check_keys(const YAML::Node& map, const std::string& context, const std::set<std::string>& allowed) {
  if (!map.IsMap()) parse_fail(map, context, "expected a table");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) parse_fail(kv.first, context + "." + key, "unknown key '" + key + "'");
  }
}

YAML::Node required(const YAML::Node& map, const std::string& key, const std::string& context) {
  const YAML::Node n = map[key];
  if (!n) parse_fail(map, context + "." + key, "missing key '" + key + "'");
  return n;
}

double as_real(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) parse_fail(n, key, "expected a number");
  try {
    return n.as<double>();
  } catch (const YAML::Exception&) {
    parse_fail(n, key, "expected a number, found '" + n.Scalar() + "'");
  }
}

long long as_integer(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) parse_fail(n, key, "expected an integer");
  try {
    return n.as<long long>();
  } catch (const YAML::Exception&) {
    parse_fail(n, key, "expected an integer, found '" + n.Scalar() + "'");
  }
}

std::size_t as_count(const YAML::Node& n, const std::string& key) {
  const long long v = as_integer(n, key);
  if (v < 0) invalid(n, key, "must be nonnegative");
  return static_cast<std::size_t>(v);
}

PlanePoint as_point(const YAML::Node& n, const std::string& key) {
  if (!n.IsSequence() || n.size() != 2) parse_fail(n, key, "expected a point [x, y]");
  return {as_real(n[0], key), as_real(n[1], key)};
}

Complex as_complex(const YAML::Node& n, const std::string& key) {
  if (n.IsScalar()) return {as_real(n, key), 0.0};
  if (!n.IsSequence() || n.size() != 2) parse_fail(n, key, "expected a complex number [re, im]");
  return {as_real(n[0], key), as_real(n[1], key)};
}

Matrix as_matrix(const YAML::Node& n, const std::string& key) {
  if (!n.IsSequence() || n.size() == 0) parse_fail(n, key, "expected a matrix (rows of [re, im] pairs)");
  const std::size_t rows = n.size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    const YAML::Node row = n[i];
    if (!row.IsSequence()) parse_fail(row, key, "matrix row must be a list");
    if (row.size() != rows) invalid(row, key, "matrix must be square");
    for (std::size_t j = 0; j < rows; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = as_complex(row[j], key);
    }
  }
  return m;
}

Vector as_vector(const YAML::Node& n, const std::string& key) {
  if (!n.IsSequence() || n.size() == 0) parse_fail(n, key, "expected a list of numbers");
  Vector v(static_cast<Eigen::Index>(n.size()));
  for (std::size_t i = 0; i < n.size(); ++i) v(static_cast<Eigen::Index>(i)) = as_complex(n[i], key);
  return v;
}

PunctureSet as_punctures(const YAML::Node& n, const std::string& key) {
  if (!n.IsSequence()) parse_fail(n, key, "expected a list of punctures");
  std::vector<PlanePoint> points;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const YAML::Node p = n[i];
    if (p.IsSequence()) {
      points.push_back(as_point(p, key));
      labels.push_back("p" + std::to_string(i + 1));
      continue;
    }
    check_keys(p, key, {"label", "at"});
    points.push_back(as_point(required(p, "at", key), key + ".at"));
    labels.push_back(p["label"] ? p["label"].as<std::string>() : "p" + std::to_string(i + 1));
  }
  try {
    return PunctureSet(std::move(points), std::move(labels));
  } catch (const Error& e) {
    invalid(n, key, e.what());
  }
}

// sum_k coeff_k x^px_k y^py_k
std::function<Matrix(PlanePoint)> as_polynomial_field(const YAML::Node& n, const std::string& key,
                                                      std::size_t rank) {
  if (!n.IsSequence()) parse_fail(n, key, "expected a list of {coeff, x, y} terms");
  struct Term {
    Matrix coeff;
    int px;
    int py;
  };
  std::vector<Term> terms;
  for (const auto& t : n) {
    check_keys(t, key, {"coeff", "x", "y"});
    Term term{as_matrix(required(t, "coeff", key), key + ".coeff"),
              t["x"] ? static_cast<int>(as_count(t["x"], key + ".x")) : 0,
              t["y"] ? static_cast<int>(as_count(t["y"], key + ".y")) : 0};
    if (term.coeff.rows() != static_cast<Eigen::Index>(rank)) {
      invalid(t, key + ".coeff", "coefficient size differs from rank " + std::to_string(rank));
    }
    terms.push_back(std::move(term));
  }
  return [terms, rank](PlanePoint p) {
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(rank), static_cast<Eigen::Index>(rank));
    for (const auto& t : terms) out += t.coeff * (std::pow(p.x, t.px) * std::pow(p.y, t.py));
    return out;
  };
}

ConnectionSpec as_connection(const YAML::Node& n, double guard) {
  const std::string ctx = "connection";
  if (!n.IsMap()) parse_fail(n, ctx, "expected a table");
  const std::string type = required(n, "type", ctx).as<std::string>();
  try {
    if (type == "multi_solenoid") {
      check_keys(n, ctx, {"type", "punctures", "fluxes"});
      PunctureSet punctures = as_punctures(required(n, "punctures", ctx), ctx + ".punctures");
      const YAML::Node fl = required(n, "fluxes", ctx);
      if (!fl.IsSequence()) parse_fail(fl, ctx + ".fluxes", "expected a list of fluxes");
      std::vector<double> fluxes;
      for (const auto& f : fl) fluxes.push_back(as_real(f, ctx + ".fluxes"));
      if (fluxes.size() != punctures.size()) {
        invalid(fl, ctx + ".fluxes",
                "has " + std::to_string(fluxes.size()) + " entries for " +
                    std::to_string(punctures.size()) + " punctures");
      }
      return ConnectionSpec(MultiSolenoid{std::move(punctures), std::move(fluxes)}, guard);
    }
    if (type == "fuchsian") {
      check_keys(n, ctx, {"type", "punctures", "residues", "polynomial"});
      PunctureSet punctures =
          n["punctures"] ? as_punctures(n["punctures"], ctx + ".punctures") : PunctureSet{};
      std::vector<Matrix> residues, poly;
      if (n["residues"]) {
        if (!n["residues"].IsSequence()) parse_fail(n["residues"], ctx + ".residues", "expected a list");
        for (const auto& r : n["residues"]) residues.push_back(as_matrix(r, ctx + ".residues"));
      }
      if (n["polynomial"]) {
        if (!n["polynomial"].IsSequence()) parse_fail(n["polynomial"], ctx + ".polynomial", "expected a list");
        for (const auto& p : n["polynomial"]) poly.push_back(as_matrix(p, ctx + ".polynomial"));
      }
      if (residues.size() != punctures.size()) {
        invalid(n["residues"] ? n["residues"] : n, ctx + ".residues",
                "has " + std::to_string(residues.size()) + " entries for " +
                    std::to_string(punctures.size()) + " punctures");
      }
      return ConnectionSpec(FuchsianLog{std::move(punctures), std::move(residues), std::move(poly)}, guard);
    }
    if (type == "aharonov_casher") {
      check_keys(n, ctx, {"type", "lambda"});
      return ConnectionSpec(AharonovCasher{as_real(required(n, "lambda", ctx), ctx + ".lambda")}, guard);
    }
    if (type == "constant_field") {
      check_keys(n, ctx, {"type", "b"});
      return ConnectionSpec(ConstantField{as_real(required(n, "b", ctx), ctx + ".b")}, guard);
    }
    if (type == "custom") {
      check_keys(n, ctx, {"type", "rank", "a1", "a2", "punctures"});
      const std::size_t rank = as_count(required(n, "rank", ctx), ctx + ".rank");
      if (rank == 0) invalid(n["rank"], ctx + ".rank", "must be positive");
      CustomSampler custom{rank, as_polynomial_field(required(n, "a1", ctx), ctx + ".a1", rank),
                           as_polynomial_field(required(n, "a2", ctx), ctx + ".a2", rank),
                           n["punctures"] ? as_punctures(n["punctures"], ctx + ".punctures") : PunctureSet{}};
      return ConnectionSpec(std::move(custom), guard);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    invalid(n, ctx, e.what());
  }
  parse_fail(n["type"], ctx + ".type", "unknown connection type '" + type + "'");
}

class PathResolver {
 public:
  PathResolver(const YAML::Node& paths, const ConnectionSpec& conn, std::optional<PlanePoint> basepoint)
      : paths_(paths), conn_(conn), basepoint_(basepoint) {}

  PathSpec resolve_named(const std::string& name, const YAML::Node& where) {
    if (auto it = done_.find(name); it != done_.end()) return it->second;
    const YAML::Node def = paths_[name];
    if (!def) invalid(where, "paths." + name, "references undefined path '" + name + "'");
    if (!visiting_.insert(name).second) invalid(where, "paths." + name, "path definitions form a cycle");
    PathSpec p = build(def, "paths." + name);
    visiting_.erase(name);
    done_.emplace(name, p);
    return p;
  }

  PathSpec build(const YAML::Node& n, const std::string& key) {
    if (n.IsScalar()) return resolve_named(n.Scalar(), n);
    if (!n.IsMap()) parse_fail(n, key, "expected a path table or a path name");
    const std::string type = required(n, "type", key).as<std::string>();
    try {
      if (type == "circle") {
        check_keys(n, key, {"type", "center", "radius", "turns", "start_angle"});
        const PlanePoint c = n["center"] ? as_point(n["center"], key + ".center") : PlanePoint{};
        const double r = as_real(required(n, "radius", key), key + ".radius");
        const long long turns = n["turns"] ? as_integer(n["turns"], key + ".turns") : 1;
        const double a0 = n["start_angle"] ? as_real(n["start_angle"], key + ".start_angle") : 0.0;
        return PathSpec::circle(c, r, static_cast<int>(turns), a0);
      }
      if (type == "polyline") {
        check_keys(n, key, {"type", "points"});
        const YAML::Node pts = required(n, "points", key);
        if (!pts.IsSequence()) parse_fail(pts, key + ".points", "expected a list of points");
        std::vector<PlanePoint> points;
        for (const auto& p : pts) points.push_back(as_point(p, key + ".points"));
        return PathSpec::polyline(points);
      }
      if (type == "concat") {
        check_keys(n, key, {"type", "parts"});
        const YAML::Node parts = required(n, "parts", key);
        if (!parts.IsSequence()) parse_fail(parts, key + ".parts", "expected a list of paths");
        std::vector<PathSpec> built;
        for (const auto& p : parts) built.push_back(build(p, key + ".parts"));
        return PathSpec::concat(built);
      }
      if (type == "generator") {
        check_keys(n, key, {"type", "puncture"});
        const std::string label = required(n, "puncture", key).as<std::string>();
        const auto loops = generator_loops(conn_.punctures(), basepoint_);
        const auto it = loops.find(label);
        if (it == loops.end()) invalid(n["puncture"], key + ".puncture", "no puncture labelled '" + label + "'");
        return it->second;
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      invalid(n, key, e.what());
    }
    parse_fail(n["type"], key + ".type", "unknown path type '" + type + "'");
  }

 private:
  YAML::Node paths_;
  const ConnectionSpec& conn_;
  std::optional<PlanePoint> basepoint_;
  std::map<std::string, PathSpec> done_;
  std::set<std::string> visiting_;
};

LieBasis as_basis(const YAML::Node& n, const std::string& key) {
  if (n.IsScalar()) {
    if (n.Scalar() == "su2") return LieBasis::su2();
    if (n.Scalar() == "u1") return LieBasis::u1();
    parse_fail(n, key, "unknown basis '" + n.Scalar() + "'");
  }
  check_keys(n, key, {"generators"});
  const YAML::Node gens = required(n, "generators", key);
  if (!gens.IsSequence()) parse_fail(gens, key + ".generators", "expected a list of matrices");
  std::vector<Matrix> out;
  for (const auto& g : gens) out.push_back(as_matrix(g, key + ".generators"));
  try {
    return LieBasis::from_generators(std::move(out));
  } catch (const Error& e) {
    invalid(n, key, e.what());
  }
}

SceneConfig from_yaml(const YAML::Node& root) {
  check_keys(root, "config",
             {"connection", "paths", "basepoint", "tolerances", "seed", "region", "transport", "wong", "vacuum"});

  Tolerances tol;
  if (const YAML::Node t = root["tolerances"]) {
    check_keys(t, "tolerances", {"transport_tol", "guard"});
    if (t["transport_tol"]) tol.transport_tol = as_real(t["transport_tol"], "tolerances.transport_tol");
    if (t["guard"]) tol.guard = as_real(t["guard"], "tolerances.guard");
    if (!(tol.transport_tol >= kMinTolerance && tol.transport_tol <= kMaxTolerance)) {
      invalid(t["transport_tol"], "tolerances.transport_tol", "must lie in [1e-13, 1e-2]");
    }
    if (!(tol.guard > 0.0)) invalid(t["guard"], "tolerances.guard", "must be positive");
  }

  SceneConfig cfg{as_connection(required(root, "connection", "config"), tol.guard)};
  cfg.tolerances = tol;
  if (root["basepoint"]) cfg.basepoint = as_point(root["basepoint"], "basepoint");
  if (root["seed"]) {
    const long long seed = as_integer(root["seed"], "seed");
    if (seed < 0) invalid(root["seed"], "seed", "must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(seed);
  }

  if (const YAML::Node paths = root["paths"]) {
    if (!paths.IsMap()) parse_fail(paths, "paths", "expected a table of named paths");
    PathResolver resolver(paths, cfg.connection, cfg.basepoint);
    for (const auto& kv : paths) {
      const std::string name = kv.first.as<std::string>();
      cfg.path_order.push_back(name);
      cfg.paths.emplace(name, resolver.resolve_named(name, kv.first));
    }
  }
  auto check_path_ref = [&](const YAML::Node& n, const std::string& key) {
    const std::string name = n.as<std::string>();
    if (!cfg.paths.count(name)) invalid(n, key, "references undefined path '" + name + "'");
    return name;
  };

  if (const YAML::Node r = root["region"]) {
    check_keys(r, "region", {"xmin", "xmax", "ymin", "ymax", "nx", "ny"});
    GridRegion g;
    g.xmin = as_real(required(r, "xmin", "region"), "region.xmin");
    g.xmax = as_real(required(r, "xmax", "region"), "region.xmax");
    g.ymin = as_real(required(r, "ymin", "region"), "region.ymin");
    g.ymax = as_real(required(r, "ymax", "region"), "region.ymax");
    g.nx = r["nx"] ? as_count(r["nx"], "region.nx") : 100;
    g.ny = r["ny"] ? as_count(r["ny"], "region.ny") : 100;
    if (!(g.xmax > g.xmin) || !(g.ymax > g.ymin)) invalid(r, "region", "rectangle is empty");
    if (g.nx < 2 || g.ny < 2) invalid(r, "region", "resolution must be at least 2x2");
    cfg.region = g;
  }

  if (const YAML::Node t = root["transport"]) {
    check_keys(t, "transport", {"path", "v0", "samples"});
    if (t["path"]) cfg.transport.path = check_path_ref(t["path"], "transport.path");
    if (t["v0"]) {
      cfg.transport.v0 = as_vector(t["v0"], "transport.v0");
      if (cfg.transport.v0->size() != static_cast<Eigen::Index>(cfg.connection.rank())) {
        invalid(t["v0"], "transport.v0", "length differs from connection rank");
      }
    }
    if (t["samples"]) {
      cfg.transport.samples = as_count(t["samples"], "transport.samples");
      if (cfg.transport.samples < 2) invalid(t["samples"], "transport.samples", "must be at least 2");
    }
  }

  if (const YAML::Node w = root["wong"]) {
    check_keys(w, "wong", {"basis", "i0", "path", "trials"});
    if (w["basis"]) {
      cfg.wong.basis = as_basis(w["basis"], "wong.basis");
      if (cfg.wong.basis->rank() != cfg.connection.rank()) {
        invalid(w["basis"], "wong.basis", "generator size differs from connection rank");
      }
    }
    if (w["i0"]) {
      cfg.wong.i0 = as_vector(w["i0"], "wong.i0");
      if (cfg.wong.basis && static_cast<std::size_t>(cfg.wong.i0->size()) != cfg.wong.basis->dim()) {
        invalid(w["i0"], "wong.i0", "length differs from basis dimension");
      }
    }
    if (w["path"]) cfg.wong.path = check_path_ref(w["path"], "wong.path");
    if (w["trials"]) cfg.wong.trials = as_count(w["trials"], "wong.trials");
  }

  if (const YAML::Node v = root["vacuum"]) {
    check_keys(v, "vacuum", {"matrix"});
    cfg.vacuum_matrix = as_matrix(required(v, "matrix", "vacuum"), "vacuum.matrix");
  }
  return cfg;
}

}  // namespace

ConfigError::ConfigError(ErrorCode code, int line, std::string key, const std::string& message)
    : Error(code, "line " + std::to_string(line) + ", key '" + key + "': " + message),
      line_(line),
      key_(std::move(key)) {}

const PathSpec& SceneConfig::path(const std::string& name) const {
  const auto it = paths.find(name);
  if (it == paths.end()) throw Error(ErrorCode::UnknownLabel, "no path named '" + name + "'");
  return it->second;
}

SceneConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(ErrorCode::ParseError, e.mark.line + 1, "", e.msg);
  }
  if (!root || !root.IsMap()) throw ConfigError(ErrorCode::ParseError, 1, "", "config must be a table");
  try {
    return from_yaml(root);
  } catch (const YAML::Exception& e) {
    throw ConfigError(ErrorCode::ParseError, e.mark.line + 1, "", e.msg);
  }
}

SceneConfig load_config(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open config '" + file + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

Matrix parse_matrix_text(const std::string& text) {
  YAML::Node n;
  try {
    n = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(ErrorCode::ParseError, e.mark.line + 1, "matrix", e.msg);
  }
  if (n.IsMap() && n["matrix"]) return as_matrix(n["matrix"], "matrix");
  return as_matrix(n, "matrix");
}

}  // namespace holonomy::cli
