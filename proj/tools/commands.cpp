#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "builtin.hpp"
#include "holonomy/monodromy.hpp"
#include "holonomy/oracle.hpp"
#include "holonomy/transport.hpp"
#include "holonomy/vacua.hpp"
#include "holonomy/wong.hpp"

namespace holonomy::cli {
namespace {

constexpr double kFlatnessThreshold = 1e-6;
constexpr double kCurvatureStep = 1e-4;
constexpr std::size_t kFlatnessSamples = 257;

std::string num(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v + 0.0);
  return buf;
}

std::string cnum(Complex c, int digits = 12) { return num(c.real(), digits) + " " + num(c.imag(), digits); }

void write_matrix(std::ostream& out, const Matrix& m, const std::string& indent) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << indent;
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "  " : "") << cnum(m(i, j));
    out << "\n";
  }
}

void write_vector(std::ostream& out, const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? "  " : "") << cnum(v(i));
}

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorCode::InvalidArgument, message); }

const SceneConfig& need_config(const std::optional<SceneConfig>& config, const std::string& name) {
  if (!config) usage(name + " requires --config");
  return *config;
}

double tolerance(const std::optional<SceneConfig>& config, const Flags& flags) {
  const double tol = flags.tol ? *flags.tol : config ? config->tolerances.transport_tol : 1e-9;
  if (!(tol >= kMinTolerance && tol <= kMaxTolerance)) usage("--tol must lie in [1e-13, 1e-2]");
  return tol;
}

std::uint64_t seed(const std::optional<SceneConfig>& config, const Flags& flags) {
  return flags.seed ? *flags.seed : config ? config->seed : 0;
}

std::vector<std::string> selected_paths(const SceneConfig& cfg, const Flags& flags,
                                        const std::optional<std::string>& preferred) {
  if (flags.path) {
    cfg.path(*flags.path);
    return {*flags.path};
  }
  if (preferred) return {*preferred};
  if (cfg.path_order.empty()) usage("config defines no paths");
  return cfg.path_order;
}

std::string single_path(const SceneConfig& cfg, const Flags& flags, const std::optional<std::string>& preferred) {
  const auto names = selected_paths(cfg, flags, preferred);
  if (names.size() != 1) usage("several paths defined; choose one with --path");
  return names.front();
}

Vector parse_vector_text(const std::string& text) {
  const Matrix m = parse_matrix_text("[" + text + "]");
  return m.row(0).transpose();
}

void soft_guard_warning(std::ostream& out, double min_distance) {
  if (min_distance < ConnectionSpec::kSoftGuard) {
    out << "warning: path passes within " << num(min_distance) << " of a puncture\n";
  }
}

int flatness(const SceneConfig& cfg, const Flags& flags, std::ostream& out) {
  const ConnectionSpec& conn = cfg.connection;
  double worst = 0.0;
  out << "connection: " << conn.kind() << "\n";
  const std::vector<std::string> names =
      flags.path ? std::vector<std::string>{*flags.path} : cfg.path_order;
  for (const auto& name : names) {
    double m = 0.0;
    for (const auto& s : sample_path(cfg.path(name), kFlatnessSamples)) {
      m = std::max(m, frobenius(curvature_fd(conn, s.point, kCurvatureStep)));
    }
    out << "path " << name << ": max_curvature " << num(m) << " samples " << kFlatnessSamples << "\n";
    worst = std::max(worst, m);
  }
  if (cfg.region) {
    const GridRegion& g = *cfg.region;
    double m = 0.0;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < g.nx; ++i) {
      for (std::size_t j = 0; j < g.ny; ++j) {
        const PlanePoint p{g.xmin + (g.xmax - g.xmin) * static_cast<double>(i) / static_cast<double>(g.nx - 1),
                           g.ymin + (g.ymax - g.ymin) * static_cast<double>(j) / static_cast<double>(g.ny - 1)};
        const auto& poles = conn.punctures().points();
        if (std::any_of(poles.begin(), poles.end(),
                        [&](PlanePoint q) { return distance(p, q) < 4.0 * kCurvatureStep; })) {
          ++skipped;
          continue;
        }
        m = std::max(m, frobenius(curvature_fd(conn, p, kCurvatureStep)));
      }
    }
    out << "region: max_curvature " << num(m) << " nodes " << g.nx * g.ny - skipped << "\n";
    worst = std::max(worst, m);
  }
  if (names.empty() && !cfg.region) usage("flatness needs paths or a region");
  const bool pass = worst < kFlatnessThreshold;
  out << "verdict: " << (pass ? "PASS" : "FAIL") << " threshold " << num(kFlatnessThreshold) << "\n";
  return pass ? kExitOk : kExitFail;
}

void write_csv(const std::string& file, const TransportTrajectory& traj) {
  std::ofstream csv(file);
  if (!csv) usage("cannot write '" + file + "'");
  const Eigen::Index m = traj.empty() ? 0 : traj.front().v.size();
  csv << "t";
  for (Eigen::Index i = 1; i <= m; ++i) csv << ",re_v" << i << ",im_v" << i;
  csv << "\n";
  for (const auto& s : traj) {
    csv << num(s.t, 17);
    for (Eigen::Index i = 0; i < m; ++i) csv << "," << num(s.v(i).real(), 17) << "," << num(s.v(i).imag(), 17);
    csv << "\n";
  }
}

int transport(const SceneConfig& cfg, const Flags& flags, std::ostream& out) {
  const double tol = tolerance(cfg, flags);
  const auto names = selected_paths(cfg, flags, cfg.transport.path);
  for (const auto& name : names) {
    const HolonomyResult r = parallel_transport(cfg.connection, cfg.path(name), tol);
    out << "path: " << name << "\n"
        << "closed: " << (r.path_closed ? "true" : "false") << "\n"
        << "start: " << num(r.start.x) << " " << num(r.start.y) << "\n"
        << "end: " << num(r.end.x) << " " << num(r.end.y) << "\n"
        << "min_pole_distance: " << num(r.min_pole_distance) << "\n"
        << "steps_used: " << r.steps_used << "\n"
        << "error_estimate: " << num(r.error_estimate) << "\n"
        << "unitarity_defect: " << num(unitarity_defect(r.matrix)) << "\n"
        << "matrix:\n";
    write_matrix(out, r.matrix, "  ");
    soft_guard_warning(out, r.min_pole_distance);
  }
  if (flags.csv) {
    const std::string name = single_path(cfg, flags, cfg.transport.path);
    const auto rank = static_cast<Eigen::Index>(cfg.connection.rank());
    Vector v0 = Vector::Zero(rank);
    v0(0) = 1.0;
    if (cfg.transport.v0) v0 = *cfg.transport.v0;
    write_csv(*flags.csv, transport_trajectory(cfg.connection, cfg.path(name), v0, cfg.transport.samples, tol));
    out << "csv: " << *flags.csv << " rows " << cfg.transport.samples << "\n";
  }
  return kExitOk;
}

int monodromy(const SceneConfig& cfg, const Flags& flags, std::ostream& out) {
  const double tol = tolerance(cfg, flags);
  const Representation rep = monodromy_representation(cfg.connection, cfg.basepoint, tol, flags.assume_flat);
  out << "connection: " << cfg.connection.kind() << "\n"
      << "rank: " << rep.rank << "\n"
      << "basepoint: " << num(rep.basepoint.x) << " " << num(rep.basepoint.y) << "\n";
  for (const auto& [label, m] : rep.generators) {
    out << "generator " << label << ": error_estimate " << num(rep.error_estimates.at(label))
        << " unitarity_defect " << num(unitarity_defect(m)) << "\n";
    write_matrix(out, m, "  ");
  }
  return kExitOk;
}

int abphase(const SceneConfig& cfg, const Flags& flags, std::ostream& out) {
  const auto* solenoids = std::get_if<MultiSolenoid>(&cfg.connection.variant());
  if (!solenoids) usage("abphase requires a multi_solenoid connection");
  for (const auto& name : selected_paths(cfg, flags, std::nullopt)) {
    if (!flags.path && !cfg.path(name).closed()) continue;
    const AbPhase ab = ab_phase_predict(solenoids->fluxes, cfg.path(name), solenoids->punctures);
    out << "path: " << name << "\n" << "phase: " << cnum(ab.phase) << "\n" << "winding:";
    for (int w : ab.windings) out << " " << w;
    out << "\n";
  }
  return kExitOk;
}

int wong(const SceneConfig& cfg, const Flags& flags, std::ostream& out) {
  const double tol = tolerance(cfg, flags);
  const LieBasis basis = cfg.wong.basis ? *cfg.wong.basis
                         : cfg.connection.rank() == 2 ? LieBasis::su2()
                         : cfg.connection.rank() == 1 ? LieBasis::u1()
                                                      : (usage("wong needs wong.basis for this rank"), LieBasis::u1());
  Vector comps;
  if (flags.i0) {
    comps = parse_vector_text(*flags.i0);
  } else if (cfg.wong.i0) {
    comps = *cfg.wong.i0;
  } else {
    usage("wong needs --i0 or wong.i0");
  }
  if (static_cast<std::size_t>(comps.size()) != basis.dim()) usage("I0 length differs from basis dimension");
  const std::string name = single_path(cfg, flags, cfg.wong.path);
  const PathSpec& path = cfg.path(name);

  const WongResult r = wong_transport(cfg.connection, basis, SpinState::from_components(basis, comps), path, tol);
  const double iso_bound = 10.0 * tol;
  const bool iso = r.spectral_drift < iso_bound;
  out << "path: " << name << "\n" << "i0: ";
  write_vector(out, comps);
  out << "\n" << "i1: ";
  write_vector(out, r.final_state.components);
  out << "\n"
      << "steps_used: " << r.steps_used << "\n"
      << "error_estimate: " << num(r.error_estimate) << "\n"
      << "spectral_drift: " << num(r.spectral_drift) << "\n"
      << "isospectral: " << (iso ? "PASS" : "FAIL") << " bound " << num(iso_bound) << "\n";
  bool pass = iso;
  if (flags.verify_ad) {
    const AdRhoReport ad = verify_ad_rho(cfg.connection, basis, path, cfg.wong.trials, tol, seed(cfg, flags));
    out << "ad_rho: trials " << ad.trials << " max_deviation " << num(ad.max_deviation) << " bound "
        << num(ad.bound) << " max_spectral_drift " << num(ad.max_spectral_drift) << " "
        << (ad.pass ? "PASS" : "FAIL") << "\n"
        << "rho:\n";
    write_matrix(out, ad.rho, "  ");
    pass = pass && ad.pass;
  }
  return pass ? kExitOk : kExitFail;
}

Matrix matrix_argument(const std::string& arg) {
  std::ifstream in(arg);
  if (in) {
    std::ostringstream text;
    text << in.rdbuf();
    return parse_matrix_text(text.str());
  }
  return parse_matrix_text(arg);
}

int vacua(const std::optional<SceneConfig>& config, const Flags& flags, std::ostream& out) {
  const double tol = tolerance(config, flags);
  if (flags.group != "Z" && flags.group != "Z2") usage("--group must be Z or Z2");
  std::optional<Matrix> u;
  if (flags.matrix) {
    u = matrix_argument(*flags.matrix);
  } else if (config && config->vacuum_matrix) {
    u = config->vacuum_matrix;
  }
  out << "group: " << flags.group << "\n";
  if (flags.group == "Z2") {
    if (!u) usage("--group Z2 needs a matrix");
    const VacuumClassZ2 c = classify_z2(*u, tol);
    out << "class: plus " << c.plus << " minus " << c.minus << "\n"
        << "classes_for_rank: " << enumerate_vacua_z2(c.plus + c.minus).size() << "\n";
    return kExitOk;
  }
  VacuumClassCyclic c;
  if (u) {
    c = canonical_vacuum_cyclic(*u, tol);
  } else {
    const SceneConfig& cfg = need_config(config, "vacua");
    try {
      c = vacuum_from_connection(cfg.connection, tol, cfg.basepoint);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotUnitary) {
        out << "error: " << e.what() << "\n";
        return kExitFail;
      }
      throw;
    }
  }
  out << "eigenphases:";
  for (double p : c.eigenphases) out << " " << num(p);
  out << "\n";
  return kExitOk;
}

int ym(const SceneConfig& cfg, std::ostream& out) {
  if (!cfg.region) usage("ym-energy needs a region");
  const GridRegion& g = *cfg.region;
  out << "region: " << num(g.xmin) << " " << num(g.xmax) << " " << num(g.ymin) << " " << num(g.ymax) << " grid "
      << g.nx << "x" << g.ny << "\n"
      << "ym_energy: " << num(ym_energy(cfg.connection, g)) << "\n";
  return kExitOk;
}

void write_report(std::ostream& out, const oracle::OracleReport& r) {
  out << "report " << r.quantity << ": deviation " << num(r.deviation) << " bound " << num(r.bound) << " "
      << (r.pass ? "PASS" : "FAIL") << "\n";
}

int verify(const std::optional<SceneConfig>& config, const Flags& flags, std::ostream& out) {
  using oracle::fine_step_transport;
  using oracle::kMinFineSteps;
  using oracle::make_report;
  const double tol = 1e-10;
  std::vector<oracle::OracleReport> reports;

  {
    const auto conn = builtin::ab_solenoid(1.7);
    const auto loop = PathSpec::circle({0.0, 0.0}, 2.0, 1);
    const Matrix adaptive = parallel_transport(conn, loop, tol).matrix;
    const Matrix exact = Matrix::Constant(1, 1, std::exp(Complex(0.0, -1.7)));
    reports.push_back(make_report("ab_fine_vs_adaptive", adaptive, fine_step_transport(conn, loop, kMinFineSteps), 1e-8));
    reports.push_back(make_report("ab_phase", adaptive, exact, 1e-8));
  }
  {
    const auto conn = builtin::aharonov_casher(0.3);
    const auto loop = PathSpec::circle({0.0, 0.0}, 1.0, 1);
    const Matrix exact = expm(Complex(0.0, kPi * 0.3) * pauli(3));
    reports.push_back(make_report("ac_fine_vs_closed_form", fine_step_transport(conn, loop, kMinFineSteps), exact, 1e-8));
    reports.push_back(make_report("ac_adaptive_vs_closed_form", parallel_transport(conn, loop, tol).matrix, exact, 1e-8));
    const Matrix tau1 = Complex(0.0, -0.5) * pauli(1);
    const Matrix tau2 = Complex(0.0, -0.5) * pauli(2);
    const Matrix expected = std::cos(2 * kPi * 0.3) * tau1 - std::sin(2 * kPi * 0.3) * tau2;
    const WongResult w = wong_transport(conn, LieBasis::su2(), SpinState::from_matrix(LieBasis::su2(), tau1), loop, tol);
    reports.push_back(make_report("ac_wong_vs_conjugation", w.final_state.matrix, expected, 1e-8));
  }
  {
    const Matrix r = Matrix(Eigen::Vector2cd(0.35, -0.6).asDiagonal());
    const ConnectionSpec conn(FuchsianLog{PunctureSet({{0.0, 0.0}}), {r}, {}});
    const Representation rep = monodromy_representation(conn, std::nullopt, tol);
    const std::vector<Matrix> residues{r};
    const std::vector<int> windings{1};
    reports.push_back(make_report("fuchsian_abelian_oracle", rep.generators.at("p1"),
                                  abelian_oracle(residues, windings), 1e-8));
  }
  {
    const auto conn = builtin::two_pole();
    const double nc_tol = 1e-9;
    const auto loops = generator_loops(conn.punctures());
    for (const auto& [label, loop] : loops) {
      reports.push_back(make_report("two_pole_fine_vs_adaptive_" + label, parallel_transport(conn, loop, nc_tol).matrix,
                                    fine_step_transport(conn, loop, kMinFineSteps), 1e-6));
    }
    const auto circle = PathSpec::circle({0.0, 0.0}, 1.5, 1);
    const auto square = PathSpec::polyline(std::vector<PlanePoint>{
        {1.5, 0.0}, {1.5, 1.5}, {-1.5, 1.5}, {-1.5, -1.5}, {1.5, -1.5}, {1.5, 0.0}});
    reports.push_back(make_report("two_pole_homotopy", parallel_transport(conn, circle, nc_tol).matrix,
                                  parallel_transport(conn, square, nc_tol).matrix, 1e-6));
  }
  {
    const auto conn = builtin::aharonov_casher(0.3);
    const AdRhoReport ad = verify_ad_rho(conn, LieBasis::su2(), PathSpec::circle({0.0, 0.0}, 1.0, 1), 20, 1e-9,
                                         seed(config, flags));
    oracle::OracleReport r;
    r.quantity = "ac_ad_rho";
    r.deviation = ad.max_deviation;
    r.bound = ad.bound;
    r.pass = ad.pass;
    reports.push_back(r);
  }
  if (config) {
    const double ctol = tolerance(config, flags);
    for (const auto& name : config->path_order) {
      const PathSpec& path = config->path(name);
      const HolonomyResult h = parallel_transport(config->connection, path, ctol);
      reports.push_back(make_report("config_fine_vs_adaptive_" + name, h.matrix,
                                    fine_step_transport(config->connection, path, kMinFineSteps),
                                    std::max(1e-6, 10.0 * h.error_estimate)));
    }
  }

  std::size_t passed = 0;
  for (const auto& r : reports) {
    write_report(out, r);
    passed += r.pass ? 1 : 0;
  }
  const bool pass = passed == reports.size();
  out << "verify: " << passed << "/" << reports.size() << " " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitFail;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoConvergence:
    case ErrorCode::NonFinite:
    case ErrorCode::Singular:
      return kExitFail;
    default:
      return kExitUsage;
  }
}

CommandResult run_subcommand(const std::string& name, const std::optional<SceneConfig>& config,
                             const Flags& flags) {
  std::ostringstream out;
  out << "subcommand: " << name << "\n";
  int code = kExitOk;
  try {
    if (name == "flatness") {
      code = flatness(need_config(config, name), flags, out);
    } else if (name == "transport") {
      code = transport(need_config(config, name), flags, out);
    } else if (name == "monodromy") {
      code = monodromy(need_config(config, name), flags, out);
    } else if (name == "abphase") {
      code = abphase(need_config(config, name), flags, out);
    } else if (name == "wong") {
      code = wong(need_config(config, name), flags, out);
    } else if (name == "vacua") {
      code = vacua(config, flags, out);
    } else if (name == "ym-energy") {
      code = ym(need_config(config, name), out);
    } else if (name == "verify") {
      code = verify(config, flags, out);
    } else {
      usage("unknown subcommand '" + name + "'");
    }
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    code = exit_code_for(e.code());
  }
  return {code, out.str()};
}

}  // namespace holonomy::cli
