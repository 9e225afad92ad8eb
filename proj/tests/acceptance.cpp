// Acceptance suite: one PASS/FAIL line per criterion at pinned tolerances.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "builtin.hpp"
#include "holonomy/monodromy.hpp"
#include "holonomy/transport.hpp"
#include "holonomy/vacua.hpp"
#include "holonomy/wong.hpp"

namespace {

using namespace holonomy;
namespace builtin = holonomy::cli::builtin;

struct Check {
  std::string what;
  double value;
  double bound;
  bool pass() const { return value < bound; }
};

struct Outcome {
  std::vector<Check> checks;
  double runtime_bound = 0.0;  // seconds, 0 = none

  void add(std::string what, double value, double bound) { checks.push_back({std::move(what), value, bound}); }
};

Matrix diag2(Complex a, Complex b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

PathSpec square_around_two_pole() {
  return PathSpec::polyline(std::vector<PlanePoint>{{1.5, 0}, {1.5, 1.5}, {-1.5, 1.5}, {-1.5, -1.5}, {1.5, -1.5}, {1.5, 0}});
}

// Transports collected for the unitarity criterion.
struct Collected {
  std::string label;
  Matrix t;
};
std::vector<Collected> g_anti_hermitian;

Outcome ab_phase() {
  Outcome o{{}, 1.0};
  const auto t = parallel_transport(builtin::ab_solenoid(1.7), PathSpec::circle({0, 0}, 2, 1), 1e-10);
  o.add("|T - e^{-1.7i}|", std::abs(t.matrix(0, 0) - std::polar(1.0, -1.7)), 1e-8);
  g_anti_hermitian.push_back({"solenoid circle", t.matrix});
  return o;
}

Outcome superposition() {
  Outcome o{{}, 2.0};
  const ConnectionSpec conn = builtin::ab_three_solenoids();
  const auto& fl = std::get<MultiSolenoid>(conn.variant()).fluxes;
  struct Case {
    std::string name;
    PathSpec loop;
    std::vector<int> windings;
  };
  const std::vector<Case> cases{
      {"{a,c}", PathSpec::polyline(std::vector<PlanePoint>{{-2, -1}, {0.3, -1}, {0.3, 3}, {-2, 3}, {-2, -1}}), {1, 0, 1}},
      {"{b}", PathSpec::circle({1, 0}, 0.5, 1), {0, 1, 0}},
      {"{a,b}", PathSpec::circle({0, -0.3}, 1.5, 1), {1, 1, 0}},
      {"{a,b,c}", PathSpec::circle({0, 0.5}, 3, 1), {1, 1, 1}}};
  for (const auto& c : cases) {
    double enclosed = 0.0;
    for (std::size_t j = 0; j < 3; ++j) enclosed += c.windings[j] * fl[j];
    const Complex expected = std::polar(1.0, -enclosed);
    const auto t = parallel_transport(conn, c.loop, 1e-10);
    const AbPhase ab = ab_phase_predict(fl, c.loop, conn.punctures());
    o.add("transport vs exp(-i sum) " + c.name, std::abs(t.matrix(0, 0) - expected), 1e-6);
    o.add("winding vector mismatch " + c.name, ab.windings == c.windings ? 0.0 : 1.0, 0.5);
    o.add("ab_phase_predict vs exp(-i sum) " + c.name, std::abs(ab.phase - expected), 1e-15);
    g_anti_hermitian.push_back({"three solenoids " + c.name, t.matrix});
  }
  return o;
}

Outcome aharonov_casher() {
  Outcome o{{}, 1.0};
  const auto t = parallel_transport(builtin::aharonov_casher(0.3), PathSpec::circle({0, 0}, 1, 1), 1e-10);
  const Matrix expected = diag2(std::polar(1.0, 0.3 * kPi), std::polar(1.0, -0.3 * kPi));
  o.add("||T - diag(e^{0.3 pi i}, e^{-0.3 pi i})||", frobenius(t.matrix - expected), 1e-8);
  g_anti_hermitian.push_back({"aharonov-casher circle", t.matrix});
  return o;
}

struct WongCase {
  std::string name;
  ConnectionSpec conn;
  PathSpec loop;
};

std::vector<WongCase> wong_cases() {
  const auto single = builtin::single_pole();
  const auto two = builtin::two_pole();
  const auto loops = generator_loops(two.punctures());
  return {{"aharonov-casher", builtin::aharonov_casher(0.3), PathSpec::circle({0, 0}, 1, 1)},
          {"single-pole fuchsian", single, generator_loops(single.punctures()).at("p1")},
          {"two-pole fuchsian lasso p1", two, loops.at("p1")},
          {"two-pole fuchsian lasso p2", two, loops.at("p2")}};
}

std::vector<AdRhoReport> g_ad_rho;

Outcome wong_ad_rho() {
  Outcome o{{}, 10.0};
  for (const auto& c : wong_cases()) {
    const AdRhoReport r = verify_ad_rho(c.conn, LieBasis::su2(), c.loop, 20, 1e-9, 0);
    o.add("Ad(rho) max deviation, " + c.name, r.max_deviation, 1e-6);
    g_ad_rho.push_back(r);
    g_anti_hermitian.push_back({c.name, r.rho});
  }
  return o;
}

Outcome isospectrality() {
  Outcome o;
  const auto cases = wong_cases();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    o.add("spectral drift, " + cases[i].name, g_ad_rho.at(i).max_spectral_drift, 1e-8);
  }
  return o;
}

Outcome abelian_oracle_check() {
  Outcome o{{}, 30.0};
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> rank(1, 3), count(1, 3);
  std::uniform_real_distribution<double> pos(-2.0, 2.0);
  for (const char* family : {"hermitian", "imaginary"}) {
    const Complex unit = std::string(family) == "hermitian" ? Complex(1, 0) : Complex(0, 1);
    double worst = 0.0, worst_unitary = -1.0;
    Matrix least_unitary;
    for (int s = 0; s < 50; ++s) {
      const int m = rank(rng);
      const int n = count(rng);
      std::vector<PlanePoint> points;
      while (static_cast<int>(points.size()) < n) {
        const PlanePoint p{pos(rng), pos(rng)};
        bool ok = true;
        for (const auto& q : points) ok = ok && distance(p, q) > 0.3;
        if (ok) points.push_back(p);
      }
      std::vector<Matrix> residues;
      for (int j = 0; j < n; ++j) {
        Vector d(m);
        for (int k = 0; k < m; ++k) d(k) = unit * u(rng);
        residues.push_back(d.asDiagonal());
      }
      const ConnectionSpec conn(FuchsianLog{PunctureSet(points), residues, {}});
      const Representation rep = monodromy_representation(conn, std::nullopt, 1e-10);
      for (int j = 0; j < n; ++j) {
        const Matrix& g = rep.generators.at("p" + std::to_string(j + 1));
        const Matrix oracle = expm(Complex(0, kTwoPi) * residues[j]);
        worst = std::max(worst, frobenius(g - oracle));
        if (unit == Complex(1, 0) && unitarity_defect(g) > worst_unitary) {
          worst_unitary = unitarity_defect(g);
          least_unitary = g;
        }
      }
    }
    o.add(std::string("max ||generator - exp(2 pi i R)||, 50 ") + family + " diagonal specs", worst, 1e-7);
    if (unit == Complex(1, 0)) g_anti_hermitian.push_back({"hermitian diagonal specs, least unitary generator", least_unitary});
  }
  return o;
}

Outcome homotopy() {
  Outcome o;
  const auto conn = builtin::two_pole();
  const auto c = parallel_transport(conn, PathSpec::circle({0, 0}, 1.5, 1), 1e-9);
  const auto s = parallel_transport(conn, square_around_two_pole(), 1e-9);
  o.add("||T_circle - T_square||, two-pole fuchsian", frobenius(c.matrix - s.matrix), 1e-6);
  g_anti_hermitian.push_back({"two-pole circle", c.matrix});
  g_anti_hermitian.push_back({"two-pole square", s.matrix});
  return o;
}

Outcome unitarity() {
  Outcome o;
  for (const auto& c : g_anti_hermitian) o.add("||T^H T - I||, " + c.label, unitarity_defect(c.t), 1e-8);
  return o;
}

Outcome vacuum_counting() {
  Outcome o;
  double count_errors = 0.0;
  for (std::size_t m = 0; m <= 16; ++m) count_errors += enumerate_vacua_z2(m).size() == m + 1 ? 0.0 : 1.0;
  o.add("enumerate_vacua_z2 size mismatches, m = 0..16", count_errors, 0.5);
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<int> rank(1, 6);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto m = static_cast<std::size_t>(rank(rng));
    const Matrix u = random_unitary(m, rng);
    const Matrix s = random_unitary(m, rng);
    const auto a = canonical_vacuum_cyclic(u, 1e-10).eigenphases;
    const auto b = canonical_vacuum_cyclic(s * u * s.adjoint(), 1e-10).eigenphases;
    for (std::size_t k = 0; k < m; ++k) worst = std::max(worst, circle_distance(a[k], b[k]));
  }
  o.add("max eigenphase deviation under 100 random conjugations", worst, 1e-8);
  return o;
}

Outcome yang_mills() {
  Outcome o{{}, 5.0};
  o.add("ym_energy, multi-solenoid on puncture-free rectangle",
        ym_energy(builtin::ab_three_solenoids(), {2, 4, -1, 1, 200, 200}), 1e-8);
  const double e = ym_energy(ConnectionSpec(ConstantField{1.5}), {0, 2, 0, 3, 200, 200});
  o.add("|ym_energy - 13.5| / 13.5, constant field 2x3 at 200x200", std::abs(e - 13.5) / 13.5, 0.01);
  return o;
}

Outcome gauge_covariance() {
  Outcome o;
  std::mt19937_64 rng(0);
  for (const auto& [name, conn] : {std::pair{std::string("two-pole"), builtin::two_pole()},
                                   std::pair{std::string("single-pole"), builtin::single_pole()}}) {
    const auto& f = std::get<FuchsianLog>(conn.variant());
    const Matrix h = random_unitary(2, rng);
    std::vector<Matrix> conjugated;
    for (const auto& r : f.residues) conjugated.push_back(h * r * h.adjoint());
    const auto a = monodromy_representation(conn, std::nullopt, 1e-9);
    const auto b = monodromy_representation(ConnectionSpec(FuchsianLog{f.punctures, conjugated, {}}), std::nullopt, 1e-9);
    double worst = 0.0;
    for (const auto& [label, g] : a.generators) {
      worst = std::max(worst, frobenius(b.generators.at(label) - h * g * h.adjoint()));
    }
    o.add("max ||rho'(g) - h rho(g) h^-1||, " + name, worst, 1e-6);
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "aharonov-bohm phase", ab_phase},
      {2, "multi-solenoid superposition", superposition},
      {3, "aharonov-casher matrix", aharonov_casher},
      {4, "wong / Ad(rho)", wong_ad_rho},
      {5, "isospectrality", isospectrality},
      {6, "abelian monodromy oracle", abelian_oracle_check},
      {7, "homotopy invariance", homotopy},
      {8, "unitarity", unitarity},
      {9, "vacuum counting", vacuum_counting},
      {10, "yang-mills energy", yang_mills},
      {11, "gauge covariance", gauge_covariance},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    std::string error;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = error.empty() && !o.checks.empty();
    for (const auto& k : o.checks) pass = pass && k.pass();
    const bool in_time = o.runtime_bound == 0.0 || secs < o.runtime_bound;
    pass = pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s criterion %d: %s (%.2f s", pass ? "PASS" : "FAIL", c.id, c.name, secs);
    if (o.runtime_bound > 0.0) std::printf(", limit %.0f s", o.runtime_bound);
    std::printf(")\n");
    for (const auto& k : o.checks) {
      std::printf("    %s %s = %.3e (bound %.0e)\n", k.pass() ? "ok  " : "FAIL", k.what.c_str(), k.value, k.bound);
    }
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
