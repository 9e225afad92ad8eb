#include <gtest/gtest.h>

#include <random>

#include "holonomy/connection.hpp"
#include "support.hpp"

namespace holonomy {
namespace {

ConnectionSpec solenoid(double phi) { return ConnectionSpec(MultiSolenoid{PunctureSet({{0, 0}}), {phi}}); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

TEST(Generator, SolenoidExample) {
  const Matrix g = evaluate_generator(solenoid(kTwoPi), {1, 0}, {0, 1});
  ASSERT_EQ(g.rows(), 1);
  EXPECT_LT(std::abs(g(0, 0) - Complex(0.0, -1.0)), 1e-15);
}

TEST(Generator, AharonovCasherExample) {
  const double lambda = 0.37;
  const Matrix g = evaluate_generator(ConnectionSpec(AharonovCasher{lambda}), {0, 1}, {-1, 0});
  // i lambda (zdot / z) tau3 with zdot / z = -1 / i = i.
  EXPECT_LT(frobenius(g - (-lambda) * test::tau(3)), 1e-15);
}

TEST(Generator, ZeroVelocityGivesZero) {
  const std::vector<ConnectionSpec> specs{
      solenoid(1.0), ConnectionSpec(AharonovCasher{0.4}), ConnectionSpec(ConstantField{2.0}),
      ConnectionSpec(FuchsianLog{PunctureSet({{1, 1}}), {pauli(1)}, {pauli(3), pauli(2)}})};
  for (const auto& c : specs) EXPECT_EQ(frobenius(evaluate_generator(c, {0.3, -0.2}, {0, 0})), 0.0);
}

TEST(Generator, LinearInVelocity) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::vector<ConnectionSpec> specs{
      ConnectionSpec(MultiSolenoid{PunctureSet({{0, 0}, {1, 1}}), {0.3, -1.2}}),
      ConnectionSpec(AharonovCasher{0.4}), ConnectionSpec(ConstantField{2.0}),
      ConnectionSpec(FuchsianLog{PunctureSet({{0.5, 0}}), {pauli(1) + pauli(3)}, {pauli(3), pauli(2)}})};
  for (const auto& c : specs) {
    for (int i = 0; i < 20; ++i) {
      const PlanePoint x{u(rng) + 3.0, u(rng)};
      const PlanePoint v{u(rng), u(rng)}, w{u(rng), u(rng)};
      const double a = u(rng), b = u(rng);
      const Matrix lhs = evaluate_generator(c, x, {a * v.x + b * w.x, a * v.y + b * w.y});
      const Matrix rhs = a * evaluate_generator(c, x, v) + b * evaluate_generator(c, x, w);
      EXPECT_LT(frobenius(lhs - rhs), 1e-12 * std::max(1.0, frobenius(lhs)));
    }
  }
}

TEST(Generator, AharonovCasherAntiHermitianOnCircle) {
  const ConnectionSpec ac(AharonovCasher{0.8});
  for (const auto& s : sample_path(PathSpec::circle({0, 0}, 1.7, 1), 64)) {
    const Matrix g = evaluate_generator(ac, s.point, s.velocity);
    EXPECT_LT(frobenius(g + g.adjoint()), 1e-13);
  }
}

TEST(Generator, PoleGuard) {
  EXPECT_EQ(code_of([] { evaluate_generator(solenoid(1.0), {1e-10, 0}, {1, 0}); }), ErrorCode::PoleProximity);
  EXPECT_NO_THROW(evaluate_generator(solenoid(1.0), {1e-8, 0}, {1, 0}));
  const ConnectionSpec wide(MultiSolenoid{PunctureSet({{0, 0}}), {1.0}}, 1e-3);
  EXPECT_EQ(code_of([&] { evaluate_generator(wide, {5e-4, 0}, {1, 0}); }), ErrorCode::PoleProximity);
}

TEST(Generator, RejectsNonFinite) {
  EXPECT_EQ(code_of([] { evaluate_generator(solenoid(1.0), {std::nan(""), 0}, {1, 0}); }),
            ErrorCode::InvalidArgument);
}

TEST(ConnectionSpec, Validation) {
  EXPECT_EQ(code_of([] { ConnectionSpec(MultiSolenoid{PunctureSet({{0, 0}}), {1.0, 2.0}}); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { ConnectionSpec(AharonovCasher{std::nan("")}); }), ErrorCode::NonFinite);
  EXPECT_EQ(code_of([] { ConnectionSpec(FuchsianLog{PunctureSet({{0, 0}}), {Matrix::Zero(2, 3)}, {}}); }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { ConnectionSpec(FuchsianLog{PunctureSet({{0, 0}, {1, 0}}), {pauli(1), Matrix::Zero(3, 3)}, {}}); }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { ConnectionSpec(AharonovCasher{0.1}, 0.0); }), ErrorCode::InvalidArgument);
}

TEST(ConnectionSpec, Metadata) {
  const ConnectionSpec ac(AharonovCasher{0.3});
  EXPECT_EQ(ac.rank(), 2u);
  EXPECT_EQ(ac.kind(), "aharonov_casher");
  ASSERT_EQ(ac.punctures().size(), 1u);
  EXPECT_TRUE(ac.unitary_holonomy());
  const auto res = ac.log_residues();
  ASSERT_TRUE(res.has_value());
  EXPECT_LT(frobenius(res->residues[0] - 0.15 * pauli(3)), 1e-15);

  const auto ab = solenoid(1.2).log_residues();
  EXPECT_NEAR(ab->residues[0](0, 0).real(), -1.2 / kTwoPi, 1e-15);

  const ConnectionSpec nc(FuchsianLog{PunctureSet({{0, 0}, {1, 0}}), {pauli(1), pauli(2)}, {}});
  EXPECT_FALSE(nc.unitary_holonomy());
  const ConnectionSpec with_poly(FuchsianLog{PunctureSet({{0, 0}}), {pauli(1)}, {pauli(2)}});
  EXPECT_FALSE(with_poly.log_residues().has_value());
  EXPECT_TRUE(ConnectionSpec(ConstantField{1.0}).punctures().empty());
}

TEST(Curvature, HolomorphicVariantsAreFlat) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::vector<ConnectionSpec> specs{
      ConnectionSpec(MultiSolenoid{PunctureSet({{0, 0}, {1, 1}}), {0.3, -1.2}}),
      ConnectionSpec(AharonovCasher{0.4}),
      ConnectionSpec(FuchsianLog{PunctureSet({{-0.5, 0}, {0.5, 0}}),
                                 {0.3 * pauli(3) + 0.1 * pauli(1), 0.25 * pauli(1) - 0.15 * pauli(2)},
                                 {0.2 * pauli(1), 0.1 * pauli(3)}})};
  for (const auto& c : specs) {
    int checked = 0;
    while (checked < 40) {
      const PlanePoint p{u(rng), u(rng)};
      double d = 1e300;
      for (const auto& q : c.punctures().points()) d = std::min(d, distance(p, q));
      if (d <= 0.1) continue;
      EXPECT_LT(frobenius(curvature_fd(c, p, 1e-4)), 1e-6) << c.kind() << " at " << p.x << "," << p.y;
      ++checked;
    }
  }
}

TEST(Curvature, ConstantFieldIsIB) {
  const ConnectionSpec c(ConstantField{1.5});
  for (PlanePoint p : {PlanePoint{0, 0}, PlanePoint{3, -2}, PlanePoint{-1, 7}}) {
    const Matrix f = curvature_fd(c, p, 1e-3);
    EXPECT_LT(std::abs(f(0, 0) - Complex(0.0, 1.5)), 1e-9);
  }
}

TEST(Curvature, ZeroCustomIsExactlyZero) {
  const ConnectionSpec zero(CustomSampler{2, [](PlanePoint) { return Matrix(Matrix::Zero(2, 2)); },
                                          [](PlanePoint) { return Matrix(Matrix::Zero(2, 2)); }, {}});
  EXPECT_EQ(frobenius(curvature_fd(zero, {0.3, 0.4}, 1e-4)), 0.0);
  GridRegion r{0, 1, 0, 1, 20, 20};
  EXPECT_EQ(ym_energy(zero, r), 0.0);
}

TEST(Curvature, CustomNonAbelianCommutatorSign) {
  // A1 = tau1, A2 = tau2 constant: C12 = -[tau1, tau2] = -tau3.
  const ConnectionSpec c(CustomSampler{2, [](PlanePoint) { return test::tau(1); },
                                       [](PlanePoint) { return test::tau(2); }, {}});
  EXPECT_LT(frobenius(curvature_fd(c, {0, 0}, 1e-3) + test::tau(3)), 1e-12);
}

TEST(YangMills, FlatRegionIsZero) {
  const ConnectionSpec c(MultiSolenoid{PunctureSet({{0, 0}, {-1, 2}}), {1.1, 0.4}});
  EXPECT_LT(ym_energy(c, {1, 3, -1, 1, 100, 100}), 1e-8);
}

TEST(YangMills, ConstantFieldEnergy) {
  const ConnectionSpec c(ConstantField{1.5});
  EXPECT_NEAR(ym_energy(c, {0, 2, 0, 3, 200, 200}), 13.5, 0.135);
  EXPECT_NEAR(ym_energy(c, {-1, 1, 5, 6, 20, 30}), 1.5 * 1.5 * 2.0, 0.045);
}

TEST(YangMills, RegionValidationAndPoleOnNode) {
  const ConnectionSpec c = solenoid(1.0);
  EXPECT_EQ(code_of([&] { ym_energy(c, {0, 0, 0, 1, 10, 10}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { ym_energy(c, {0, 1, 0, 1, 1, 10}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { ym_energy(c, {-1, 1, -1, 1, 11, 11}); }), ErrorCode::PoleProximity);
  // Even cell count puts a cell midpoint on the pole.
  EXPECT_EQ(code_of([&] { ym_energy(c, {-1, 1, -1, 1, 10, 10}); }), ErrorCode::PoleProximity);
  EXPECT_GE(ym_energy(c, {-1, 1.3, -1, 1.3, 10, 10}), 0.0);
}

}  // namespace
}  // namespace holonomy
