#include <gtest/gtest.h>

#include "holonomy/oracle.hpp"
#include "holonomy/transport.hpp"
#include "support.hpp"

namespace holonomy {
namespace {

using oracle::fine_step_transport;
using oracle::kMinFineSteps;

TEST(FineStep, ZeroConnection) {
  const ConnectionSpec zero(CustomSampler{2, [](PlanePoint) { return Matrix(Matrix::Zero(2, 2)); },
                                          [](PlanePoint) { return Matrix(Matrix::Zero(2, 2)); }, {}});
  EXPECT_EQ(frobenius(fine_step_transport(zero, PathSpec::circle({0, 0}, 1, 1), kMinFineSteps) -
                      Matrix::Identity(2, 2)),
            0.0);
}

TEST(FineStep, RequiresEnoughSteps) {
  const ConnectionSpec ac(AharonovCasher{0.3});
  EXPECT_THROW(fine_step_transport(ac, PathSpec::circle({0, 0}, 1, 1), 1000), Error);
}

TEST(FineStep, AharonovCasherClosedForm) {
  const ConnectionSpec ac(AharonovCasher{0.3});
  const Matrix t = fine_step_transport(ac, PathSpec::circle({0, 0}, 1, 1), kMinFineSteps);
  EXPECT_LT(frobenius(t - test::diag({test::phase(0.3 * kPi), test::phase(-0.3 * kPi)})), 1e-8);
}

TEST(FineStep, AgreesWithAdaptiveOnAharonovBohm) {
  const ConnectionSpec ab(MultiSolenoid{PunctureSet({{0, 0}}), {1.7}});
  const PathSpec loop = PathSpec::circle({0, 0}, 2, 1);
  EXPECT_LT(frobenius(fine_step_transport(ab, loop, kMinFineSteps) - parallel_transport(ab, loop, 1e-10).matrix),
            1e-8);
}

TEST(FineStep, PoleProximity) {
  const ConnectionSpec ab(MultiSolenoid{PunctureSet({{0, 0}}), {1.7}});
  try {
    fine_step_transport(ab, PathSpec::polyline(std::vector<PlanePoint>{{-1, 0}, {1, 0}}), kMinFineSteps);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoleProximity);
  }
}

// Symmetric midpoint stepping: successive differences shrink by ~4 per halving.
TEST(FineStep, SecondOrderConvergence) {
  const std::vector<std::pair<ConnectionSpec, PathSpec>> cases{
      {ConnectionSpec(MultiSolenoid{PunctureSet({{0, 0}}), {1.7}}),
       PathSpec::polyline(std::vector<PlanePoint>{{2, -1}, {2, 2}, {-1, 2}})},
      {ConnectionSpec(AharonovCasher{0.3}), PathSpec::polyline(std::vector<PlanePoint>{{1, -1}, {1, 1}, {-1, 1}})},
      {ConnectionSpec(FuchsianLog{PunctureSet({{-0.5, 0}, {0.5, 0}}),
                                  {0.3 * pauli(3) + 0.1 * pauli(1), 0.25 * pauli(1) - 0.15 * pauli(2)},
                                  {}}),
       PathSpec::polyline(std::vector<PlanePoint>{{-2, 1}, {2, 1}, {2, -1}})}};
  for (const auto& [conn, path] : cases) {
    const Matrix a = oracle::detail::uniform_midpoint_product(conn, path, 256);
    const Matrix b = oracle::detail::uniform_midpoint_product(conn, path, 512);
    const Matrix c = oracle::detail::uniform_midpoint_product(conn, path, 1024);
    const double ratio = frobenius(a - b) / frobenius(b - c);
    EXPECT_GT(ratio, 3.5) << conn.kind();
    EXPECT_LT(ratio, 4.5) << conn.kind();
  }
}

TEST(Conjugation, Examples) {
  const Matrix i0 = test::tau(1) + 0.3 * test::tau(3);
  EXPECT_EQ(frobenius(oracle::conjugation_oracle(Matrix::Identity(2, 2), i0) - i0), 0.0);
  const double lambda = 0.3;
  const Matrix rho = test::diag({test::phase(kPi * lambda), test::phase(-kPi * lambda)});
  const Matrix out = oracle::conjugation_oracle(rho, test::tau(1));
  EXPECT_LT(frobenius(out - (std::cos(kTwoPi * lambda) * test::tau(1) - std::sin(kTwoPi * lambda) * test::tau(2))),
            1e-15);
  std::mt19937_64 rng(3);
  const Matrix u = random_unitary(2, rng);
  Eigen::ComplexEigenSolver<Matrix> e0(i0), e1(oracle::conjugation_oracle(u, i0));
  EXPECT_LT(std::abs(e0.eigenvalues().prod() - e1.eigenvalues().prod()), 1e-14);
  EXPECT_LT(std::abs(e0.eigenvalues().sum() - e1.eigenvalues().sum()), 1e-14);
  try {
    oracle::conjugation_oracle(Matrix::Zero(2, 2), i0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singular);
  }
}

TEST(Report, PassIffBelowBound) {
  const Matrix a = Matrix::Identity(2, 2);
  const Matrix b = a + Matrix::Constant(2, 2, 1e-9);
  const auto r = oracle::make_report("q", a, b, 1e-8);
  EXPECT_NEAR(r.deviation, 2e-9, 1e-15);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(oracle::make_report("q", a, b, 1e-9).pass);
}

}  // namespace
}  // namespace holonomy
