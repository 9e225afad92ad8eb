#include <random>

#include <benchmark/benchmark.h>

#include "builtin.hpp"
#include "holonomy/linalg.hpp"
#include "holonomy/monodromy.hpp"
#include "holonomy/transport.hpp"

namespace {

using namespace holonomy;

void BM_Expm(benchmark::State& state) {
  const auto m = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(0);
  std::normal_distribution<double> normal;
  Matrix a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = {normal(rng), normal(rng)};
  }
  for (auto _ : state) benchmark::DoNotOptimize(expm(a));
}
BENCHMARK(BM_Expm)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_AbTransport(benchmark::State& state) {
  const auto conn = cli::builtin::ab_solenoid();
  const auto path = PathSpec::circle({0.0, 0.0}, 2.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(parallel_transport(conn, path, 1e-10));
}
BENCHMARK(BM_AbTransport)->Unit(benchmark::kMicrosecond);

void BM_TwoPoleMonodromy(benchmark::State& state) {
  const auto conn = cli::builtin::two_pole();
  for (auto _ : state) {
    benchmark::DoNotOptimize(monodromy_representation(conn, std::nullopt, 1e-9));
  }
}
BENCHMARK(BM_TwoPoleMonodromy)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
