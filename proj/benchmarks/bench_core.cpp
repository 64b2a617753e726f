#include <benchmark/benchmark.h>

#include <vector>

#include <entroflow/entropy.hpp>
#include <entroflow/evolution.hpp>
#include <entroflow/field.hpp>
#include <entroflow/hermite.hpp>
#include <entroflow/inequality.hpp>
#include <entroflow/potential.hpp>
#include <entroflow/quadrature.hpp>

using namespace entroflow;

namespace {

void bench_hermite_table(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  std::vector<double> pts(601);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = -6.0 + 0.02 * double(i);
  for (auto _ : state) benchmark::DoNotOptimize(hermite_eval_table(N, pts));
}
BENCHMARK(bench_hermite_table)->Arg(8)->Arg(32);

void bench_gauss_hermite_rule(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_hermite_rule(m, 1));
}
BENCHMARK(bench_gauss_hermite_rule)->Arg(20)->Arg(128);

void bench_entropy_quadrature(benchmark::State& state) {
  const AdmissibleField af = random_admissible(1, 2, 0.3, 8, 1);
  const QuadratureRule rule = gauss_hermite_rule(20, 1);
  for (auto _ : state) benchmark::DoNotOptimize(entropy_p(af.field, 1.0, rule));
}
BENCHMARK(bench_entropy_quadrature);

void bench_random_admissible(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(random_admissible(1, 2, 0.3, 8, seed++));
}
BENCHMARK(bench_random_admissible);

void bench_trajectory(benchmark::State& state) {
  const AdmissibleField af = random_admissible(1, 2, 0.3, 6, 3);
  const QuadratureRule rule = gauss_hermite_rule(16, 1);
  const DenseGridSpec grid = certification_grid(1, 6, 16);
  const std::vector<double> exponents = {1.0, 2.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sample_trajectory(af.field, exponents, 0.0, 2.0, 21, rule, grid));
}
BENCHMARK(bench_trajectory);

void bench_eigensolve(benchmark::State& state) {
  const int points = static_cast<int>(state.range(0));
  const DiscretizedOperator op = discretize(harmonic_potential(1), points);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(op, 6));
}
BENCHMARK(bench_eigensolve)->Arg(501)->Arg(2001);

}  // namespace

BENCHMARK_MAIN();
