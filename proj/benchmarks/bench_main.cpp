#include <benchmark/benchmark.h>

#include <thetadiv/kempf.hpp>
#include <thetadiv/ppav.hpp>
#include <thetadiv/random.hpp>
#include <thetadiv/theta.hpp>

namespace {

using namespace thetadiv;

ComplexVector sample_point(const SiegelMatrix& omega, std::uint64_t seed) {
  Rng rng(seed);
  const int g = omega.genus();
  Eigen::VectorXd u(g), v(g);
  for (int i = 0; i < g; ++i) u(i) = uniform(rng, 0.0, 1.0);
  for (int i = 0; i < g; ++i) v(i) = uniform(rng, 0.0, 1.0);
  return omega.lattice_point(u, v);
}

void BM_EvalTheta(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const SiegelMatrix omega = random_siegel(g, 1);
  const ComplexVector z = sample_point(omega, 2);
  for (auto _ : state) benchmark::DoNotOptimize(eval_theta(z, omega, 1e-12));
}
BENCHMARK(BM_EvalTheta)->DenseRange(1, 3);

void BM_CountTorsion(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const SiegelMatrix omega = random_siegel(g, 1);
  const AbelianPoint x = AbelianPoint::complex(sample_point(omega, 3));
  Config config;
  config.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(count_torsion_on_theta(omega, n, x, config));
}
BENCHMARK(BM_CountTorsion)->Args({2, 2})->Args({2, 3})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_Corank(benchmark::State& state) {
  const int a = static_cast<int>(state.range(0));
  const int b = static_cast<int>(state.range(1));
  const SiegelMatrix omega = product_ppav(std::vector<Complex>{Complex(0.1, 1.1)});
  const AbelianPoint origin = AbelianPoint::origin(1);
  Config config;
  config.workers = 1;
  const TwistCalibration twist = calibrate_twist(a, b, Complex(0.1, 1.1), config);
  for (auto _ : state) benchmark::DoNotOptimize(corank(a, b, origin, origin, omega, twist, config));
}
BENCHMARK(BM_Corank)->Args({1, 2})->Args({2, 3})->Args({3, 4})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
