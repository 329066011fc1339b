// Serial reference against the OpenMP path for the kernels that dominate
// closures and grid scans. Argument 0 selects Serial, 1 Parallel.

#include <benchmark/benchmark.h>

#include <random>

#include "ncg/kernels.hpp"
#include "ncg/nctorus.hpp"
#include "ncg/polyparse.hpp"
#include "ncg/toric.hpp"

using namespace ncg;

namespace {

Exec mode(const benchmark::State& s) { return s.range(0) ? Exec::Parallel : Exec::Serial; }

std::vector<CMatrix> random_family(int count, Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<CMatrix> out;
  for (int k = 0; k < count; ++k) {
    CMatrix m(n, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) m(i, j) = cplx(g(rng), g(rng));
    out.push_back(m);
  }
  return out;
}

void BM_LeftProducts(benchmark::State& state) {
  const auto letters = random_family(8, 24, 1);
  const auto targets = random_family(32, 24, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::left_products(letters, targets, mode(state)));
}
BENCHMARK(BM_LeftProducts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GeneratedAlgebra(benchmark::State& state) {
  const auto [r1, r2] = clock_shift(7, 2);
  const std::vector<CMatrix> gens{r1, r2};
  for (auto _ : state) benchmark::DoNotOptimize(generated_algebra(gens, true, mode(state)).dim());
}
BENCHMARK(BM_GeneratedAlgebra)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_NormProfileS4(benchmark::State& state) {
  const SphereElement e = parse_sphere("a*b + bd + x", ThetaMode::rational(1, 3));
  for (auto _ : state) benchmark::DoNotOptimize(norm_profile(e, 0.05, Sphere::S4, false, mode(state)).jump_h);
}
BENCHMARK(BM_NormProfileS4)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
