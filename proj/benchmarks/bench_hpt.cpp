#include <benchmark/benchmark.h>

#include <random>

#include "hpt/bpl.hpp"
#include "hpt/generator.hpp"
#include "hpt/homology.hpp"
#include "hpt/sdr.hpp"

namespace {

static void PerturbSdr(benchmark::State& state) {
  hpt::InstanceGenerator gen(1);
  const hpt::Sdr s = gen.random_sdr(static_cast<std::size_t>(state.range(0)));
  const hpt::Perturbation delta = gen.admissible_perturbation(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hpt::perturb_sdr(s, delta));
  }
}
BENCHMARK(PerturbSdr)->DenseRange(4, 12, 4);

static void SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3);
  hpt::Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hpt::smith_normal_form(m));
  }
}
BENCHMARK(SmithNormalForm)->RangeMultiplier(2)->Range(4, 32);

static void TensorSdr(benchmark::State& state) {
  hpt::InstanceGenerator gen(2);
  const auto rank = static_cast<std::size_t>(state.range(0));
  const hpt::Sdr a = gen.random_sdr(rank);
  const hpt::Sdr b = gen.random_sdr(rank);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hpt::tensor_sdr(a, b));
  }
}
BENCHMARK(TensorSdr)->DenseRange(3, 6, 1);

static void Homology(benchmark::State& state) {
  hpt::InstanceGenerator gen(3);
  const hpt::ChainComplex c = gen.random_complex(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hpt::homology(c));
  }
}
BENCHMARK(Homology)->DenseRange(4, 16, 4);

}  // namespace

BENCHMARK_MAIN();
