#include <benchmark/benchmark.h>

#include "cuntz/classify.hpp"
#include "cuntz/measure.hpp"
#include "cuntz/monic_system.hpp"

using namespace cuntz;

namespace {

MarkovSpec m1() {
  return MarkovSpec::create({{Rational(1, 3), Rational(2, 3)}, {Rational(1, 2), Rational(1, 2)}});
}

MarkovSpec m3() {
  return MarkovSpec::create({{Rational(1, 2), Rational(1, 3), Rational(1, 6)},
                             {Rational(1, 4), Rational(1, 4), Rational(1, 2)},
                             {Rational(2, 5), Rational(2, 5), Rational(1, 5)}});
}

void BM_CuntzRelations(benchmark::State& state) {
  const MonicSystem sys = markov_monic_system(m1());
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cuntz_relations_check(sys, depth, 10, 1).pass());
  }
}
BENCHMARK(BM_CuntzRelations)->Arg(3)->Arg(5)->Arg(7);

void BM_AffinityBruteForce(benchmark::State& state) {
  const Measure a = Measure::markov(m1());
  const Measure b = Measure::product(ProductSpec::create({Rational(1, 3), Rational(2, 3)}));
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(affinity(a, b, depth, AffinityMethod::kBruteForce));
  }
}
BENCHMARK(BM_AffinityBruteForce)->DenseRange(4, 12, 4);

void BM_AffinityRecursion(benchmark::State& state) {
  const Measure a = Measure::markov(m1());
  const Measure b = Measure::product(ProductSpec::create({Rational(1, 3), Rational(2, 3)}));
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(affinity(a, b, depth, AffinityMethod::kRecursion));
  }
}
BENCHMARK(BM_AffinityRecursion)->DenseRange(4, 12, 4)->Arg(200);

void BM_StationaryVector(benchmark::State& state) {
  const MarkovSpec spec = m3();
  for (auto _ : state) {
    benchmark::DoNotOptimize(stationary_vector(spec.transition));
  }
}
BENCHMARK(BM_StationaryVector);

void BM_FixedPointSpace(benchmark::State& state) {
  const MarkovSpec spec = m3();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fixed_point_space(spec, spec).dimension);
  }
}
BENCHMARK(BM_FixedPointSpace);

}  // namespace
BENCHMARK_MAIN();
