#include <benchmark/benchmark.h>

#include "ludics/random.hpp"
#include "ludics/reduction.hpp"

using namespace ludics;

namespace {

Signature bench_signature() {
  Signature sig;
  sig.declare("a", 2);
  sig.declare("b", 0);
  sig.declare("c", 1);
  return sig;
}

void BM_normalize(benchmark::State& state) {
  Signature sig = bench_signature();
  DesignGen gen(sig, 42);
  std::vector<DesignPtr> designs;
  for (int i = 0; i < 64; ++i) designs.push_back(gen.positive((int)state.range(0), true));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalize(designs[i++ % designs.size()]));
  }
}
BENCHMARK(BM_normalize)->Arg(4)->Arg(6)->Arg(8);

void BM_orthogonality(benchmark::State& state) {
  Signature sig = bench_signature();
  DesignGen gen(sig, 42);
  std::vector<std::pair<DesignPtr, DesignPtr>> pairs;
  for (int i = 0; i < 64; ++i) pairs.emplace_back(gen.positive(4), gen.negative(4));
  size_t i = 0;
  for (auto _ : state) {
    auto& [p, n] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(is_orthogonal(p, n));
  }
}
BENCHMARK(BM_orthogonality);

}  // namespace
