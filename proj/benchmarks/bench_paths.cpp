#include <benchmark/benchmark.h>

#include "ludics/behaviour.hpp"
#include "ludics/datatypes.hpp"
#include "ludics/locate.hpp"
#include "ludics/random.hpp"

using namespace ludics;

namespace {

void BM_paths_of(benchmark::State& state) {
  Signature sig;
  sig.declare("a", 2);
  sig.declare("b", 0);
  sig.declare("c", 1);
  DesignGen gen(sig, 7);
  std::vector<DesignPtr> designs;
  for (int i = 0; i < 32; ++i) designs.push_back(gen.positive(5));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(paths_of(designs[i++ % designs.size()], (size_t)state.range(0)));
  }
}
BENCHMARK(BM_paths_of)->Arg(8)->Arg(12);

void BM_nat_incarnation(benchmark::State& state) {
  Signature sig;
  sig.declare("n", 0);
  for (auto _ : state) {
    BehaviourContext ctx(sig);  // fresh cache each round
    Bounds bounds;
    bounds.level = (int)state.range(0);
    auto inc = incarnation(ctx, interpret_pattern(nat_pattern(), {}, bounds.level), bounds);
    benchmark::DoNotOptimize(inc.designs.size());
  }
}
BENCHMARK(BM_nat_incarnation)->Arg(2)->Arg(3)->Arg(4);

}  // namespace
