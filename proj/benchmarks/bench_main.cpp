#include <benchmark/benchmark.h>

#include "conefan/bmap.hpp"
#include "conefan/combinat.hpp"
#include "conefan/fan.hpp"
#include "conefan/terms.hpp"

using namespace conefan;

namespace {

void BM_ExtremeRays(benchmark::State& state) {
  std::vector<IntVec> sys = {{1, 0, 0},  {0, 1, 0},  {0, 0, 1},
                             {1, 1, -1}, {1, -1, 2}, {2, 1, 1}};
  for (auto _ : state) benchmark::DoNotOptimize(extreme_rays(sys, 3));
}
BENCHMARK(BM_ExtremeRays);

void BM_Desingularize(benchmark::State& state) {
  Fan f = Fan::unchecked(
      2, {Cone(2, {{1, 0}, {1, 5}}), Cone(2, {{1, 5}, {0, 1}})});
  for (auto _ : state) benchmark::DoNotOptimize(desingularize(f));
}
BENCHMARK(BM_Desingularize);

void BM_DecideFree(benchmark::State& state) {
  std::vector<Term> terms = {parse_term("x1 v x2", 2),
                             parse_term("x1 ^ x2", 2)};
  for (auto _ : state) benchmark::DoNotOptimize(decide_free(terms));
}
BENCHMARK(BM_DecideFree);

void BM_ComplexIso(benchmark::State& state) {
  Fan quad = Fan::unchecked(2, {Cone(2, {{1, 0}, {0, 1}}),
                                Cone(2, {{0, 1}, {-1, 0}}),
                                Cone(2, {{-1, 0}, {0, -1}}),
                                Cone(2, {{0, -1}, {1, 0}})});
  Fan image = Fan::unchecked(2, {Cone(2, {{1, 1}, {0, 1}}),
                                 Cone(2, {{0, 1}, {-1, -1}}),
                                 Cone(2, {{-1, -1}, {0, -1}}),
                                 Cone(2, {{0, -1}, {1, 1}})});
  AbstractComplex a = abstract_complex(quad), b = abstract_complex(image);
  for (auto _ : state) benchmark::DoNotOptimize(complex_isomorphic(a, b));
}
BENCHMARK(BM_ComplexIso);

}  // namespace

BENCHMARK_MAIN();
