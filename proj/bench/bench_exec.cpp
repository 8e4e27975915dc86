// Serial against OpenMP execution of the registry sweep and the search.
#include "cplx1/registry.hpp"

#include <benchmark/benchmark.h>

using namespace cplx1;

namespace {

const ParamBounds kSweep{{"zeta", 4}, {"k", 3}, {"r", 3}, {"d", 2}};

void BM_VerifyFamily(benchmark::State& state) {
  Exec exec = state.range(0) ? Exec::parallel : Exec::serial;
  for (auto _ : state) {
    FamilyReport rep = verify_family("9", kSweep, exec);
    benchmark::DoNotOptimize(rep);
  }
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_Search(benchmark::State& state) {
  Exec exec = state.range(0) ? Exec::parallel : Exec::serial;
  std::vector<ExponentData> shapes = search_shapes();
  shapes.resize(2);
  for (auto _ : state) {
    SearchReport rep = search(1, exec, shapes);
    benchmark::DoNotOptimize(rep);
  }
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_VerifyFamily)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Search)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
