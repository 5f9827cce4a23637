#include <benchmark/benchmark.h>

#include "betaret/beta_spec.hpp"
#include "betaret/classify.hpp"
#include "betaret/glst.hpp"
#include "betaret/realizability.hpp"
#include "betaret/return_map.hpp"

using namespace betaret;

namespace {

void BM_Markers(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (MarkerKind kind : {MarkerKind::Alpha, MarkerKind::Gamma, MarkerKind::Eta}) {
      benchmark::DoNotOptimize(marker(kind, k));
    }
  }
}
BENCHMARK(BM_Markers)->Arg(2)->Arg(8)->Arg(32);

void BM_ClassifyRational(benchmark::State& state) {
  const CertReal b = CertReal::parse_rational("1.93");
  for (auto _ : state) benchmark::DoNotOptimize(classify_beta(b));
}
BENCHMARK(BM_ClassifyRational);

// concrete enumeration blows up with the branch count, the class version does not
void BM_BranchLevels(benchmark::State& state) {
  const BetaCtx ctx(CertReal::parse_rational("1.8"));
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    BranchEnumerator e(ctx, 0);
    for (int t = 0; t < depth && !e.finished(); ++t) benchmark::DoNotOptimize(e.next_level());
  }
}
BENCHMARK(BM_BranchLevels)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_BranchClassLevels(benchmark::State& state) {
  const BetaCtx ctx(CertReal::parse_rational("1.8"));
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    BranchClassEnumerator e(ctx, 0);
    for (int t = 0; t < depth; ++t) benchmark::DoNotOptimize(e.next_level());
  }
}
BENCHMARK(BM_BranchClassLevels)->Arg(8)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_ExpectedReturnGolden(benchmark::State& state) {
  const BetaCtx ctx(BetaSpec::parse("golden").value());
  for (auto _ : state) benchmark::DoNotOptimize(expected_return_time(ctx, 0, 40));
}
BENCHMARK(BM_ExpectedReturnGolden)->Unit(benchmark::kMillisecond);

void BM_Birkhoff(benchmark::State& state) {
  const BetaCtx ctx(BetaSpec::parse("golden").value());
  const CertReal x0 = CertReal::parse_rational("0.7");
  for (auto _ : state) benchmark::DoNotOptimize(birkhoff_average(ctx, 0, x0, state.range(0), 1000));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Birkhoff)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_RealizeFixed(benchmark::State& state) {
  const BetaCtx ctx(CertReal::parse_rational("1.8"));
  const std::vector<int> omega{0, 1, 0, 1, 1, 0, 0, 1};
  const std::vector<int> times{5, 4, 6, 3, 7, 4, 5, 6};
  for (auto _ : state) benchmark::DoNotOptimize(realize_fixed_omega(ctx, omega, times));
}
BENCHMARK(BM_RealizeFixed)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
