// Serial reference vs OpenMP kernels on the two sampling-heavy operations.

#include <benchmark/benchmark.h>

#include "arfs/finite.hpp"
#include "arfs/instances.hpp"
#include "arfs/point_eval.hpp"
#include "arfs/representation.hpp"

namespace {

arfs::SubspaceFamily family(int n) {
  arfs::instances::Rng rng(static_cast<std::uint64_t>(17 + n));
  return arfs::instances::random_spanning_family(rng, n, arfs::NormKind::L2, n + 2, n - 1);
}

arfs::Execution mode(const benchmark::State& state) {
  return state.range(1) ? arfs::Execution::Parallel : arfs::Execution::Serial;
}

void BM_EpsilonStar(benchmark::State& state) {
  const auto f = family(static_cast<int>(state.range(0)));
  arfs::EpsilonOptions opt;
  opt.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(arfs::epsilon_star_detail(f, opt).value);
}
BENCHMARK(BM_EpsilonStar)->ArgsProduct({{2, 3, 4}, {0, 1}})->ArgNames({"dim", "parallel"})->Unit(benchmark::kMillisecond);

void BM_RepresentationConstant(benchmark::State& state) {
  const auto f = family(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(arfs::representation_constant_detail(f, 1e-8, 500, 3, mode(state)).value);
}
BENCHMARK(BM_RepresentationConstant)
    ->ArgsProduct({{2, 3}, {0, 1}})
    ->ArgNames({"dim", "parallel"})
    ->Unit(benchmark::kMillisecond);

void BM_PointEval(benchmark::State& state) {
  const arfs::ExponentSet e({1.0, 2.0, 3.5});
  arfs::PointEvalOptions opt;
  opt.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(arfs::point_eval_extremal(e, 2.0, opt).value);
}
BENCHMARK(BM_PointEval)->ArgsProduct({{3}, {0, 1}})->ArgNames({"terms", "parallel"})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
