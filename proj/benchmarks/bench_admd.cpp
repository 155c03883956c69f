#include "admd/adaptive.hpp"
#include "admd/datasets.hpp"
#include "admd/delay_embedding.hpp"
#include "admd/dmd.hpp"
#include "admd/filters.hpp"
#include "admd/sketching.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace admd;

SnapshotMatrix surrogate(Index rows, Index cols) {
  SurrogateParams p;
  p.rows = rows;
  p.cols = cols;
  return surrogate_turbulence(p);
}

SnapshotMatrix gyre(Index nx) {
  DoubleGyreParams p;
  p.nx = nx;
  p.ny = nx / 2;
  p.nt = 101;
  return double_gyre_vorticity(p);
}

void BM_FitDmd(benchmark::State& state) {
  const SnapshotMatrix x = gyre(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_dmd(x));
}
BENCHMARK(BM_FitDmd)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_FitDelayDmd(benchmark::State& state) {
  const SnapshotMatrix x = gyre(64);
  const DelayConfig cfg{state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(fit_delay_dmd(x, cfg));
}
BENCHMARK(BM_FitDelayDmd)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SketchedFit(benchmark::State& state) {
  const SnapshotMatrix x = gyre(128);
  const auto [x1, x2] = split_snapshots(x);
  const ProjectionOperator p = gaussian_sketch(x.rows(), state.range(0), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fit_sketched_dmd_pair(x1, x2, p, x.dt(), RankThreshold{}, x.rows()));
  }
}
BENCHMARK(BM_SketchedFit)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ApplySketch(benchmark::State& state) {
  const SnapshotMatrix x = gyre(128);
  const ProjectionOperator g = gaussian_sketch(x.rows(), 64, 3);
  const ProjectionOperator r = row_sample(x.rows(), 64, 3);
  const ProjectionOperator& p = state.range(0) == 0 ? g : r;
  for (auto _ : state) benchmark::DoNotOptimize(apply_sketch(p, x.data()));
}
BENCHMARK(BM_ApplySketch)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_RpcaIalm(benchmark::State& state) {
  const SnapshotMatrix x = surrogate(state.range(0), 2 * state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rpca_ialm(x.data()));
}
BENCHMARK(BM_RpcaIalm)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_DftFilter(benchmark::State& state) {
  const SnapshotMatrix x = surrogate(state.range(0), 300);
  const DftFilterPolicy policy{0.2};
  for (auto _ : state) benchmark::DoNotOptimize(dft_filter(x.data(), policy));
}
BENCHMARK(BM_DftFilter)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_AdmdFit(benchmark::State& state) {
  const SnapshotMatrix x = surrogate(128, 300);
  AdmdConfig cfg;
  if (state.range(0) == 1) cfg.fullrank_filter = DftFilterPolicy{0.2};
  if (state.range(0) == 2) cfg.fullrank_filter = RpcaParams{};
  for (auto _ : state) benchmark::DoNotOptimize(admd_fit(x, cfg));
}
BENCHMARK(BM_AdmdFit)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
