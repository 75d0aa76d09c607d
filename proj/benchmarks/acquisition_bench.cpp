// Microbenchmarks for the acquisition kernels. The `bench` CLI subcommand
// measures end-to-end strategy wall times; these isolate the inner pieces.
#include <benchmark/benchmark.h>

#include <vector>

#include "albatch/bench.hpp"
#include "albatch/joint.hpp"
#include "albatch/pairwise.hpp"
#include "albatch/scores.hpp"
#include "albatch/select.hpp"

using namespace albatch;

namespace {

PosteriorTensor tensor_for(int n, int k, int c) {
  PoolSpec spec;
  spec.n = n;
  spec.k = k;
  spec.c = c;
  spec.seed = 7;
  return synthetic_tensor(spec);
}

void BM_BaldScores(benchmark::State& state) {
  PosteriorTensor t = tensor_for(static_cast<int>(state.range(0)), 10, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bald_scores(t));
  }
}
BENCHMARK(BM_BaldScores)->Arg(1000)->Arg(4000);

void BM_PairwiseMiMatrix(benchmark::State& state) {
  PosteriorTensor t = tensor_for(static_cast<int>(state.range(0)), 10, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pairwise_mi_matrix(t));
  }
}
BENCHMARK(BM_PairwiseMiMatrix)->Arg(256)->Arg(512)->Arg(1024);

void BM_PairwiseMiAgainst(benchmark::State& state) {
  PosteriorTensor t = tensor_for(static_cast<int>(state.range(0)), 10, 10);
  std::vector<int> candidates(t.pool_size());
  for (int i = 0; i < t.pool_size(); ++i) candidates[i] = i;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pairwise_mi_against(t, 0, candidates));
  }
}
BENCHMARK(BM_PairwiseMiAgainst)->Arg(1000)->Arg(4000);

void BM_JointEntropyExact(benchmark::State& state) {
  PosteriorTensor t = tensor_for(16, 10, 4);
  std::vector<int> subset(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < subset.size(); ++i) subset[i] = static_cast<int>(i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(joint_entropy_exact(t, subset));
  }
}
BENCHMARK(BM_JointEntropyExact)->Arg(3)->Arg(5)->Arg(6);

void BM_JointEntropyMc(benchmark::State& state) {
  PosteriorTensor t = tensor_for(16, 10, 10);
  std::vector<int> subset = {0, 1, 2, 3, 4, 5, 6, 7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        joint_entropy_mc(t, subset, static_cast<int>(state.range(0)), 3));
  }
}
BENCHMARK(BM_JointEntropyMc)->Arg(1000)->Arg(10000);

void BM_GreedyLbb(benchmark::State& state) {
  PosteriorTensor t = tensor_for(1000, 10, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_lbb(t, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_GreedyLbb)->Arg(10)->Arg(40);

void BM_GreedyBatchBaldExact(benchmark::State& state) {
  PosteriorTensor t = tensor_for(200, 10, 3);  // 3^b configurations
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_batchbald(t, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_GreedyBatchBaldExact)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
