// Copyright 2026 The rankagg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "rankagg/aggregation.h"
#include "rankagg/consistency.h"
#include "rankagg/datagen.h"
#include "rankagg/loss_objects.h"
#include "rankagg/losses.h"
#include "rankagg/optimizer.h"
#include "rankagg/risk.h"
#include "rankagg/sampling.h"

namespace rankagg {
namespace {

Vector RandomVector(int m, std::uint64_t seed) {
  Rng rng = MakeRng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  Vector v(m);
  for (int i = 0; i < m; ++i) v[i] = z(rng);
  return v;
}

void BM_NdcgLoss(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Vector alpha = RandomVector(m, 1);
  const ScoreStructure s(RandomVector(m, 2).cwiseAbs());
  for (auto _ : state) {
    benchmark::DoNotOptimize(NdcgLoss(alpha, s, GainFunction::Exp2Minus1(),
                                      DiscountFunction::Log1p()));
  }
}
BENCHMARK(BM_NdcgLoss)->Arg(10)->Arg(100)->Arg(1000);

void BM_EmpiricalLogOdds(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto pairs = BtlPairSampler(RandomVector(10, 3), k, std::uint64_t{4});
  for (auto _ : state) {
    benchmark::DoNotOptimize(EmpiricalLogOddsScores(pairs, 10, 0.5));
  }
  state.SetItemsProcessed(state.iterations() * k);
}
BENCHMARK(BM_EmpiricalLogOdds)->Arg(1)->Arg(10)->Arg(100)->Arg(1000);

void BM_ThurstoneMosteller(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto pairs = BtlPairSampler(RandomVector(m, 5), 50 * m, std::uint64_t{6});
  const SkewSymmetricAggregate agg = BtlLogOdds(pairs, m, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(ThurstoneMostellerScores(agg));
}
BENCHMARK(BM_ThurstoneMosteller)->Arg(10)->Arg(50)->Arg(200);

void BM_EigenvectorScores(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto pairs = BtlPairSampler(RandomVector(m, 7), 50 * m, std::uint64_t{8});
  const Matrix r = ReciprocalRatios(pairs, m, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(EigenvectorScores(r, 1e-10, 10000));
}
BENCHMARK(BM_EigenvectorScores)->Arg(10)->Arg(50)->Arg(200);

void BM_CascadeMle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Vector p = RandomVector(10, 9).cwiseAbs().cwiseMin(0.9) * 0.5;
  const std::vector<int> order = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  const auto sessions = CascadeSessionSampler(p, order, n, std::uint64_t{10});
  for (auto _ : state) benchmark::DoNotOptimize(CascadeMle(sessions, 10));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_CascadeMle)->Arg(1000)->Arg(100000);

// Per-iteration cost of the stochastic method grows with k only through the
// structure computation.
void BM_ProxSgdIteration(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  SyntheticProblem p = SyntheticRankingProblem(10, 10, 50, 0.0, 11);
  Rng rng = MakeRng(12);
  AttachBtlPairs(p.data, 20000, std::nullopt, rng);
  UStatConfig cfg;
  cfg.k = k;
  const SurrogatePtr reg =
      MakeNdcgRegressionSurrogate(GainFunction::Exp2(), DiscountFunction::Log1p());
  const StructureFunction sfn = LogOddsStructure(0.1);
  constexpr int kIters = 1000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ProxSgdTrain(p.data, cfg, *reg, sfn, 1e-3,
                     StepSchedule{StepSchedule::Kind::kInvT, 5.0}, kIters, 1));
  }
  state.SetItemsProcessed(state.iterations() * kIters);
}
BENCHMARK(BM_ProxSgdIteration)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_BayesBruteForce(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const LimitLaw law = LimitLaw::PointMass(ScoreStructure(RandomVector(m, 13).cwiseAbs()));
  const auto ndcg = MakeNdcgLoss(GainFunction::Exp2Minus1(), DiscountFunction::Log1p());
  for (auto _ : state) benchmark::DoNotOptimize(BayesConditionalMinimizers(law, *ndcg));
}
BENCHMARK(BM_BayesBruteForce)->Arg(4)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_CounterexampleSearch(benchmark::State& state) {
  PairSurrogateSpec spec;
  spec.phi = ConvexPhi(ConvexPhi::Kind::kHinge);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ConstructLowNoiseCounterexample(spec, SearchConfig{}, 1));
  }
}
BENCHMARK(BM_CounterexampleSearch)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace rankagg

BENCHMARK_MAIN();
