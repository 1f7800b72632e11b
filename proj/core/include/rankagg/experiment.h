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

// The BTL ranking pipeline: NDCG risk of a linear scorer against limiting
// scores, and the three fits compared in k-sweeps (regression on aggregated
// log-odds structures, pairwise logistic, regression on limiting scores).

#ifndef RANKAGG_EXPERIMENT_H_
#define RANKAGG_EXPERIMENT_H_

#include <cstdint>
#include <vector>

#include "rankagg/losses.h"
#include "rankagg/optimizer.h"
#include "rankagg/types.h"

namespace rankagg {

struct RankingExperimentConfig {
  GainFunction gain = GainFunction::Exp2();
  DiscountFunction discount = DiscountFunction::Log1p();
  // Log-odds smoothing for one-sided pairs.
  double smoothing = 0.1;
  double lambda = 1e-3;
  StepSchedule schedule{StepSchedule::Kind::kInvT, 5.0};
  std::int64_t iterations = 50000;
};

// LimitingScore of every query's relevances.
std::vector<ScoreStructure> LimitingScores(const QueryDataset& data);

// Mean over queries of the NDCG loss of X_q theta against the limiting
// scores.
double NdcgRisk(const Vector& theta, const QueryDataset& data,
                const std::vector<ScoreStructure>& limiting,
                const GainFunction& gain, const DiscountFunction& discount);

// Exact minimizer of sum_q (n_q / n) psi_reg(X_q theta, s_q) +
// (lambda / 2) ||theta||^2 with s_q the limiting scores; queries are
// weighted equally when the dataset holds no judgments.
Vector FitFullInformation(const QueryDataset& data,
                          const std::vector<ScoreStructure>& limiting,
                          const RankingExperimentConfig& cfg);

// Regression surrogate on order-k empirical log-odds structures.
TrainReport FitRegression(const QueryDataset& data, int k,
                          const RankingExperimentConfig& cfg,
                          std::uint64_t seed);

// Pairwise logistic surrogate on single comparisons.
TrainReport FitLogistic(const QueryDataset& data,
                        const RankingExperimentConfig& cfg,
                        std::uint64_t seed);

struct SweepRow {
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  double ndcg_risk_reg = 0.0;
  double ndcg_risk_log = 0.0;
  double ndcg_risk_full = 0.0;
};

// For every (n, seed): draws n fresh BTL pairs over uniformly chosen
// queries from the dataset's relevances, fits the logistic baseline and the
// full-information reference once, and the regression model for every k.
std::vector<SweepRow> SweepK(const QueryDataset& base,
                             const std::vector<int>& ks,
                             const std::vector<int>& ns,
                             const std::vector<std::uint64_t>& seeds,
                             const RankingExperimentConfig& cfg);

}  // namespace rankagg

#endif  // RANKAGG_EXPERIMENT_H_
