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

#include "rankagg/experiment.h"

#include "rankagg/aggregation.h"
#include "rankagg/datagen.h"
#include "rankagg/loss_objects.h"
#include "rankagg/sampling.h"

namespace rankagg {

std::vector<ScoreStructure> LimitingScores(const QueryDataset& data) {
  std::vector<ScoreStructure> out;
  out.reserve(data.queries.size());
  for (const Query& q : data.queries) {
    if (!q.relevances.has_value()) {
      throw Error("query " + q.query_id + " has no relevances");
    }
    out.push_back(LimitingScore(*q.relevances));
  }
  return out;
}

double NdcgRisk(const Vector& theta, const QueryDataset& data,
                const std::vector<ScoreStructure>& limiting,
                const GainFunction& gain, const DiscountFunction& discount) {
  if (data.empty()) throw Error("NdcgRisk: empty dataset");
  if (limiting.size() != data.queries.size()) {
    throw Error("NdcgRisk: one limiting structure per query required");
  }
  double total = 0.0;
  for (std::size_t q = 0; q < data.queries.size(); ++q) {
    total += NdcgLoss(data.queries[q].features * theta, limiting[q], gain,
                      discount);
  }
  return total / static_cast<double>(data.queries.size());
}

Vector FitFullInformation(const QueryDataset& data,
                          const std::vector<ScoreStructure>& limiting,
                          const RankingExperimentConfig& cfg) {
  if (data.empty()) throw Error("FitFullInformation: empty dataset");
  const int d = data.dim();
  const double n = static_cast<double>(data.total_judgments());
  Matrix a = Matrix::Zero(d, d);
  Vector b = Vector::Zero(d);
  for (std::size_t q = 0; q < data.queries.size(); ++q) {
    const Query& query = data.queries[q];
    const double weight =
        n > 0 ? query.judgments.size() / n : 1.0 / data.queries.size();
    if (weight == 0.0) continue;
    const Vector& s = limiting[q].scores;
    Vector labels(s.size());
    for (int i = 0; i < s.size(); ++i) labels[i] = cfg.gain(s[i]);
    const double z = NdcgNormalizer(s, cfg.gain, cfg.discount);
    if (!(z > 0.0)) throw Error("degenerate gains");
    labels /= z;
    const double scale = weight / query.m();
    a += scale * query.features.transpose() * query.features;
    b += scale * query.features.transpose() * labels;
  }
  a.diagonal().array() += cfg.lambda;
  return a.ldlt().solve(b);
}

TrainReport FitRegression(const QueryDataset& data, int k,
                          const RankingExperimentConfig& cfg,
                          std::uint64_t seed) {
  UStatConfig ucfg;
  ucfg.k = k;
  ucfg.seed = seed;
  const SurrogatePtr reg = MakeNdcgRegressionSurrogate(cfg.gain, cfg.discount);
  return ProxSgdTrain(data, ucfg, *reg, LogOddsStructure(cfg.smoothing),
                      cfg.lambda, cfg.schedule, cfg.iterations, seed);
}

TrainReport FitLogistic(const QueryDataset& data,
                        const RankingExperimentConfig& cfg,
                        std::uint64_t seed) {
  UStatConfig ucfg;
  ucfg.k = 1;
  ucfg.seed = seed;
  const SurrogatePtr log = MakeBtlLogisticSurrogate();
  return ProxSgdTrain(data, ucfg, *log, IdentityStructure(), cfg.lambda,
                      cfg.schedule, cfg.iterations, seed);
}

std::vector<SweepRow> SweepK(const QueryDataset& base,
                             const std::vector<int>& ks,
                             const std::vector<int>& ns,
                             const std::vector<std::uint64_t>& seeds,
                             const RankingExperimentConfig& cfg) {
  const std::vector<ScoreStructure> limiting = LimitingScores(base);
  std::vector<SweepRow> rows;
  for (int n : ns) {
    for (std::uint64_t seed : seeds) {
      QueryDataset data = base;
      for (Query& q : data.queries) q.judgments.clear();
      Rng rng = MakeRng(seed, static_cast<std::uint64_t>(n));
      AttachBtlPairs(data, n, std::nullopt, rng);

      const double risk_full = NdcgRisk(FitFullInformation(data, limiting, cfg),
                                        data, limiting, cfg.gain, cfg.discount);
      const double risk_log =
          NdcgRisk(FitLogistic(data, cfg, seed).theta_avg, data, limiting,
                   cfg.gain, cfg.discount);
      for (int k : ks) {
        SweepRow row;
        row.n = n;
        row.k = k;
        row.seed = seed;
        row.ndcg_risk_full = risk_full;
        row.ndcg_risk_log = risk_log;
        row.ndcg_risk_reg =
            NdcgRisk(FitRegression(data, k, cfg, seed).theta_avg, data,
                     limiting, cfg.gain, cfg.discount);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace rankagg
