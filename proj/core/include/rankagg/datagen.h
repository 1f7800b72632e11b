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

// Synthetic judgment generators: BTL pairs, cascade sessions, power-law
// query arrivals, and linear-relevance ranking problems.

#ifndef RANKAGG_DATAGEN_H_
#define RANKAGG_DATAGEN_H_

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "rankagg/types.h"

namespace rankagg {

// Each draw picks an unordered pair uniformly, then orients it with
// P(i beats j) = 1 / (1 + exp(r_j - r_i)).
std::vector<ComparisonPreference> BtlPairSampler(const Vector& relevances,
                                                 int n_pairs, Rng& rng);
std::vector<ComparisonPreference> BtlPairSampler(const Vector& relevances,
                                                 int n_pairs,
                                                 std::uint64_t seed);

// s(i) = (1 / (m - 1)) sum_{j != i} [softplus(r_i - r_j) - softplus(r_j - r_i)].
ScoreStructure LimitingScore(const Vector& relevances);

// Sessions scan `presented` in order and click the first satisfying item.
std::vector<ClickRecord> CascadeSessionSampler(
    const Vector& p, const std::vector<int>& presented, int n_sessions,
    Rng& rng);
std::vector<ClickRecord> CascadeSessionSampler(
    const Vector& p, const std::vector<int>& presented, int n_sessions,
    std::uint64_t seed);

// p_q proportional to q^{-beta-1} on q = 1..num_queries.
std::vector<double> PowerLawProbabilities(double beta, int num_queries);
// 1-based query ids.
std::vector<int> PowerLawQuerySampler(double beta, int num_queries,
                                      int n_draws, std::uint64_t seed);

struct SyntheticProblem {
  QueryDataset data;  // features and relevances, no judgments
  Vector theta_star;
  Vector theta_jump;
};

// Relevance r = scale * (X theta* + jump * [X theta_jump - 1]_+) + noise.
// With jump = 0 relevances are linear in the features (up to the noise); a
// positive jump lifts a minority of items to the top along a second
// direction, so no linear scorer orders every item correctly.
struct RelevanceNoise {
  double noise_sd = 0.0;
  double jump = 0.0;
  double scale = 1.0;

  void Validate() const;
};

// theta*, theta_jump ~ N(0, I / d) and features ~ N(0, 1), all i.i.d.
SyntheticProblem SyntheticRankingProblem(int m, int d, int num_queries,
                                         const RelevanceNoise& noise,
                                         std::uint64_t seed);
SyntheticProblem SyntheticRankingProblem(int m, int d, int num_queries,
                                         double noise_sd, std::uint64_t seed);

// Appends n BTL pairs, choosing the query per pair uniformly or, when
// `beta` is set, from the power law. Queries need relevances.
void AttachBtlPairs(QueryDataset& data, int n_pairs,
                    std::optional<double> beta, Rng& rng);
// Appends cascade sessions with p = sigmoid(r) over a fresh uniformly random
// presentation order per session.
void AttachCascadeSessions(QueryDataset& data, int n_sessions,
                           std::optional<double> beta, Rng& rng);

struct GeneratorConfig {
  int m = 10;
  int d = 10;
  int num_queries = 50;
  std::optional<double> beta;  // uniform queries when absent
  std::optional<int> n_pairs;
  std::optional<int> n_sessions;
  std::uint64_t seed = 0;
  RelevanceNoise noise;  // "noise_sd", "jump", "relevance_scale"

  // Throws kInvalidArgument naming the offending field.
  static GeneratorConfig FromJson(const nlohmann::json& j);
  void Validate() const;
};

SyntheticProblem GenerateDataset(const GeneratorConfig& cfg);

}  // namespace rankagg

#endif  // RANKAGG_DATAGEN_H_
