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

// Conditional risks under finite-support limit laws, the order-k
// U-statistic empirical risk and its population counterpart, and brute-force
// Bayes machinery over orderings.

#ifndef RANKAGG_RISK_H_
#define RANKAGG_RISK_H_

#include <cstdint>
#include <vector>

#include "rankagg/aggregation.h"
#include "rankagg/loss_objects.h"
#include "rankagg/types.h"

namespace rankagg {

struct UStatConfig {
  int k = 1;
  // Queries with more than this many k-subsets are estimated by sampling.
  std::int64_t enumeration_cap = 10000;
  int mc_samples = 1000;
  std::uint64_t seed = 0;

  void Validate() const;
};

// C(n, k) as a double; 1 when n < k (the batch then forms a single term).
double SubsetCount(int n, int k);

// sum_t p_t L(alpha, s_t).
double ConditionalRisk(const Vector& alpha, const LimitLaw& law,
                       const TargetLoss& loss);
// sum_t p_t psi(alpha, s_t) together with its gradient in alpha.
LossAndGradient ConditionalRisk(const Vector& alpha, const LimitLaw& law,
                                const Surrogate& surrogate);

struct RiskEstimate {
  double value = 0.0;
  // Monte Carlo standard error; 0 when every query was enumerated exactly.
  double std_error = 0.0;
  bool exact = true;
};

// (1/n) sum_q n_q C(n_q, k)^{-1} sum_{k-subsets} psi(f(q), s(subset)).
// When `theta_gradient` is given it receives the gradient of the same
// expression in theta.
RiskEstimate UStatisticEmpiricalRisk(const LinearScorer& scorer,
                                     const QueryDataset& data,
                                     const UStatConfig& cfg,
                                     const Surrogate& surrogate,
                                     const StructureFunction& structure_fn,
                                     Vector* theta_gradient = nullptr);

// A query with a finite-support judgment law.
struct FiniteQueryLaw {
  Matrix features;
  std::vector<PreferenceJudgment> support;
  std::vector<double> probabilities;
};

// Draws datasets of n i.i.d. (query, judgment) pairs: query q with
// probability query_probabilities[q], then a judgment from its law.
struct DatasetGenerator {
  int n = 1;
  std::vector<double> query_probabilities;
  std::vector<FiniteQueryLaw> queries;

  void Validate() const;
  QueryDataset Sample(Rng& rng) const;
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Monte Carlo estimate of
//   (1/n) sum_q sum_l l P(n_q = l) E[psi(f(q), s(Y_1, ..., Y_{min(l, k)}))]
// drawing query counts and fresh judgment batches, never k-subsets.
MonteCarloEstimate PopulationURiskMc(const LinearScorer& scorer,
                                     const DatasetGenerator& generator, int k,
                                     const Surrogate& surrogate,
                                     const StructureFunction& structure_fn,
                                     int reps, std::uint64_t seed);

// The same quantity computed exactly: binomial query counts and exhaustive
// enumeration of judgment tuples. Throws when more than `max_tuples`
// tuples would be enumerated for one query.
double PopulationURiskExact(const LinearScorer& scorer,
                            const DatasetGenerator& generator, int k,
                            const Surrogate& surrogate,
                            const StructureFunction& structure_fn,
                            std::int64_t max_tuples = 1000000);

struct BayesResult {
  double min_risk = 0.0;
  // Items listed top to bottom, lexicographic order.
  std::vector<std::vector<int>> optimal_orderings;
};

inline constexpr int kBruteForceMaxItems = 7;
inline constexpr double kBayesTieTolerance = 1e-12;

// Exact minimum conditional risk over all m! strict orderings.
BayesResult BayesConditionalMinimizers(const LimitLaw& law,
                                       const TargetLoss& loss);

struct SuboptimalityWitness {
  // psi(witness) - psi_min for the best grid point whose target
  // suboptimality is at least epsilon.
  double value = 0.0;
  Vector witness;
  double target_gap = 0.0;
  double target_min = 0.0;
  double surrogate_min = 0.0;
  Vector surrogate_argmin;
};

// Grid estimate of H(epsilon, D). The surrogate reference minimum is the
// best grid point refined by gradient descent; the target minimum comes from
// brute force when the loss allows it.
SuboptimalityWitness SuboptimalityH(double epsilon, const LimitLaw& law,
                                    const TargetLoss& loss,
                                    const Surrogate& surrogate,
                                    const std::vector<Vector>& alpha_grid);

}  // namespace rankagg

#endif  // RANKAGG_RISK_H_
