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

// Rank aggregation: maps a batch of preference judgments for one query to a
// structure (a score vector or an adjacency matrix).
//
// Pairs that were never observed contribute zero to every averaged score
// (Ammar-Shah, empirical log-odds) so that each structure function is total.

#ifndef RANKAGG_AGGREGATION_H_
#define RANKAGG_AGGREGATION_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rankagg/types.h"

namespace rankagg {

// Raised when power iteration does not settle; carries the last iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, Vector last_iterate)
      : Error(ErrorCode::kAlgorithmFailure, what),
        last_iterate_(std::move(last_iterate)) {}
  const Vector& last_iterate() const { return last_iterate_; }

 private:
  Vector last_iterate_;
};

// Entrywise mean of the adjacency matrices.
AdjacencyPreference AverageAdjacency(
    std::span<const AdjacencyPreference> prefs);

// A(j, l) = log((P(j > l) + c) / (P(j < l) + c)) over observed pairs, where P
// is the empirical distribution over the whole comparison list.
SkewSymmetricAggregate BtlLogOdds(
    std::span<const ComparisonPreference> comparisons, int m, double c);

// Least-squares scores s = (D - Omega)^+ (Omega o A) 1 with 1's = 0. Throws
// "comparison graph disconnected" when the mask graph has several components.
ScoreStructure ThurstoneMostellerScores(const SkewSymmetricAggregate& agg);

// Row sums of A.
ScoreStructure BordaScores(const SkewSymmetricAggregate& agg);

// s_j = (1 / (m - 1)) sum_{l != j} P(j beats l), with P the win frequency
// within the pair (j, l).
ScoreStructure AmmarShahScores(
    std::span<const ComparisonPreference> comparisons, int m);

// Perron vector of a positive reciprocal matrix by power iteration from the
// uniform vector, normalized to sum 1.
ScoreStructure EigenvectorScores(const Matrix& reciprocal, double tol,
                                 int max_iter);

// Smoothed ratio matrix R(j, l) = (P(j > l) + c) / (P(j < l) + c) over
// observed pairs, 1 elsewhere. Reciprocal by construction.
Matrix ReciprocalRatios(std::span<const ComparisonPreference> comparisons,
                        int m, double c);

struct CascadeEstimate {
  ScoreStructure probabilities;   // clicks / examinations, 0 if unexamined
  std::vector<int> clicks;
  std::vector<int> examinations;

  bool examined(int item) const { return examinations[item] > 0; }
};

// Closed-form cascade-model maximum likelihood estimate.
CascadeEstimate CascadeMle(std::span<const ClickRecord> clicks, int m);

// s(i) = (1 / (m - 1)) sum_{j != i} log(wins(i over j) / wins(j over i)).
// A pair seen in only one direction gets `c` added to both counts; with c = 0
// such a pair is an error.
ScoreStructure EmpiricalLogOddsScores(
    std::span<const ComparisonPreference> comparisons, int m, double c);

// Structure functions s_k over a subset of one query's judgments.

using JudgmentRefs = std::vector<const PreferenceJudgment*>;
using StructureFunction =
    std::function<Structure(const JudgmentRefs& batch, int m)>;

// No aggregation: the first judgment of the batch, as a structure.
StructureFunction IdentityStructure();
StructureFunction AveragedAdjacencyStructure();
StructureFunction LogOddsStructure(double c);
StructureFunction ThurstoneStructure(double c);
StructureFunction BordaStructure(double c);
StructureFunction AmmarShahStructure();
StructureFunction CascadeMleStructure();

// Pulls the judgments of one kind out of a batch; throws on a mixed batch.
std::vector<ComparisonPreference> CollectComparisons(const JudgmentRefs& batch);
std::vector<AdjacencyPreference> CollectAdjacencies(const JudgmentRefs& batch);
std::vector<ClickRecord> CollectClicks(const JudgmentRefs& batch);

}  // namespace rankagg

#endif  // RANKAGG_AGGREGATION_H_
