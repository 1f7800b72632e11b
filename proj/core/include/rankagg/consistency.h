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

// Small-instance machinery for exhibiting (in)consistency of pairwise
// surrogates: difference graphs, the low-noise test, certified minimization
// of conditional surrogate risks, and a randomized counterexample search.
//
// Conditional surrogate risks of the pairwise, margin and difference
// surrogates all reduce to sum_t c_t phi(alpha_i - alpha_j - o_t). They are
// minimized separately on every ordering cone
//   {alpha : alpha_{s(1)} >= alpha_{s(2)} >= ... >= alpha_{s(m)}},
// parameterized by the nonnegative gaps between consecutive items. The hinge
// is solved exactly by vertex enumeration; smooth phi by projected Newton on
// gaps capped at a large U, whose effect on the infimum is bounded by
// sum_t c_t phi(U - |o_t|).

#ifndef RANKAGG_CONSISTENCY_H_
#define RANKAGG_CONSISTENCY_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rankagg/loss_objects.h"
#include "rankagg/losses.h"
#include "rankagg/risk.h"
#include "rankagg/types.h"

namespace rankagg {

DifferenceGraph DifferenceGraphOf(const AdjacencyPreference& mean_adjacency);

// Mean adjacency of a law whose support holds AdjacencyPreference values.
AdjacencyPreference MeanAdjacency(const LimitLaw& law);

struct LowNoiseResult {
  bool low_noise = true;
  // First (i, j, k), lexicographic, with edges i->j, j->k and
  // w(i->k) < w(i->j) + w(j->k).
  std::optional<std::array<int, 3>> violation;
};

LowNoiseResult IsLowNoise(const DifferenceGraph& g);
bool HasDirectedCycle(const DifferenceGraph& g);

enum class PairSurrogateKind { kPairwisePhi, kMargin, kDifference };

struct PairSurrogateSpec {
  PairSurrogateKind kind = PairSurrogateKind::kPairwisePhi;
  ConvexPhi phi = ConvexPhi(ConvexPhi::Kind::kLogistic);
  // Penalty (pairwise) or margin (margin) map; identity when empty.
  PenaltyMap h;

  std::string name() const;
  SurrogatePtr MakeSurrogate() const;
};

struct PairTerm {
  int i = 0;
  int j = 0;
  double coefficient = 0.0;
  double offset = 0.0;
};

// sum_t c_t phi(alpha_i - alpha_j - o_t).
struct ConditionalObjective {
  int m = 0;
  ConvexPhi phi = ConvexPhi(ConvexPhi::Kind::kLogistic);
  std::vector<PairTerm> terms;

  double Value(const Vector& alpha) const;
  LossAndGradient Evaluate(const Vector& alpha) const;
};

// Pairwise: c_ij = E h(Y_ij). Margin: one term per support point and edge
// with c = p_t, o = h(Y^t_ij). Difference: the averaged-adjacency limit, a
// point mass at E[Y], with c_ij = [EY_ij - EY_ji]_+.
ConditionalObjective BuildConditionalObjective(const LimitLaw& law,
                                               const PairSurrogateSpec& spec);

struct SolverConfig {
  // Gap cap for smooth phi; the effective cap is gap_cap + max |offset|.
  double gap_cap = 40.0;
  int max_newton_iterations = 500;
  double gradient_tolerance = 1e-10;
  // Hinge vertex enumeration is exhaustive only up to this m.
  int hinge_max_items = 5;
};

struct ConeMinimum {
  std::vector<int> ordering;  // items top to bottom
  Vector alpha;               // minimizer on the closed cone, centered
  double value = 0.0;
  // The cone infimum lies in [value - slack, value].
  double slack = 0.0;
  bool certified = false;
  double residual = 0.0;  // projected-gradient norm; 0 for exact vertices
  bool diverges = false;  // some gap sits at the cap
};

ConeMinimum MinimizeOnOrderingCone(const ConditionalObjective& objective,
                                   const std::vector<int>& ordering,
                                   const SolverConfig& cfg);

struct SurrogateMinimum {
  Vector alpha;
  double value = 0.0;
  double lower_bound = 0.0;
  bool certified = false;
  // "exact vertex enumeration" or "projected Newton"; "unbounded below"
  // flags minimizing sequences whose scores diverge.
  std::string certificate;
  bool diverges = false;
  std::vector<ConeMinimum> cones;  // one per ordering, lexicographic
};

// Exact-up-to-certificate minimization over all m! ordering cones. Requires
// m <= kBruteForceMaxItems (and hinge_max_items for the hinge).
SurrogateMinimum MinimizeConvexConditionalSurrogate(
    const LimitLaw& law, const PairSurrogateSpec& spec,
    const SolverConfig& cfg = {});

enum class Verdict { kInconsistentWitness, kConsistentOnInstance, kInconclusive };
std::string VerdictName(Verdict v);

struct ReportConfig {
  double epsilon = 0.05;
  // Largest surrogate suboptimality accepted for a witness.
  double tolerance = 1e-6;
  // Strict-order perturbation added to every gap of a witness.
  double witness_perturbation = 1e-9;
  SolverConfig solver;
};

struct Witness {
  std::vector<int> ordering;
  Vector alpha;
  double surrogate_value = 0.0;
  double surrogate_gap = 0.0;  // vs the certified global lower bound
  double target_risk = 0.0;
  double target_gap = 0.0;
};

struct InconsistencyReport {
  std::string surrogate;
  std::string target;
  double epsilon = 0.0;
  double tolerance = 0.0;
  nlohmann::json instance;  // the law, as LawToJson
  BayesResult bayes;
  std::vector<std::vector<int>> surrogate_min_orderings;
  double surrogate_min = 0.0;
  double surrogate_lower_bound = 0.0;
  // Smallest cone minimum over Bayes-optimal orderings.
  double bayes_cone_surrogate_min = 0.0;
  bool diverges = false;
  std::string certificate;
  // Most surrogate-preferred ordering with target gap >= epsilon.
  std::optional<Witness> witness;
  Verdict verdict = Verdict::kInconclusive;
  std::string note;

  nlohmann::json ToJson() const;
};

InconsistencyReport MakeInconsistencyReport(const LimitLaw& law,
                                            const PairSurrogateSpec& spec,
                                            const TargetLoss& target,
                                            const ReportConfig& cfg = {});

struct SearchConfig {
  int max_candidates = 10000;
  ReportConfig report;
};

struct CounterexampleResult {
  LimitLaw law;
  InconsistencyReport report;
  int candidates_tried = 0;
  int low_noise_candidates = 0;
};

// Searches random two-DAG mixtures on 3 nodes (probability 1/2 each) whose
// mean difference graph is low-noise, stopping at the first that yields an
// inconsistency witness for the pairwise edge loss. Rejects the difference
// surrogate; throws kAlgorithmFailure "no witness found" when the budget
// runs out.
CounterexampleResult ConstructLowNoiseCounterexample(
    const PairSurrogateSpec& spec, const SearchConfig& cfg, std::uint64_t seed);

nlohmann::json LawToJson(const LimitLaw& law);

}  // namespace rankagg

#endif  // RANKAGG_CONSISTENCY_H_
