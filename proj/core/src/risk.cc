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

#include "rankagg/risk.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rankagg/ordering.h"
#include "rankagg/sampling.h"

namespace rankagg {
namespace {

JudgmentRefs Refs(const std::vector<PreferenceJudgment>& judgments,
                  const std::vector<int>& indices) {
  JudgmentRefs refs;
  refs.reserve(indices.size());
  for (int i : indices) refs.push_back(&judgments[i]);
  return refs;
}

// Advances `idx` to the next k-subset of {0..n-1} in lexicographic order.
bool NextCombination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double BinomialPmf(int n, int l, double p) {
  if (p <= 0.0) return l == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return l == n ? 1.0 : 0.0;
  const double log_choose = std::lgamma(n + 1.0) - std::lgamma(l + 1.0) -
                            std::lgamma(n - l + 1.0);
  return std::exp(log_choose + l * std::log(p) + (n - l) * std::log1p(-p));
}

// Plain gradient descent with Armijo backtracking on a surrogate's
// conditional risk.
Vector RefineSurrogateMinimum(const Vector& start, const LimitLaw& law,
                              const Surrogate& surrogate, int iterations) {
  Vector alpha = start;
  LossAndGradient current = ConditionalRisk(alpha, law, surrogate);
  double step = 1.0;
  for (int it = 0; it < iterations; ++it) {
    const double g2 = current.gradient.squaredNorm();
    if (g2 < 1e-24) break;
    bool moved = false;
    for (int tries = 0; tries < 60; ++tries) {
      Vector trial = alpha - step * current.gradient;
      LossAndGradient next = ConditionalRisk(trial, law, surrogate);
      if (next.value <= current.value - 0.5 * step * g2) {
        alpha = std::move(trial);
        current = std::move(next);
        step *= 2.0;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return alpha;
}

}  // namespace

void UStatConfig::Validate() const {
  if (k < 1) throw Error("UStatConfig: k must be >= 1");
  if (mc_samples < 1) throw Error("UStatConfig: mc_samples must be >= 1");
  if (enumeration_cap < 1) {
    throw Error("UStatConfig: enumeration_cap must be >= 1");
  }
}

double SubsetCount(int n, int k) {
  if (n < k) return 1.0;
  const int r = std::min(k, n - k);
  double c = 1.0;
  for (int i = 0; i < r; ++i) c = c * (n - i) / (i + 1);
  return std::round(c);
}

double ConditionalRisk(const Vector& alpha, const LimitLaw& law,
                       const TargetLoss& loss) {
  double risk = 0.0;
  for (std::size_t t = 0; t < law.size(); ++t) {
    if (law.probabilities()[t] == 0.0) continue;
    risk += law.probabilities()[t] * loss.Evaluate(alpha, law.support()[t]);
  }
  return risk;
}

LossAndGradient ConditionalRisk(const Vector& alpha, const LimitLaw& law,
                                const Surrogate& surrogate) {
  LossAndGradient out{0.0, Vector::Zero(alpha.size())};
  for (std::size_t t = 0; t < law.size(); ++t) {
    const double p = law.probabilities()[t];
    if (p == 0.0) continue;
    LossAndGradient term = surrogate.Evaluate(alpha, law.support()[t]);
    out.value += p * term.value;
    out.gradient += p * term.gradient;
  }
  return out;
}

RiskEstimate UStatisticEmpiricalRisk(const LinearScorer& scorer,
                                     const QueryDataset& data,
                                     const UStatConfig& cfg,
                                     const Surrogate& surrogate,
                                     const StructureFunction& structure_fn,
                                     Vector* theta_gradient) {
  cfg.Validate();
  if (data.empty()) throw Error("UStatisticEmpiricalRisk: empty dataset");
  const double n = static_cast<double>(data.total_judgments());
  if (n == 0.0) throw Error("UStatisticEmpiricalRisk: no judgments");
  if (theta_gradient != nullptr) *theta_gradient = Vector::Zero(data.dim());

  RiskEstimate out;
  double variance = 0.0;
  for (std::size_t qi = 0; qi < data.queries.size(); ++qi) {
    const Query& q = data.queries[qi];
    const int nq = static_cast<int>(q.judgments.size());
    if (nq == 0) continue;
    const Vector alpha = scorer.Score(q.features);
    const double weight = nq / n;

    double sum = 0.0;
    double sum_sq = 0.0;
    Vector grad_alpha = Vector::Zero(q.m());
    long terms = 0;
    auto accumulate = [&](const std::vector<int>& subset) {
      const Structure s = structure_fn(Refs(q.judgments, subset), q.m());
      const LossAndGradient term = surrogate.Evaluate(alpha, s);
      sum += term.value;
      sum_sq += term.value * term.value;
      if (theta_gradient != nullptr) grad_alpha += term.gradient;
      ++terms;
    };

    const int k = std::min(cfg.k, nq);
    const double count = SubsetCount(nq, cfg.k);
    if (count <= static_cast<double>(cfg.enumeration_cap)) {
      std::vector<int> subset(k);
      std::iota(subset.begin(), subset.end(), 0);
      do {
        accumulate(subset);
      } while (NextCombination(subset, nq));
    } else {
      out.exact = false;
      Rng rng = MakeRng(cfg.seed, qi);
      SubsetSampler sampler(nq);
      for (int s = 0; s < cfg.mc_samples; ++s) accumulate(sampler.Draw(k, rng));
      const double mean = sum / terms;
      const double var = std::max(0.0, sum_sq / terms - mean * mean) *
                         terms / std::max(1L, terms - 1);
      variance += weight * weight * var / terms;
    }
    out.value += weight * sum / terms;
    if (theta_gradient != nullptr) {
      *theta_gradient +=
          q.features.transpose() * (grad_alpha * (weight / terms));
    }
  }
  out.std_error = std::sqrt(variance);
  return out;
}

void DatasetGenerator::Validate() const {
  if (n < 1) throw Error("DatasetGenerator: n must be >= 1");
  if (queries.empty() || queries.size() != query_probabilities.size()) {
    throw Error("DatasetGenerator: query laws and probabilities mismatch");
  }
  const double total = std::accumulate(query_probabilities.begin(),
                                       query_probabilities.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error("DatasetGenerator: query probabilities must sum to 1");
  }
  for (const FiniteQueryLaw& q : queries) {
    if (q.support.empty() || q.support.size() != q.probabilities.size()) {
      throw Error("DatasetGenerator: malformed judgment law");
    }
  }
}

QueryDataset DatasetGenerator::Sample(Rng& rng) const {
  std::discrete_distribution<int> pick_query(query_probabilities.begin(),
                                             query_probabilities.end());
  std::vector<std::discrete_distribution<int>> pick_judgment;
  for (const FiniteQueryLaw& q : queries) {
    pick_judgment.emplace_back(q.probabilities.begin(), q.probabilities.end());
  }
  QueryDataset data;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    data.queries.push_back({"q" + std::to_string(q), queries[q].features, {},
                            std::nullopt});
  }
  for (int i = 0; i < n; ++i) {
    const int q = pick_query(rng);
    data.queries[q].judgments.push_back(
        queries[q].support[pick_judgment[q](rng)]);
  }
  return data;
}

MonteCarloEstimate PopulationURiskMc(const LinearScorer& scorer,
                                     const DatasetGenerator& generator, int k,
                                     const Surrogate& surrogate,
                                     const StructureFunction& structure_fn,
                                     int reps, std::uint64_t seed) {
  generator.Validate();
  if (reps < 2) throw Error("PopulationURiskMc: reps must be >= 2");
  if (k < 1) throw Error("PopulationURiskMc: k must be >= 1");
  Rng rng = MakeRng(seed);
  std::discrete_distribution<int> pick_query(
      generator.query_probabilities.begin(),
      generator.query_probabilities.end());
  std::vector<std::discrete_distribution<int>> pick_judgment;
  for (const FiniteQueryLaw& q : generator.queries) {
    pick_judgment.emplace_back(q.probabilities.begin(), q.probabilities.end());
  }

  const int num_queries = static_cast<int>(generator.queries.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int r = 0; r < reps; ++r) {
    std::vector<int> counts(num_queries, 0);
    for (int i = 0; i < generator.n; ++i) ++counts[pick_query(rng)];
    double value = 0.0;
    for (int q = 0; q < num_queries; ++q) {
      if (counts[q] == 0) continue;
      const FiniteQueryLaw& law = generator.queries[q];
      const int size = std::min(counts[q], k);
      std::vector<PreferenceJudgment> batch;
      batch.reserve(size);
      for (int i = 0; i < size; ++i) {
        batch.push_back(law.support[pick_judgment[q](rng)]);
      }
      JudgmentRefs refs;
      for (const PreferenceJudgment& j : batch) refs.push_back(&j);
      const Structure s =
          structure_fn(refs, static_cast<int>(law.features.rows()));
      value += counts[q] * surrogate.Value(scorer.Score(law.features), s);
    }
    value /= generator.n;
    sum += value;
    sum_sq += value * value;
  }
  MonteCarloEstimate out;
  out.mean = sum / reps;
  const double var =
      std::max(0.0, (sum_sq - reps * out.mean * out.mean) / (reps - 1));
  out.std_error = std::sqrt(var / reps);
  return out;
}

double PopulationURiskExact(const LinearScorer& scorer,
                            const DatasetGenerator& generator, int k,
                            const Surrogate& surrogate,
                            const StructureFunction& structure_fn,
                            std::int64_t max_tuples) {
  generator.Validate();
  if (k < 1) throw Error("PopulationURiskExact: k must be >= 1");
  double total = 0.0;
  for (std::size_t q = 0; q < generator.queries.size(); ++q) {
    const FiniteQueryLaw& law = generator.queries[q];
    const int support = static_cast<int>(law.support.size());
    const int m = static_cast<int>(law.features.rows());
    const Vector alpha = scorer.Score(law.features);

    // expected[size] = E[psi(f(q), s(Y_1, ..., Y_size))] by enumerating all
    // ordered tuples of support points.
    const int max_size = std::min(k, generator.n);
    std::vector<double> expected(max_size + 1, 0.0);
    for (int size = 1; size <= max_size; ++size) {
      if (std::pow(static_cast<double>(support), size) >
          static_cast<double>(max_tuples)) {
        throw Error("PopulationURiskExact: too many judgment tuples");
      }
      std::vector<int> tuple(size, 0);
      while (true) {
        double prob = 1.0;
        JudgmentRefs refs;
        for (int t : tuple) {
          prob *= law.probabilities[t];
          refs.push_back(&law.support[t]);
        }
        if (prob > 0.0) {
          expected[size] += prob * surrogate.Value(alpha, structure_fn(refs, m));
        }
        int pos = size - 1;
        while (pos >= 0 && ++tuple[pos] == support) tuple[pos--] = 0;
        if (pos < 0) break;
      }
    }
    const double p = generator.query_probabilities[q];
    for (int l = 1; l <= generator.n; ++l) {
      total += l * BinomialPmf(generator.n, l, p) * expected[std::min(l, k)];
    }
  }
  return total / generator.n;
}

BayesResult BayesConditionalMinimizers(const LimitLaw& law,
                                       const TargetLoss& loss) {
  const int m = law.m();
  if (m > kBruteForceMaxItems) throw Error("brute force cap");
  if (m < 1) throw Error("BayesConditionalMinimizers: law has no items");
  if (!loss.ordering_only()) {
    throw Error("BayesConditionalMinimizers: loss is not ordering-only");
  }
  BayesResult out;
  out.min_risk = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, std::vector<int>>> risks;
  for (std::vector<int>& order : AllOrderings(m)) {
    const double r = ConditionalRisk(OrderingRepresentative(order), law, loss);
    out.min_risk = std::min(out.min_risk, r);
    risks.emplace_back(r, std::move(order));
  }
  for (auto& [r, order] : risks) {
    if (r <= out.min_risk + kBayesTieTolerance) {
      out.optimal_orderings.push_back(std::move(order));
    }
  }
  return out;
}

SuboptimalityWitness SuboptimalityH(double epsilon, const LimitLaw& law,
                                    const TargetLoss& loss,
                                    const Surrogate& surrogate,
                                    const std::vector<Vector>& alpha_grid) {
  if (!(epsilon > 0.0)) throw Error("SuboptimalityH: epsilon must be > 0");
  if (alpha_grid.empty()) throw Error("SuboptimalityH: empty grid");

  SuboptimalityWitness out;
  std::vector<double> target(alpha_grid.size());
  std::vector<double> surr(alpha_grid.size());
  double grid_target_min = std::numeric_limits<double>::infinity();
  std::size_t best_surr = 0;
  for (std::size_t g = 0; g < alpha_grid.size(); ++g) {
    target[g] = ConditionalRisk(alpha_grid[g], law, loss);
    surr[g] = ConditionalRisk(alpha_grid[g], law, surrogate).value;
    grid_target_min = std::min(grid_target_min, target[g]);
    if (surr[g] < surr[best_surr]) best_surr = g;
  }
  out.target_min =
      loss.ordering_only() && law.m() <= kBruteForceMaxItems
          ? std::min(grid_target_min,
                     BayesConditionalMinimizers(law, loss).min_risk)
          : grid_target_min;

  out.surrogate_argmin =
      RefineSurrogateMinimum(alpha_grid[best_surr], law, surrogate, 2000);
  out.surrogate_min =
      std::min(surr[best_surr],
               ConditionalRisk(out.surrogate_argmin, law, surrogate).value);

  out.value = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < alpha_grid.size(); ++g) {
    const double gap = target[g] - out.target_min;
    if (gap < epsilon) continue;
    const double value = surr[g] - out.surrogate_min;
    if (value < out.value) {
      out.value = value;
      out.witness = alpha_grid[g];
      out.target_gap = gap;
    }
  }
  if (!std::isfinite(out.value)) throw Error("epsilon too large for instance");
  return out;
}

}  // namespace rankagg
