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

// Composite proximal stochastic gradient descent with an l2 regularizer
// (lambda / 2) ||theta||^2, Polyak averaging and moving-average loss traces.

#ifndef RANKAGG_OPTIMIZER_H_
#define RANKAGG_OPTIMIZER_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rankagg/aggregation.h"
#include "rankagg/loss_objects.h"
#include "rankagg/risk.h"
#include "rankagg/sampling.h"
#include "rankagg/types.h"

namespace rankagg {

struct StepSchedule {
  enum class Kind { kInvT, kInvSqrtT };

  Kind kind = Kind::kInvT;
  double c = 1.0;

  // "inv_t" or "inv_sqrt_t".
  static StepSchedule FromName(const std::string& name, double c);
  std::string name() const;
  void Validate() const;
  // eta_t for t >= 1.
  double Step(std::int64_t t) const;
};

inline constexpr int kMovingAverageWindow = 100;
inline constexpr int kCheckpointEvery = 100;

struct GapCheckpoint {
  std::int64_t iteration = 0;
  // Mean of the last min(iteration, 100) sampled objective values.
  double moving_avg_loss = 0.0;
  // Optional caller-supplied evaluation of the averaged iterate; NaN if none.
  double evaluation = 0.0;
};

struct TrainReport {
  Vector theta_avg;
  Vector theta_last;
  std::vector<GapCheckpoint> gap_trace;
  std::int64_t iterations = 0;
  std::uint64_t seed = 0;
};

// argmin_x <x, g> + (lambda / 2) ||x||^2 + ||x - theta||^2 / (2 eta).
Vector ProxStep(const Vector& theta, const Vector& g, double eta,
                double lambda);

// One stochastic draw: returns the sampled loss at theta, writes its
// gradient, and may label the sample for diagnostics.
using StochasticOracle = std::function<double(
    const Vector& theta, Rng& rng, Vector* gradient, std::string* sample_id)>;

struct ProxSgdOptions {
  double lambda = 0.0;
  StepSchedule schedule;
  std::int64_t iterations = 1000;
  std::uint64_t seed = 0;
  // Called on the averaged iterate at each checkpoint when set.
  std::function<double(const Vector& theta_avg)> evaluate;
};

// Runs the composite update from theta0. Throws kAlgorithmFailure on a
// non-finite gradient, naming the iteration and the sample.
TrainReport ProxSgdMinimize(const Vector& theta0,
                            const StochasticOracle& oracle,
                            const ProxSgdOptions& options);

struct SampledTerm {
  int query = 0;
  // Sorted judgment indices; the whole batch when n_q < k.
  std::vector<int> subset;
};

// Draws q with probability n_q / n, then a uniform k-subset of its batch.
class TermSampler {
 public:
  TermSampler(const QueryDataset& data, int k);
  SampledTerm Draw(Rng& rng);

 private:
  int k_;
  std::vector<int> query_of_slot_;  // queries with judgments
  std::discrete_distribution<int> pick_;
  std::vector<SubsetSampler> subsets_;
};

SampledTerm SampleTerm(const QueryDataset& data, const UStatConfig& cfg,
                       Rng& rng);

// Minimizes the order-k U-statistic empirical risk of a linear scorer.
TrainReport ProxSgdTrain(const QueryDataset& data, const UStatConfig& cfg,
                         const Surrogate& surrogate,
                         const StructureFunction& structure_fn,
                         double lambda, const StepSchedule& schedule,
                         std::int64_t iterations, std::uint64_t seed,
                         std::function<double(const Vector&)> evaluate = {});

}  // namespace rankagg

#endif  // RANKAGG_OPTIMIZER_H_
