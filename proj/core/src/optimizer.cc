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

#include "rankagg/optimizer.h"

#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace rankagg {

StepSchedule StepSchedule::FromName(const std::string& name, double c) {
  StepSchedule s;
  s.c = c;
  if (name == "inv_t") {
    s.kind = Kind::kInvT;
  } else if (name == "inv_sqrt_t") {
    s.kind = Kind::kInvSqrtT;
  } else {
    throw Error("unknown schedule '" + name + "' (valid: inv_t, inv_sqrt_t)");
  }
  s.Validate();
  return s;
}

std::string StepSchedule::name() const {
  return kind == Kind::kInvT ? "inv_t" : "inv_sqrt_t";
}

void StepSchedule::Validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error("StepSchedule: scale must be positive");
  }
}

double StepSchedule::Step(std::int64_t t) const {
  const double tt = static_cast<double>(t);
  return kind == Kind::kInvT ? c / tt : c / std::sqrt(tt);
}

Vector ProxStep(const Vector& theta, const Vector& g, double eta,
                double lambda) {
  return (theta - eta * g) / (1.0 + eta * lambda);
}

TrainReport ProxSgdMinimize(const Vector& theta0,
                            const StochasticOracle& oracle,
                            const ProxSgdOptions& options) {
  if (options.iterations < 1) throw Error("ProxSgd: iterations must be >= 1");
  if (options.lambda < 0.0) throw Error("ProxSgd: lambda must be >= 0");
  options.schedule.Validate();

  Rng rng = MakeRng(options.seed);
  TrainReport report;
  report.seed = options.seed;
  report.iterations = options.iterations;
  Vector theta = theta0;
  Vector avg = Vector::Zero(theta0.size());
  Vector gradient(theta0.size());
  std::deque<double> window;
  double window_sum = 0.0;
  std::string sample_id;

  for (std::int64_t t = 1; t <= options.iterations; ++t) {
    sample_id.clear();
    const double loss = oracle(theta, rng, &gradient, &sample_id);
    if (!gradient.allFinite() || !std::isfinite(loss)) {
      std::ostringstream msg;
      msg << "non-finite gradient at iteration " << t << ", sample "
          << (sample_id.empty() ? "?" : sample_id);
      throw Error(ErrorCode::kAlgorithmFailure, msg.str());
    }
    const double objective = loss + 0.5 * options.lambda * theta.squaredNorm();
    window.push_back(objective);
    window_sum += objective;
    if (window.size() > kMovingAverageWindow) {
      window_sum -= window.front();
      window.pop_front();
    }

    theta = ProxStep(theta, gradient, options.schedule.Step(t),
                     options.lambda);
    avg += (theta - avg) / static_cast<double>(t);

    if (t % kCheckpointEvery == 0 || t == options.iterations) {
      GapCheckpoint cp;
      cp.iteration = t;
      cp.moving_avg_loss = window_sum / static_cast<double>(window.size());
      cp.evaluation = options.evaluate
                          ? options.evaluate(avg)
                          : std::numeric_limits<double>::quiet_NaN();
      report.gap_trace.push_back(cp);
    }
  }
  report.theta_avg = std::move(avg);
  report.theta_last = std::move(theta);
  return report;
}

TermSampler::TermSampler(const QueryDataset& data, int k) : k_(k) {
  if (data.empty()) throw Error("TermSampler: empty dataset");
  if (k < 1) throw Error("TermSampler: k must be >= 1");
  std::vector<double> weights;
  for (std::size_t q = 0; q < data.queries.size(); ++q) {
    const int nq = static_cast<int>(data.queries[q].judgments.size());
    if (nq == 0) continue;
    query_of_slot_.push_back(static_cast<int>(q));
    weights.push_back(nq);
    subsets_.emplace_back(nq);
  }
  if (weights.empty()) throw Error("TermSampler: no judgments");
  pick_ = std::discrete_distribution<int>(weights.begin(), weights.end());
}

SampledTerm TermSampler::Draw(Rng& rng) {
  const int slot = pick_(rng);
  return {query_of_slot_[slot], subsets_[slot].Draw(k_, rng)};
}

SampledTerm SampleTerm(const QueryDataset& data, const UStatConfig& cfg,
                       Rng& rng) {
  cfg.Validate();
  TermSampler sampler(data, cfg.k);
  return sampler.Draw(rng);
}

TrainReport ProxSgdTrain(const QueryDataset& data, const UStatConfig& cfg,
                         const Surrogate& surrogate,
                         const StructureFunction& structure_fn,
                         double lambda, const StepSchedule& schedule,
                         std::int64_t iterations, std::uint64_t seed,
                         std::function<double(const Vector&)> evaluate) {
  cfg.Validate();
  data.Validate();
  TermSampler sampler(data, cfg.k);
  JudgmentRefs refs;

  StochasticOracle oracle = [&](const Vector& theta, Rng& rng,
                                Vector* gradient, std::string* sample_id) {
    const SampledTerm term = sampler.Draw(rng);
    const Query& q = data.queries[term.query];
    refs.clear();
    for (int i : term.subset) refs.push_back(&q.judgments[i]);
    const Structure s = structure_fn(refs, q.m());
    const LossAndGradient lg = surrogate.Evaluate(q.features * theta, s);
    *gradient = q.features.transpose() * lg.gradient;
    if (!gradient->allFinite() || !std::isfinite(lg.value)) {
      std::ostringstream id;
      id << "query " << q.query_id << " judgments {";
      for (std::size_t i = 0; i < term.subset.size(); ++i) {
        id << (i ? "," : "") << term.subset[i];
      }
      id << "}";
      *sample_id = id.str();
    }
    return lg.value;
  };

  ProxSgdOptions options;
  options.lambda = lambda;
  options.schedule = schedule;
  options.iterations = iterations;
  options.seed = seed;
  options.evaluate = std::move(evaluate);
  return ProxSgdMinimize(Vector::Zero(data.dim()), oracle, options);
}

}  // namespace rankagg
