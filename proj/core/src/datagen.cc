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

#include "rankagg/datagen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rankagg/losses.h"
#include "rankagg/sampling.h"

namespace rankagg {
namespace {

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::discrete_distribution<int> QueryPicker(std::optional<double> beta,
                                            int num_queries) {
  if (beta.has_value()) {
    const std::vector<double> p = PowerLawProbabilities(*beta, num_queries);
    return std::discrete_distribution<int>(p.begin(), p.end());
  }
  std::vector<double> p(num_queries, 1.0);
  return std::discrete_distribution<int>(p.begin(), p.end());
}

const Vector& RequireRelevances(const Query& q) {
  if (!q.relevances.has_value()) {
    throw Error("query " + q.query_id + " has no relevances");
  }
  return *q.relevances;
}

}  // namespace

std::vector<ComparisonPreference> BtlPairSampler(const Vector& relevances,
                                                 int n_pairs, Rng& rng) {
  const int m = static_cast<int>(relevances.size());
  if (m < 2) throw Error("BtlPairSampler: need m >= 2");
  if (n_pairs < 0) throw Error("BtlPairSampler: negative pair count");
  std::vector<ComparisonPreference> out;
  out.reserve(n_pairs);
  for (int t = 0; t < n_pairs; ++t) {
    int i = UniformIndex(rng, m);
    int j = UniformIndex(rng, m - 1);
    if (j >= i) ++j;
    if (i > j) std::swap(i, j);
    const double p_ij = Sigmoid(relevances[i] - relevances[j]);
    if (Uniform01(rng) < p_ij) {
      out.push_back({i, j});
    } else {
      out.push_back({j, i});
    }
  }
  return out;
}

std::vector<ComparisonPreference> BtlPairSampler(const Vector& relevances,
                                                 int n_pairs,
                                                 std::uint64_t seed) {
  Rng rng = MakeRng(seed);
  return BtlPairSampler(relevances, n_pairs, rng);
}

ScoreStructure LimitingScore(const Vector& relevances) {
  const int m = static_cast<int>(relevances.size());
  if (m < 2) throw Error("LimitingScore: need m >= 2");
  Vector s = Vector::Zero(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const double x = relevances[i] - relevances[j];
      s[i] += Softplus(x) - Softplus(-x);
    }
  }
  return ScoreStructure(s / (m - 1));
}

std::vector<ClickRecord> CascadeSessionSampler(
    const Vector& p, const std::vector<int>& presented, int n_sessions,
    Rng& rng) {
  const int m = static_cast<int>(p.size());
  for (int i = 0; i < m; ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) {
      throw Error("CascadeSessionSampler: probabilities must lie in [0, 1]");
    }
  }
  ClickRecord proto{presented, 1};
  proto.Validate(m);
  std::vector<ClickRecord> out;
  out.reserve(n_sessions);
  const int len = static_cast<int>(presented.size());
  for (int s = 0; s < n_sessions; ++s) {
    int position = len + 1;
    for (int pos = 0; pos < len; ++pos) {
      if (Uniform01(rng) < p[presented[pos]]) {
        position = pos + 1;
        break;
      }
    }
    out.push_back({presented, position});
  }
  return out;
}

std::vector<ClickRecord> CascadeSessionSampler(
    const Vector& p, const std::vector<int>& presented, int n_sessions,
    std::uint64_t seed) {
  Rng rng = MakeRng(seed);
  return CascadeSessionSampler(p, presented, n_sessions, rng);
}

std::vector<double> PowerLawProbabilities(double beta, int num_queries) {
  if (num_queries < 1) throw Error("power law: need at least one query");
  if (!(beta > 0.0)) throw Error("power law: beta must be > 0");
  std::vector<double> p(num_queries);
  for (int q = 1; q <= num_queries; ++q) p[q - 1] = std::pow(q, -beta - 1.0);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= total;
  return p;
}

std::vector<int> PowerLawQuerySampler(double beta, int num_queries,
                                      int n_draws, std::uint64_t seed) {
  const std::vector<double> p = PowerLawProbabilities(beta, num_queries);
  std::discrete_distribution<int> pick(p.begin(), p.end());
  Rng rng = MakeRng(seed);
  std::vector<int> out(n_draws);
  for (int& q : out) q = pick(rng) + 1;
  return out;
}

void RelevanceNoise::Validate() const {
  if (!(noise_sd >= 0.0)) throw Error("noise_sd must be >= 0");
  if (!(jump >= 0.0)) throw Error("jump must be >= 0");
  if (!(scale > 0.0)) throw Error("relevance scale must be > 0");
}

SyntheticProblem SyntheticRankingProblem(int m, int d, int num_queries,
                                         const RelevanceNoise& noise,
                                         std::uint64_t seed) {
  if (m < 1) throw Error("synthetic problem: m must be >= 1");
  if (d < 1) throw Error("synthetic problem: d must be >= 1");
  if (num_queries < 1) throw Error("synthetic problem: need queries");
  noise.Validate();
  Rng rng = MakeRng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sd = 1.0 / std::sqrt(static_cast<double>(d));
  SyntheticProblem out;
  out.theta_star.resize(d);
  out.theta_jump.resize(d);
  for (int k = 0; k < d; ++k) out.theta_star[k] = sd * normal(rng);
  for (int k = 0; k < d; ++k) out.theta_jump[k] = sd * normal(rng);
  for (int q = 0; q < num_queries; ++q) {
    Query query;
    query.query_id = std::to_string(q + 1);
    query.features.resize(m, d);
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < d; ++k) query.features(i, k) = normal(rng);
    }
    Vector r = query.features * out.theta_star;
    if (noise.jump > 0.0) {
      const Vector lift = query.features * out.theta_jump;
      for (int i = 0; i < m; ++i) {
        r[i] += noise.jump * std::max(0.0, lift[i] - 1.0);
      }
    }
    r *= noise.scale;
    if (noise.noise_sd > 0.0) {
      for (int i = 0; i < m; ++i) r[i] += noise.noise_sd * normal(rng);
    }
    query.relevances = std::move(r);
    out.data.queries.push_back(std::move(query));
  }
  return out;
}

SyntheticProblem SyntheticRankingProblem(int m, int d, int num_queries,
                                         double noise_sd, std::uint64_t seed) {
  RelevanceNoise noise;
  noise.noise_sd = noise_sd;
  return SyntheticRankingProblem(m, d, num_queries, noise, seed);
}

void AttachBtlPairs(QueryDataset& data, int n_pairs,
                    std::optional<double> beta, Rng& rng) {
  if (data.empty()) throw Error("AttachBtlPairs: empty dataset");
  const int num_queries = static_cast<int>(data.queries.size());
  std::discrete_distribution<int> pick = QueryPicker(beta, num_queries);
  std::vector<int> counts(num_queries, 0);
  for (int t = 0; t < n_pairs; ++t) ++counts[pick(rng)];
  for (int q = 0; q < num_queries; ++q) {
    Query& query = data.queries[q];
    for (const ComparisonPreference& c :
         BtlPairSampler(RequireRelevances(query), counts[q], rng)) {
      query.judgments.emplace_back(c);
    }
  }
}

void AttachCascadeSessions(QueryDataset& data, int n_sessions,
                           std::optional<double> beta, Rng& rng) {
  if (data.empty()) throw Error("AttachCascadeSessions: empty dataset");
  const int num_queries = static_cast<int>(data.queries.size());
  std::discrete_distribution<int> pick = QueryPicker(beta, num_queries);
  for (int t = 0; t < n_sessions; ++t) {
    Query& query = data.queries[pick(rng)];
    const Vector& r = RequireRelevances(query);
    Vector p(r.size());
    for (int i = 0; i < r.size(); ++i) p[i] = Sigmoid(r[i]);
    std::vector<int> order(query.m());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    query.judgments.emplace_back(CascadeSessionSampler(p, order, 1, rng)[0]);
  }
}

GeneratorConfig GeneratorConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("generator config must be a JSON object");
  static const char* kKnown[] = {"m",          "d",       "num_queries",
                                 "beta",       "n_pairs", "n_sessions",
                                 "seed",       "noise_sd", "jump",
                                 "relevance_scale"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : kKnown) known = known || it.key() == k;
    if (!known) throw Error("generator config: unknown field '" + it.key() + "'");
  }
  GeneratorConfig cfg;
  try {
    cfg.m = j.at("m").get<int>();
    cfg.d = j.at("d").get<int>();
    cfg.num_queries = j.at("num_queries").get<int>();
    if (j.contains("beta") && !j["beta"].is_null()) {
      cfg.beta = j["beta"].get<double>();
    }
    if (j.contains("n_pairs")) cfg.n_pairs = j["n_pairs"].get<int>();
    if (j.contains("n_sessions")) cfg.n_sessions = j["n_sessions"].get<int>();
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.noise.noise_sd = j.value("noise_sd", 0.0);
    cfg.noise.jump = j.value("jump", 0.0);
    cfg.noise.scale = j.value("relevance_scale", 1.0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("generator config: ") + e.what());
  }
  cfg.Validate();
  return cfg;
}

void GeneratorConfig::Validate() const {
  if (m < 2) throw Error("generator config: m must be >= 2");
  if (d < 1) throw Error("generator config: d must be >= 1");
  if (num_queries < 1) throw Error("generator config: num_queries must be >= 1");
  if (beta.has_value() && !(*beta > 0.0)) {
    throw Error("generator config: beta must be > 0");
  }
  if (n_pairs.has_value() == n_sessions.has_value()) {
    throw Error("generator config: give exactly one of n_pairs, n_sessions");
  }
  if (n_pairs.value_or(0) < 0 || n_sessions.value_or(0) < 0) {
    throw Error("generator config: judgment counts must be >= 0");
  }
  try {
    noise.Validate();
  } catch (const Error& e) {
    throw Error(std::string("generator config: ") + e.what());
  }
}

SyntheticProblem GenerateDataset(const GeneratorConfig& cfg) {
  cfg.Validate();
  SyntheticProblem problem =
      SyntheticRankingProblem(cfg.m, cfg.d, cfg.num_queries, cfg.noise,
                              cfg.seed);
  Rng rng = MakeRng(cfg.seed, 1);
  if (cfg.n_pairs.has_value()) {
    AttachBtlPairs(problem.data, *cfg.n_pairs, cfg.beta, rng);
  } else {
    AttachCascadeSessions(problem.data, *cfg.n_sessions, cfg.beta, rng);
  }
  return problem;
}

}  // namespace rankagg
