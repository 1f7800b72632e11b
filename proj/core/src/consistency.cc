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

#include "rankagg/consistency.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include "rankagg/ordering.h"
#include "rankagg/sampling.h"

namespace rankagg {
namespace {

using nlohmann::json;

constexpr double kLowNoiseTolerance = 1e-12;
constexpr double kFeasibilityTolerance = 1e-12;

double ApplyH(const PenaltyMap& h, double y) { return h ? h(y) : y; }

// Gap-space form of one term: alpha_i - alpha_j = sign * sum_{s in [lo, hi)} u_s.
struct GapTerm {
  int lo = 0;
  int hi = 0;
  double sign = 1.0;
  double coefficient = 0.0;
  double offset = 0.0;

  double Argument(const Vector& u) const {
    return sign * u.segment(lo, hi - lo).sum() - offset;
  }
};

std::vector<GapTerm> ToGapTerms(const ConditionalObjective& objective,
                                const std::vector<int>& ordering) {
  std::vector<int> position(objective.m);
  for (int r = 0; r < objective.m; ++r) position[ordering[r]] = r;
  std::vector<GapTerm> out;
  for (const PairTerm& t : objective.terms) {
    const int pi = position[t.i];
    const int pj = position[t.j];
    GapTerm g;
    g.lo = std::min(pi, pj);
    g.hi = std::max(pi, pj);
    g.sign = pi < pj ? 1.0 : -1.0;
    g.coefficient = t.coefficient;
    g.offset = t.offset;
    out.push_back(g);
  }
  return out;
}

Vector GapsToAlpha(const Vector& u, const std::vector<int>& ordering) {
  const int m = static_cast<int>(ordering.size());
  Vector alpha = Vector::Zero(m);
  double level = 0.0;
  for (int r = m - 1; r >= 0; --r) {
    alpha[ordering[r]] = level;
    if (r > 0) level += u[r - 1];
  }
  return alpha.array() - alpha.mean();
}

double GapValue(const std::vector<GapTerm>& terms, const ConvexPhi& phi,
                const Vector& u) {
  double v = 0.0;
  for (const GapTerm& t : terms) v += t.coefficient * phi.Value(t.Argument(u));
  return v;
}

ConeMinimum HingeCone(const ConditionalObjective& objective,
                      const std::vector<int>& ordering) {
  const int dim = objective.m - 1;
  const std::vector<GapTerm> terms = ToGapTerms(objective, ordering);

  // Candidate hyperplanes row . u = rhs: the cone facets u_s = 0 and every
  // hinge breakpoint.
  std::vector<std::pair<Vector, double>> planes;
  auto add_plane = [&](Vector row, double rhs) {
    for (const auto& [r, b] : planes) {
      if (r == row && b == rhs) return;
    }
    planes.emplace_back(std::move(row), rhs);
  };
  for (int s = 0; s < dim; ++s) add_plane(Vector::Unit(dim, s), 0.0);
  for (const GapTerm& t : terms) {
    Vector row = Vector::Zero(dim);
    row.segment(t.lo, t.hi - t.lo).setConstant(t.sign);
    add_plane(std::move(row), objective.phi.kink() + t.offset);
  }

  ConeMinimum out;
  out.ordering = ordering;
  out.certified = true;
  out.value = std::numeric_limits<double>::infinity();
  Vector best = Vector::Zero(dim);
  const int p = static_cast<int>(planes.size());
  std::vector<int> pick(dim);
  std::iota(pick.begin(), pick.end(), 0);
  Matrix a(dim, dim);
  Vector b(dim);
  while (true) {
    for (int r = 0; r < dim; ++r) {
      a.row(r) = planes[pick[r]].first.transpose();
      b[r] = planes[pick[r]].second;
    }
    Eigen::FullPivLU<Matrix> lu(a);
    if (lu.rank() == dim) {
      Vector u = lu.solve(b);
      if ((u.array() >= -kFeasibilityTolerance).all()) {
        u = u.cwiseMax(0.0);
        const double v = GapValue(terms, objective.phi, u);
        if (v < out.value) {
          out.value = v;
          best = u;
        }
      }
    }
    int i = dim - 1;
    while (i >= 0 && pick[i] == p - dim + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < dim; ++j) pick[j] = pick[j - 1] + 1;
  }
  out.alpha = GapsToAlpha(best, ordering);
  return out;
}

ConeMinimum SmoothCone(const ConditionalObjective& objective,
                       const std::vector<int>& ordering,
                       const SolverConfig& cfg) {
  const int dim = objective.m - 1;
  const ConvexPhi& phi = objective.phi;
  const std::vector<GapTerm> terms = ToGapTerms(objective, ordering);
  double max_offset = 0.0;
  for (const GapTerm& t : terms) max_offset = std::max(max_offset, std::abs(t.offset));
  const double cap = cfg.gap_cap + max_offset;

  Vector u = Vector::Constant(dim, 0.5);
  Vector g(dim);
  Matrix h(dim, dim);
  auto evaluate = [&](const Vector& x, Vector* grad, Matrix* hess) {
    double v = 0.0;
    if (grad) grad->setZero();
    if (hess) hess->setZero();
    for (const GapTerm& t : terms) {
      const double z = t.Argument(x);
      v += t.coefficient * phi.Value(z);
      if (grad) {
        grad->segment(t.lo, t.hi - t.lo).array() +=
            t.coefficient * t.sign * phi.Derivative(z);
      }
      if (hess) {
        hess->block(t.lo, t.lo, t.hi - t.lo, t.hi - t.lo).array() +=
            t.coefficient * phi.SecondDerivative(z);
      }
    }
    return v;
  };

  ConeMinimum out;
  out.ordering = ordering;
  double value = evaluate(u, &g, &h);
  for (int it = 0; it < cfg.max_newton_iterations; ++it) {
    std::vector<int> free_idx;
    double pg2 = 0.0;
    for (int s = 0; s < dim; ++s) {
      const bool at_lower = u[s] <= 0.0 && g[s] > 0.0;
      const bool at_upper = u[s] >= cap && g[s] < 0.0;
      if (!at_lower && !at_upper) {
        free_idx.push_back(s);
        pg2 += g[s] * g[s];
      }
    }
    out.residual = std::sqrt(pg2);
    if (out.residual < cfg.gradient_tolerance) {
      // A tiny negative gradient may be the tail of a direction that keeps
      // descending; jump such gaps to the cap when that still helps.
      bool escaped = false;
      for (int s = 0; s < dim; ++s) {
        if (g[s] >= 0.0 || u[s] >= cap) continue;
        Vector trial = u;
        trial[s] = cap;
        const double tv = evaluate(trial, nullptr, nullptr);
        if (tv < value) {
          u = std::move(trial);
          value = evaluate(u, &g, &h);
          escaped = true;
        }
      }
      if (escaped) continue;
      out.certified = true;
      break;
    }
    const int nf = static_cast<int>(free_idx.size());
    Matrix hf(nf, nf);
    Vector gf(nf);
    for (int a = 0; a < nf; ++a) {
      gf[a] = g[free_idx[a]];
      for (int c = 0; c < nf; ++c) hf(a, c) = h(free_idx[a], free_idx[c]);
    }
    hf.diagonal().array() += 1e-14 * (1.0 + hf.diagonal().cwiseAbs().maxCoeff());
    Vector df = hf.ldlt().solve(-gf);
    if (!df.allFinite() || df.dot(gf) >= 0.0) df = -gf;

    bool moved = false;
    for (int attempt = 0; attempt < 2 && !moved; ++attempt) {
      double step = 1.0;
      for (int tries = 0; tries < 80; ++tries) {
        Vector trial = u;
        for (int a = 0; a < nf; ++a) {
          trial[free_idx[a]] =
              std::clamp(u[free_idx[a]] + step * df[a], 0.0, cap);
        }
        const double tv = evaluate(trial, nullptr, nullptr);
        if (tv <= value + 1e-4 * g.dot(trial - u) && (trial - u).norm() > 0) {
          u = std::move(trial);
          moved = true;
          break;
        }
        step *= 0.5;
      }
      df = -gf;
    }
    if (!moved) break;
    value = evaluate(u, &g, &h);
  }

  out.value = value;
  out.diverges = (u.array() >= cap - 1e-9).any();
  if (out.diverges) {
    for (const GapTerm& t : terms) {
      out.slack += t.coefficient * phi.Value(cap - std::abs(t.offset));
    }
  }
  out.alpha = GapsToAlpha(u, ordering);
  return out;
}

json VectorJson(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json MatrixJson(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    rows.push_back(VectorJson(m.row(i).transpose()));
  }
  return rows;
}

}  // namespace

DifferenceGraph DifferenceGraphOf(const AdjacencyPreference& mean_adjacency) {
  const Matrix& y = mean_adjacency.weights();
  return DifferenceGraph((y - y.transpose()).cwiseMax(0.0));
}

AdjacencyPreference MeanAdjacency(const LimitLaw& law) {
  Matrix mean = Matrix::Zero(law.m(), law.m());
  for (std::size_t t = 0; t < law.size(); ++t) {
    const auto* y = std::get_if<AdjacencyPreference>(&law.support()[t]);
    if (y == nullptr) throw Error("law support must hold adjacency matrices");
    mean += law.probabilities()[t] * y->weights();
  }
  return AdjacencyPreference(mean);
}

LowNoiseResult IsLowNoise(const DifferenceGraph& g) {
  const int m = g.m();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!g.has_edge(i, j)) continue;
      for (int k = 0; k < m; ++k) {
        if (k == i || k == j || !g.has_edge(j, k)) continue;
        if (g.weight(i, k) + kLowNoiseTolerance <
            g.weight(i, j) + g.weight(j, k)) {
          return {false, std::array<int, 3>{i, j, k}};
        }
      }
    }
  }
  return {};
}

bool HasDirectedCycle(const DifferenceGraph& g) {
  const int m = g.m();
  std::vector<int> indegree(m, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) indegree[j] += g.has_edge(i, j) ? 1 : 0;
  }
  std::vector<int> ready;
  for (int i = 0; i < m; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  int removed = 0;
  while (!ready.empty()) {
    const int i = ready.back();
    ready.pop_back();
    ++removed;
    for (int j = 0; j < m; ++j) {
      if (g.has_edge(i, j) && --indegree[j] == 0) ready.push_back(j);
    }
  }
  return removed != m;
}

std::string PairSurrogateSpec::name() const {
  switch (kind) {
    case PairSurrogateKind::kPairwisePhi:
      return "pairwise-" + phi.name();
    case PairSurrogateKind::kMargin:
      return "margin-" + phi.name();
    case PairSurrogateKind::kDifference:
      return "difference-" + phi.name();
  }
  return "?";
}

SurrogatePtr PairSurrogateSpec::MakeSurrogate() const {
  switch (kind) {
    case PairSurrogateKind::kPairwisePhi:
      return MakePairwisePhiSurrogate(phi, h);
    case PairSurrogateKind::kMargin:
      return MakeMarginSurrogate(phi, h);
    case PairSurrogateKind::kDifference:
      return MakeDifferenceSurrogate(phi);
  }
  return nullptr;
}

double ConditionalObjective::Value(const Vector& alpha) const {
  double v = 0.0;
  for (const PairTerm& t : terms) {
    v += t.coefficient * phi.Value(alpha[t.i] - alpha[t.j] - t.offset);
  }
  return v;
}

LossAndGradient ConditionalObjective::Evaluate(const Vector& alpha) const {
  LossAndGradient out{0.0, Vector::Zero(m)};
  for (const PairTerm& t : terms) {
    const double z = alpha[t.i] - alpha[t.j] - t.offset;
    out.value += t.coefficient * phi.Value(z);
    const double d = t.coefficient * phi.Derivative(z);
    out.gradient[t.i] += d;
    out.gradient[t.j] -= d;
  }
  return out;
}

ConditionalObjective BuildConditionalObjective(const LimitLaw& law,
                                               const PairSurrogateSpec& spec) {
  ConditionalObjective obj;
  obj.m = law.m();
  obj.phi = spec.phi;
  const int m = obj.m;
  if (spec.kind == PairSurrogateKind::kMargin) {
    std::map<std::tuple<int, int, double>, double> merged;
    for (std::size_t t = 0; t < law.size(); ++t) {
      const auto* y = std::get_if<AdjacencyPreference>(&law.support()[t]);
      if (y == nullptr) throw Error("law support must hold adjacency matrices");
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          if ((*y)(i, j) > 0.0) {
            merged[{i, j, ApplyH(spec.h, (*y)(i, j))}] +=
                law.probabilities()[t];
          }
        }
      }
    }
    for (const auto& [key, c] : merged) {
      if (c > 0.0) {
        obj.terms.push_back({std::get<0>(key), std::get<1>(key), c,
                             std::get<2>(key)});
      }
    }
    return obj;
  }

  Matrix coef = Matrix::Zero(m, m);
  if (spec.kind == PairSurrogateKind::kDifference) {
    const Matrix y = MeanAdjacency(law).weights();
    coef = (y - y.transpose()).cwiseMax(0.0);
  } else {
    if (spec.h && spec.h(0.0) != 0.0) throw Error("penalty map needs h(0) = 0");
    for (std::size_t t = 0; t < law.size(); ++t) {
      const auto* y = std::get_if<AdjacencyPreference>(&law.support()[t]);
      if (y == nullptr) throw Error("law support must hold adjacency matrices");
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          if (i != j) {
            coef(i, j) += law.probabilities()[t] * ApplyH(spec.h, (*y)(i, j));
          }
        }
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (coef(i, j) != 0.0) obj.terms.push_back({i, j, coef(i, j), 0.0});
    }
  }
  return obj;
}

ConeMinimum MinimizeOnOrderingCone(const ConditionalObjective& objective,
                                   const std::vector<int>& ordering,
                                   const SolverConfig& cfg) {
  if (static_cast<int>(ordering.size()) != objective.m) {
    throw Error("ordering length does not match the objective");
  }
  for (const PairTerm& t : objective.terms) {
    if (t.coefficient < 0.0) throw Error("negative term coefficient");
  }
  if (objective.m == 1) {
    ConeMinimum out;
    out.ordering = ordering;
    out.alpha = Vector::Zero(1);
    out.value = objective.Value(out.alpha);
    out.certified = true;
    return out;
  }
  if (!objective.phi.smooth()) return HingeCone(objective, ordering);
  return SmoothCone(objective, ordering, cfg);
}

SurrogateMinimum MinimizeConvexConditionalSurrogate(
    const LimitLaw& law, const PairSurrogateSpec& spec,
    const SolverConfig& cfg) {
  const int m = law.m();
  if (m > kBruteForceMaxItems) throw Error("brute force cap");
  if (!spec.phi.smooth() && m > cfg.hinge_max_items) {
    throw Error("hinge vertex enumeration cap exceeded");
  }
  const ConditionalObjective objective = BuildConditionalObjective(law, spec);
  SurrogateMinimum out;
  out.certified = true;
  out.value = std::numeric_limits<double>::infinity();
  out.lower_bound = std::numeric_limits<double>::infinity();
  for (const std::vector<int>& ordering : AllOrderings(m)) {
    ConeMinimum cone = MinimizeOnOrderingCone(objective, ordering, cfg);
    out.certified = out.certified && cone.certified;
    out.lower_bound = std::min(out.lower_bound, cone.value - cone.slack);
    if (cone.value < out.value) {
      out.value = cone.value;
      out.alpha = cone.alpha;
      out.diverges = cone.diverges;
    }
    out.cones.push_back(std::move(cone));
  }
  out.certificate = spec.phi.smooth() ? "projected Newton" : "exact vertex enumeration";
  if (out.diverges) out.certificate += "; unbounded below in alpha";
  return out;
}

std::string VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kInconsistentWitness:
      return "INCONSISTENT WITNESS";
    case Verdict::kConsistentOnInstance:
      return "CONSISTENT ON INSTANCE";
    case Verdict::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

InconsistencyReport MakeInconsistencyReport(const LimitLaw& law,
                                            const PairSurrogateSpec& spec,
                                            const TargetLoss& target,
                                            const ReportConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw Error("epsilon must be > 0");
  InconsistencyReport report;
  report.surrogate = spec.name();
  report.target = target.name();
  report.epsilon = cfg.epsilon;
  report.tolerance = cfg.tolerance;
  report.instance = LawToJson(law);
  report.bayes = BayesConditionalMinimizers(law, target);

  const ConditionalObjective objective = BuildConditionalObjective(law, spec);
  const SurrogateMinimum sm =
      MinimizeConvexConditionalSurrogate(law, spec, cfg.solver);
  report.surrogate_min = sm.value;
  report.surrogate_lower_bound = sm.lower_bound;
  report.diverges = sm.diverges;
  report.certificate = sm.certificate;

  report.bayes_cone_surrogate_min = std::numeric_limits<double>::infinity();
  const ConeMinimum* candidate = nullptr;
  for (const ConeMinimum& cone : sm.cones) {
    if (cone.value - sm.lower_bound <= cfg.tolerance) {
      report.surrogate_min_orderings.push_back(cone.ordering);
    }
    const double gap =
        ConditionalRisk(OrderingRepresentative(cone.ordering), law, target) -
        report.bayes.min_risk;
    if (gap <= kBayesTieTolerance) {
      report.bayes_cone_surrogate_min =
          std::min(report.bayes_cone_surrogate_min, cone.value);
    } else if (gap >= cfg.epsilon &&
               (candidate == nullptr || cone.value < candidate->value)) {
      candidate = &cone;
    }
  }

  if (candidate != nullptr) {
    Witness w;
    w.ordering = candidate->ordering;
    w.alpha = candidate->alpha +
              cfg.witness_perturbation * OrderingRepresentative(w.ordering);
    w.alpha.array() -= w.alpha.mean();
    w.surrogate_value = objective.Value(w.alpha);
    w.surrogate_gap = w.surrogate_value - sm.lower_bound;
    w.target_risk = ConditionalRisk(w.alpha, law, target);
    w.target_gap = w.target_risk - report.bayes.min_risk;
    report.witness = std::move(w);
  }

  if (!sm.certified) {
    report.verdict = Verdict::kInconclusive;
    report.note = "solver did not certify every ordering cone";
  } else if (report.witness.has_value() &&
             report.witness->surrogate_gap <= cfg.tolerance &&
             report.witness->target_gap >= cfg.epsilon) {
    report.verdict = Verdict::kInconsistentWitness;
  } else {
    report.verdict = Verdict::kConsistentOnInstance;
    report.note = report.witness.has_value()
                      ? "every target-suboptimal ordering costs surrogate risk"
                      : "no ordering is epsilon-suboptimal";
  }
  return report;
}

nlohmann::json LawToJson(const LimitLaw& law) {
  json j;
  j["m"] = law.m();
  j["probabilities"] = law.probabilities();
  j["support"] = json::array();
  for (const Structure& s : law.support()) {
    if (const auto* y = std::get_if<AdjacencyPreference>(&s)) {
      j["support"].push_back({{"adjacency", MatrixJson(y->weights())}});
    } else if (const auto* sc = std::get_if<ScoreStructure>(&s)) {
      j["support"].push_back({{"scores", VectorJson(sc->scores)}});
    } else {
      const auto& c = std::get<ComparisonPreference>(s);
      j["support"].push_back({{"comparison", {c.winner, c.loser}}});
    }
  }
  return j;
}

nlohmann::json InconsistencyReport::ToJson() const {
  json j;
  j["schema_version"] = 1;
  j["instance"] = instance;
  j["surrogate"] = surrogate;
  j["target"] = target;
  j["verdicts"] = {{"verdict", VerdictName(verdict)}, {"note", note}};
  j["bayes"] = {{"min_risk", bayes.min_risk},
                {"orderings", bayes.optimal_orderings}};
  j["surrogate_min_orderings"] = surrogate_min_orderings;
  j["certificates"] = {
      {"method", certificate},
      {"surrogate_min", surrogate_min},
      {"surrogate_lower_bound", surrogate_lower_bound},
      {"bayes_cone_surrogate_min", bayes_cone_surrogate_min},
      {"diverges", diverges},
      {"epsilon", epsilon},
      {"tolerance", tolerance}};
  if (witness.has_value()) {
    j["witnesses"] = json::array(
        {{{"ordering", witness->ordering},
          {"alpha", VectorJson(witness->alpha)},
          {"surrogate_value", witness->surrogate_value},
          {"surrogate_gap", witness->surrogate_gap},
          {"target_risk", witness->target_risk},
          {"target_gap", witness->target_gap}}});
  } else {
    j["witnesses"] = json::array();
  }
  return j;
}

CounterexampleResult ConstructLowNoiseCounterexample(
    const PairSurrogateSpec& spec, const SearchConfig& cfg,
    std::uint64_t seed) {
  if (spec.kind == PairSurrogateKind::kDifference) {
    throw Error("the difference surrogate is not a search input");
  }
  constexpr int kItems = 3;
  const TargetLossPtr target = MakePairwiseEdgeLoss();
  Rng rng = MakeRng(seed);
  auto random_dag = [&]() {
    std::vector<int> order(kItems);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Matrix y = Matrix::Zero(kItems, kItems);
    while (y.sum() == 0.0) {
      for (int a = 0; a < kItems; ++a) {
        for (int b = a + 1; b < kItems; ++b) {
          if (Uniform01(rng) < 0.5) {
            y(order[a], order[b]) = std::pow(10.0, 4.0 * Uniform01(rng) - 2.0);
          }
        }
      }
    }
    return AdjacencyPreference(y);
  };

  int low_noise = 0;
  for (int candidate = 1; candidate <= cfg.max_candidates; ++candidate) {
    LimitLaw law({random_dag(), random_dag()}, {0.5, 0.5});
    const DifferenceGraph g = DifferenceGraphOf(MeanAdjacency(law));
    if (!IsLowNoise(g).low_noise || g.diff().sum() == 0.0) continue;
    ++low_noise;
    InconsistencyReport report =
        MakeInconsistencyReport(law, spec, *target, cfg.report);
    if (report.verdict == Verdict::kInconsistentWitness) {
      return {std::move(law), std::move(report), candidate, low_noise};
    }
  }
  throw Error(ErrorCode::kAlgorithmFailure,
              "no witness found in " + std::to_string(cfg.max_candidates) +
                  " candidates (" + std::to_string(low_noise) +
                  " low-noise)");
}

}  // namespace rankagg
