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

#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "rankagg/consistency.h"
#include "rankagg/ordering.h"
#include "rankagg/sampling.h"
#include "test_util.h"

namespace rankagg {
namespace {

Vector V(std::initializer_list<double> xs) {
  Vector v(xs.size());
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

AdjacencyPreference Edges(int m,
                          std::initializer_list<std::tuple<int, int, double>> es) {
  Matrix y = Matrix::Zero(m, m);
  for (auto [i, j, w] : es) y(i, j) = w;
  return AdjacencyPreference(y);
}

PairSurrogateSpec Spec(PairSurrogateKind kind, ConvexPhi::Kind phi) {
  PairSurrogateSpec s;
  s.kind = kind;
  s.phi = ConvexPhi(phi);
  return s;
}

TEST(DifferenceGraphTest, PositivePartOfDifferences) {
  const auto y = Edges(3, {{0, 1, 3.0}, {1, 0, 1.0}, {2, 1, 0.5}});
  const DifferenceGraph g = DifferenceGraphOf(y);
  EXPECT_EQ(g.weight(0, 1), 2.0);
  EXPECT_EQ(g.weight(1, 0), 0.0);
  EXPECT_EQ(g.weight(2, 1), 0.5);
  EXPECT_EQ(g.weight(1, 2), 0.0);
}

TEST(DifferenceGraphTest, MeanAdjacency) {
  const LimitLaw law({Edges(2, {{0, 1, 1.0}}), Edges(2, {{1, 0, 2.0}})},
                     {0.75, 0.25});
  const AdjacencyPreference mean = MeanAdjacency(law);
  EXPECT_DOUBLE_EQ(mean(0, 1), 0.75);
  EXPECT_DOUBLE_EQ(mean(1, 0), 0.5);
  EXPECT_THROW(MeanAdjacency(LimitLaw::PointMass(ScoreStructure(V({1, 0})))),
               Error);
}

TEST(LowNoiseTest, Examples) {
  const auto chain = [](double w02) {
    return DifferenceGraphOf(Edges(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, w02}}));
  };
  EXPECT_TRUE(IsLowNoise(chain(2.0)).low_noise);
  EXPECT_TRUE(IsLowNoise(chain(3.0)).low_noise);
  const LowNoiseResult bad = IsLowNoise(chain(1.5));
  EXPECT_FALSE(bad.low_noise);
  ASSERT_TRUE(bad.violation.has_value());
  EXPECT_EQ(*bad.violation, (std::array<int, 3>{0, 1, 2}));
  // A path without the shortcut edge: w(0->2) = 0 < 2.
  EXPECT_FALSE(
      IsLowNoise(DifferenceGraphOf(Edges(3, {{0, 1, 1.0}, {1, 2, 1.0}})))
          .low_noise);
  EXPECT_TRUE(IsLowNoise(DifferenceGraphOf(Edges(3, {{0, 1, 1.0}}))).low_noise);
}

TEST(CycleTest, Examples) {
  EXPECT_TRUE(HasDirectedCycle(
      DifferenceGraphOf(Edges(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}}))));
  EXPECT_FALSE(HasDirectedCycle(
      DifferenceGraphOf(Edges(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}))));
  EXPECT_FALSE(HasDirectedCycle(DifferenceGraphOf(AdjacencyPreference::Zero(4))));
}

LimitLaw TwoDag() {
  return LimitLaw({Edges(3, {{0, 1, 1.0}, {1, 2, 0.5}}),
                   Edges(3, {{2, 0, 2.0}, {1, 0, 0.25}})},
                  {0.6, 0.4});
}

double Logistic(double x) { return std::log1p(std::exp(-x)); }

TEST(ConditionalObjectiveTest, PairwiseMatchesHandSum) {
  const LimitLaw law = TwoDag();
  const ConditionalObjective obj = BuildConditionalObjective(
      law, Spec(PairSurrogateKind::kPairwisePhi, ConvexPhi::Kind::kLogistic));
  const AdjacencyPreference mean = MeanAdjacency(law);
  const Vector a = V({0.3, -0.4, 1.1});
  double want = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      want += mean(i, j) * Logistic(a[i] - a[j]);
    }
  }
  EXPECT_NEAR(obj.Value(a), want, 1e-14);
}

TEST(ConditionalObjectiveTest, AgreesWithSurrogateConditionalRisk) {
  const LimitLaw law = TwoDag();
  Rng rng = MakeRng(2);
  std::normal_distribution<double> z(0.0, 1.0);
  for (auto kind : {PairSurrogateKind::kPairwisePhi, PairSurrogateKind::kMargin}) {
    for (auto phi : {ConvexPhi::Kind::kHinge, ConvexPhi::Kind::kLogistic,
                     ConvexPhi::Kind::kExponential}) {
      const PairSurrogateSpec spec = Spec(kind, phi);
      const ConditionalObjective obj = BuildConditionalObjective(law, spec);
      const SurrogatePtr psi = spec.MakeSurrogate();
      for (int t = 0; t < 10; ++t) {
        Vector a(3);
        for (int i = 0; i < 3; ++i) a[i] = z(rng);
        EXPECT_NEAR(obj.Value(a), ConditionalRisk(a, law, *psi).value, 1e-12)
            << spec.name();
      }
    }
  }
  // The difference objective is evaluated at the mean adjacency.
  const PairSurrogateSpec diff =
      Spec(PairSurrogateKind::kDifference, ConvexPhi::Kind::kLogistic);
  const ConditionalObjective obj = BuildConditionalObjective(law, diff);
  const Vector a = V({0.2, 0.0, -0.5});
  EXPECT_NEAR(obj.Value(a),
              diff.MakeSurrogate()->Value(a, MeanAdjacency(law)), 1e-12);
}

TEST(MinimizerTest, SingleEdgeHinge) {
  const LimitLaw law = LimitLaw::PointMass(Edges(2, {{0, 1, 1.0}}));
  const SurrogateMinimum r = MinimizeConvexConditionalSurrogate(
      law, Spec(PairSurrogateKind::kPairwisePhi, ConvexPhi::Kind::kHinge));
  EXPECT_TRUE(r.certified);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  EXPECT_GE(r.alpha[0] - r.alpha[1], 1.0 - 1e-12);
  EXPECT_EQ(r.certificate, "exact vertex enumeration");
}

TEST(MinimizerTest, SingleEdgeLogisticDiverges) {
  const LimitLaw law = LimitLaw::PointMass(Edges(2, {{0, 1, 1.0}}));
  const SurrogateMinimum r = MinimizeConvexConditionalSurrogate(
      law, Spec(PairSurrogateKind::kPairwisePhi, ConvexPhi::Kind::kLogistic));
  EXPECT_TRUE(r.diverges);
  EXPECT_LT(r.value, 1e-10);
  EXPECT_GE(r.lower_bound, -1e-15);
}

TEST(MinimizerTest, BalancedLogisticHasFiniteMinimizer) {
  // 2 phi(x) + phi(-x) is minimized at x = log 2 with value 3 log 3 - 2 log 2.
  const LimitLaw law = LimitLaw::PointMass(Edges(2, {{0, 1, 2.0}, {1, 0, 1.0}}));
  const SurrogateMinimum r = MinimizeConvexConditionalSurrogate(
      law, Spec(PairSurrogateKind::kPairwisePhi, ConvexPhi::Kind::kLogistic));
  EXPECT_FALSE(r.diverges);
  EXPECT_NEAR(r.alpha[0] - r.alpha[1], std::log(2.0), 1e-8);
  EXPECT_NEAR(r.value, 3 * std::log(3.0) - 2 * std::log(2.0), 1e-12);
  EXPECT_EQ(r.cones.size(), 2u);
}

TEST(MinimizerTest, BeatsRandomPoints) {
  const LimitLaw law = TwoDag();
  Rng rng = MakeRng(3);
  std::normal_distribution<double> z(0.0, 2.0);
  for (auto phi : {ConvexPhi::Kind::kHinge, ConvexPhi::Kind::kLogistic,
                   ConvexPhi::Kind::kSquaredHinge}) {
    const PairSurrogateSpec spec = Spec(PairSurrogateKind::kPairwisePhi, phi);
    const SurrogateMinimum r = MinimizeConvexConditionalSurrogate(law, spec);
    ASSERT_TRUE(r.certified) << spec.name();
    EXPECT_LE(r.lower_bound, r.value);
    const ConditionalObjective obj = BuildConditionalObjective(law, spec);
    EXPECT_NEAR(obj.Value(r.alpha), r.value, 1e-9);
    for (int t = 0; t < 500; ++t) {
      Vector a(3);
      for (int i = 0; i < 3; ++i) a[i] = z(rng);
      EXPECT_GE(obj.Value(a), r.lower_bound - 1e-9) << spec.name();
    }
  }
}

TEST(MinimizerTest, Caps) {
  const LimitLaw big = LimitLaw::PointMass(AdjacencyPreference::Zero(6));
  EXPECT_THROW(MinimizeConvexConditionalSurrogate(
                   big, Spec(PairSurrogateKind::kPairwisePhi,
                             ConvexPhi::Kind::kHinge)),
               Error);
  const LimitLaw huge = LimitLaw::PointMass(AdjacencyPreference::Zero(8));
  EXPECT_THROW(MinimizeConvexConditionalSurrogate(
                   huge, Spec(PairSurrogateKind::kPairwisePhi,
                              ConvexPhi::Kind::kLogistic)),
               Error);
}

TEST(ReportTest, DifferenceSurrogateIsConsistentOnLowNoiseLaw) {
  const LimitLaw law = TwoDag();
  const auto target = MakePairwiseEdgeLoss();
  const InconsistencyReport r = MakeInconsistencyReport(
      law, Spec(PairSurrogateKind::kDifference, ConvexPhi::Kind::kLogistic),
      *target);
  EXPECT_EQ(r.verdict, Verdict::kConsistentOnInstance);
  ASSERT_FALSE(r.surrogate_min_orderings.empty());
  for (const auto& o : r.surrogate_min_orderings) {
    EXPECT_NEAR(ConditionalRisk(OrderingRepresentative(o), law, *target),
                r.bayes.min_risk, 1e-12);
  }
  const nlohmann::json j = r.ToJson();
  for (const char* key : {"schema_version", "instance", "surrogate", "target",
                          "verdicts", "bayes", "surrogate_min_orderings",
                          "certificates", "witnesses"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["verdicts"]["verdict"], "CONSISTENT ON INSTANCE");
}

TEST(ReportTest, RejectsBadEpsilon) {
  ReportConfig cfg;
  cfg.epsilon = 0.0;
  EXPECT_THROW(MakeInconsistencyReport(
                   TwoDag(), Spec(PairSurrogateKind::kPairwisePhi,
                                  ConvexPhi::Kind::kHinge),
                   *MakePairwiseEdgeLoss(), cfg),
               Error);
}

void CheckWitness(const CounterexampleResult& r) {
  const auto target = MakePairwiseEdgeLoss();
  // The instance is a low-noise two-DAG mixture.
  EXPECT_TRUE(IsLowNoise(DifferenceGraphOf(MeanAdjacency(r.law))).low_noise);
  EXPECT_EQ(r.law.support().size(), 2u);
  ASSERT_EQ(r.report.verdict, Verdict::kInconsistentWitness);
  ASSERT_TRUE(r.report.witness.has_value());
  const Witness& w = *r.report.witness;
  EXPECT_GE(w.target_gap, 0.05);
  EXPECT_LE(w.surrogate_gap, 1e-6);
  // Recompute the target gap by brute force.
  double best = 1e300;
  for (const auto& o : testing::Permutations(3)) {
    best = std::min(best,
                    ConditionalRisk(OrderingRepresentative(o), r.law, *target));
  }
  EXPECT_NEAR(ConditionalRisk(w.alpha, r.law, *target) - best, w.target_gap,
              1e-12);
}

TEST(CounterexampleTest, HingeAndLogisticWitnesses) {
  SearchConfig cfg;
  for (auto phi : {ConvexPhi::Kind::kHinge, ConvexPhi::Kind::kLogistic}) {
    const CounterexampleResult r = ConstructLowNoiseCounterexample(
        Spec(PairSurrogateKind::kPairwisePhi, phi), cfg, 1);
    CheckWitness(r);
    EXPECT_GE(r.candidates_tried, r.low_noise_candidates);
    // Deterministic in the seed.
    const CounterexampleResult again = ConstructLowNoiseCounterexample(
        Spec(PairSurrogateKind::kPairwisePhi, phi), cfg, 1);
    EXPECT_EQ(LawToJson(r.law), LawToJson(again.law));
  }
}

TEST(CounterexampleTest, RejectsDifferenceAndExhausts) {
  SearchConfig cfg;
  EXPECT_THROW(ConstructLowNoiseCounterexample(
                   Spec(PairSurrogateKind::kDifference, ConvexPhi::Kind::kHinge),
                   cfg, 0),
               Error);
  cfg.max_candidates = 1;
  try {
    ConstructLowNoiseCounterexample(
        Spec(PairSurrogateKind::kPairwisePhi, ConvexPhi::Kind::kHinge), cfg, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAlgorithmFailure);
  }
}

}  // namespace
}  // namespace rankagg
