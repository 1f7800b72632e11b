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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "rankagg/ordering.h"
#include "rankagg/sampling.h"
#include "rankagg/types.h"

namespace rankagg {
namespace {

Vector V(std::initializer_list<double> xs) {
  Vector v(xs.size());
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

TEST(RankPermutationTest, DescendingSort) {
  EXPECT_EQ(RankPermutation(V({3.0, 1.0, 2.0})), (std::vector<int>{1, 3, 2}));
}

TEST(RankPermutationTest, Singleton) {
  EXPECT_EQ(RankPermutation(V({5.0})), (std::vector<int>{1}));
}

TEST(RankPermutationTest, TieGoesToLowerIndex) {
  EXPECT_EQ(RankPermutation(V({1.0, 1.0})), (std::vector<int>{1, 2}));
  EXPECT_EQ(RankPermutation(V({0.0, 2.0, 2.0, 0.0})),
            (std::vector<int>{3, 1, 2, 4}));
}

TEST(RankPermutationTest, EmptyThrows) {
  try {
    RankPermutation(Vector());
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "empty scores");
  }
}

TEST(RankPermutationTest, BijectionAndInvariances) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coarse(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 9;
    Vector a(m);
    for (int i = 0; i < m; ++i) a[i] = coarse(rng);  // plenty of ties
    const std::vector<int> ranks = RankPermutation(a);
    std::set<int> seen(ranks.begin(), ranks.end());
    ASSERT_EQ(static_cast<int>(seen.size()), m);
    EXPECT_EQ(*seen.begin(), 1);
    EXPECT_EQ(*seen.rbegin(), m);
    EXPECT_EQ(RankPermutation((a.array() + 7.25).matrix()), ranks);
    EXPECT_EQ(RankPermutation(a * 3.5), ranks);

    const std::vector<int> items = RankedItems(a);
    for (int r = 0; r < m; ++r) EXPECT_EQ(ranks[items[r]], r + 1);
  }
}

TEST(SameOrderingTest, Examples) {
  EXPECT_TRUE(SameOrdering(V({1, 2, 3}), V({10, 20, 30})));
  EXPECT_FALSE(SameOrdering(V({1, 2, 3}), V({3, 2, 1})));
  EXPECT_FALSE(SameOrdering(V({1, 1, 2}), V({0, 1, 2})));
  EXPECT_TRUE(SameOrdering(V({1, 1, 2}), V({5, 5, 9})));
  EXPECT_THROW(SameOrdering(V({1, 2}), V({1, 2, 3})), Error);
}

TEST(OrderingTest, RepresentativeAndEnumeration) {
  const Vector rep = OrderingRepresentative({2, 0, 1});
  EXPECT_EQ(RankedItems(rep), (std::vector<int>{2, 0, 1}));
  EXPECT_DOUBLE_EQ(rep[2], 3.0);
  EXPECT_DOUBLE_EQ(rep[1], 1.0);

  const auto all = AllOrderings(4);
  EXPECT_EQ(all.size(), 24u);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(std::set<std::vector<int>>(all.begin(), all.end()).size(), 24u);
}

TEST(TypesTest, AdjacencyInvariants) {
  Matrix y = Matrix::Zero(2, 2);
  y(0, 1) = 1.0;
  EXPECT_NO_THROW(AdjacencyPreference{y});
  Matrix neg = y;
  neg(1, 0) = -0.5;
  EXPECT_THROW(AdjacencyPreference{neg}, Error);
  Matrix diag = y;
  diag(0, 0) = 1.0;
  EXPECT_THROW(AdjacencyPreference{diag}, Error);
  EXPECT_THROW(AdjacencyPreference{Matrix(2, 3)}, Error);
}

TEST(TypesTest, ComparisonAndClickValidation) {
  EXPECT_THROW((ComparisonPreference{1, 1}.Validate(3)), Error);
  EXPECT_THROW((ComparisonPreference{0, 3}.Validate(3)), Error);
  EXPECT_NO_THROW((ComparisonPreference{2, 0}.Validate(3)));

  ClickRecord ok{{2, 0, 1}, 4};
  EXPECT_NO_THROW(ok.Validate(3));
  EXPECT_FALSE(ok.has_click());
  EXPECT_THROW((ClickRecord{{0, 0}, 1}.Validate(3)), Error);
  EXPECT_THROW((ClickRecord{{0, 1}, 4}.Validate(3)), Error);
  EXPECT_THROW((ClickRecord{{0, 1}, 0}.Validate(3)), Error);
}

TEST(TypesTest, SkewSymmetricRejectsAsymmetry) {
  Matrix a(2, 2);
  a << 0, 1, -1, 0;
  EXPECT_NO_THROW(SkewSymmetricAggregate::FullyObserved(a));
  Matrix off = a;
  off(1, 0) = -1.0 + 1e-9;
  EXPECT_THROW(SkewSymmetricAggregate::FullyObserved(off), Error);
  Matrix tiny = a;
  tiny(1, 0) = -1.0 + 1e-13;
  EXPECT_NO_THROW(SkewSymmetricAggregate::FullyObserved(tiny));

  Matrix mask = Matrix::Identity(2, 2);
  EXPECT_THROW(SkewSymmetricAggregate(a, mask), Error);  // unobserved nonzero
  EXPECT_NO_THROW(SkewSymmetricAggregate(Matrix::Zero(2, 2), mask));
}

TEST(TypesTest, DifferenceGraphInvariants) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 1) = 2.0;
  EXPECT_NO_THROW(DifferenceGraph{d});
  d(1, 0) = 1.0;
  EXPECT_THROW(DifferenceGraph{d}, Error);
}

TEST(TypesTest, LimitLawInvariants) {
  const AdjacencyPreference a = AdjacencyPreference::Zero(2);
  EXPECT_NO_THROW(LimitLaw({a, a}, {0.25, 0.75}));
  EXPECT_THROW(LimitLaw({a, a}, {0.25, 0.7}), Error);
  EXPECT_THROW(LimitLaw({a, a}, {1.5, -0.5}), Error);
  EXPECT_THROW(LimitLaw({}, {}), Error);
  EXPECT_THROW(LimitLaw({a, AdjacencyPreference::Zero(3)}, {0.5, 0.5}), Error);
  EXPECT_EQ(LimitLaw::PointMass(a).m(), 2);
}

TEST(TypesTest, DatasetValidation) {
  QueryDataset data;
  Query q;
  q.query_id = "a";
  q.features = Matrix::Zero(3, 2);
  q.judgments.push_back(ComparisonPreference{0, 2});
  data.queries.push_back(q);
  EXPECT_NO_THROW(data.Validate());
  EXPECT_EQ(data.dim(), 2);
  EXPECT_EQ(data.total_judgments(), 1u);

  QueryDataset bad = data;
  bad.queries[0].judgments.push_back(ComparisonPreference{0, 3});
  EXPECT_THROW(bad.Validate(), Error);

  QueryDataset dims = data;
  Query r = q;
  r.query_id = "b";
  r.features = Matrix::Zero(3, 4);
  dims.queries.push_back(r);
  EXPECT_THROW(dims.Validate(), Error);
}

TEST(LinearScorerTest, ScoresAreInnerProducts) {
  Matrix x(2, 3);
  x << 1, 2, 3, -1, 0, 1;
  const LinearScorer f(V({1.0, 0.5, -1.0}));
  const Vector s = f.Score(x);
  EXPECT_DOUBLE_EQ(s[0], 1 + 1 - 3);
  EXPECT_DOUBLE_EQ(s[1], -1 + 0 - 1);
}

TEST(SamplingTest, StreamsAreDeterministicAndDistinct) {
  Rng a = MakeRng(5, 0);
  Rng b = MakeRng(5, 0);
  Rng c = MakeRng(5, 1);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
}

TEST(SamplingTest, SubsetSamplerIsUniformOverPairs) {
  // C(4, 2) = 6 subsets, 60000 draws: each count ~ Binomial(60000, 1/6).
  SubsetSampler sampler(4);
  Rng rng = MakeRng(3);
  std::map<std::vector<int>, int> counts;
  const int draws = 60000;
  for (int t = 0; t < draws; ++t) {
    std::vector<int> s = sampler.Draw(2, rng);
    std::sort(s.begin(), s.end());
    ++counts[s];
  }
  ASSERT_EQ(counts.size(), 6u);
  const double p = 1.0 / 6.0;
  const double sd = std::sqrt(draws * p * (1 - p));
  for (const auto& [s, n] : counts) {
    EXPECT_LT(std::abs(n - draws * p), 4.0 * sd);
  }
}

}  // namespace
}  // namespace rankagg
