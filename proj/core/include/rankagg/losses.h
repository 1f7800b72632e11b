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

// Target ranking losses (pairwise edge, NDCG family, ERR family) and convex
// surrogates with their (sub)gradients in the score vector.
//
// Target losses consume raw scores: the pairwise loss keeps its strict/weak
// inequality asymmetry, and NDCG/ERR break ties by item index through
// RankPermutation. Logarithms are natural throughout.

#ifndef RANKAGG_LOSSES_H_
#define RANKAGG_LOSSES_H_

#include <functional>
#include <string>
#include <vector>

#include "rankagg/types.h"

namespace rankagg {

// Monotone gain G applied to structure scores.
class GainFunction {
 public:
  enum class Kind {
    kExp2Minus1,  // 2^s - 1
    kExp2,        // 2^s, strictly positive for centered scores
    kIdentity,    // s
    kClamped01,   // min(1, max(0, s))
    kErrGrade,    // min(1, max(0, (2^s - 1) / 2^max_grade))
    kTable,       // table[clamp(round(s), 0, size - 1)]
  };

  static GainFunction Exp2Minus1() { return GainFunction(Kind::kExp2Minus1); }
  static GainFunction Exp2() { return GainFunction(Kind::kExp2); }
  static GainFunction Identity() { return GainFunction(Kind::kIdentity); }
  static GainFunction Clamped01() { return GainFunction(Kind::kClamped01); }
  static GainFunction ErrGrade(double max_grade);
  // Throws unless `table` is nonempty and nondecreasing.
  static GainFunction Table(std::vector<double> table);
  static GainFunction FromName(const std::string& name);

  double operator()(double s) const;
  Kind kind() const { return kind_; }
  std::string name() const;

 private:
  explicit GainFunction(Kind kind) : kind_(kind) {}

  Kind kind_;
  double max_grade_ = 0.0;
  std::vector<double> table_;
};

// Increasing rank discount F on 1-based ranks.
class DiscountFunction {
 public:
  enum class Kind {
    kLog1p,         // log(1 + j)
    kIdentity,      // j
    kPrecisionAtK,  // 1 for j <= k, +inf beyond
  };

  static DiscountFunction Log1p() { return DiscountFunction(Kind::kLog1p, 0); }
  static DiscountFunction Identity() {
    return DiscountFunction(Kind::kIdentity, 0);
  }
  static DiscountFunction PrecisionAtK(int k);
  static DiscountFunction FromName(const std::string& name);

  double Value(int rank) const;
  // 1 / F(rank), exactly 0 where F is infinite.
  double Inverse(int rank) const;
  Kind kind() const { return kind_; }
  std::string name() const;

 private:
  DiscountFunction(Kind kind, int k) : kind_(kind), k_(k) {}

  Kind kind_;
  int k_;
};

// Convex nonincreasing margin function phi with its derivatives.
class ConvexPhi {
 public:
  enum class Kind {
    kHinge,        // [1 - t]_+
    kLogistic,     // log(1 + e^{-t})
    kExponential,  // e^{-t}
    kSquaredHinge  // [1 - t]_+^2
  };

  explicit ConvexPhi(Kind kind) : kind_(kind) {}
  static ConvexPhi FromName(const std::string& name);

  double Value(double t) const;
  // A subgradient; for the hinge, -1 left of the kink and 0 from it on.
  double Derivative(double t) const;
  // Zero for the hinge.
  double SecondDerivative(double t) const;

  bool smooth() const { return kind_ != Kind::kHinge; }
  // Hinge kink location (t = 1); meaningless for smooth kinds.
  double kink() const { return 1.0; }
  Kind kind() const { return kind_; }
  std::string name() const;

 private:
  Kind kind_;
};

// Numerically stable log(1 + e^x).
double Softplus(double x);

// sum_{i<j} Y_ij 1(alpha_i <= alpha_j) + sum_{i>j} Y_ij 1(alpha_i < alpha_j).
double PairwiseEdgeLoss(const Vector& alpha, const AdjacencyPreference& y);

// max over orderings of sum_j G(s_j) / F(rank_j), via the rearrangement of
// gains sorted in descending order against 1/F(1), 1/F(2), ...
double NdcgNormalizer(const Vector& s, const GainFunction& gain,
                      const DiscountFunction& discount);

// 1 - DCG(alpha) / Z(s); 0 when every gain is zero. Gains must be >= 0.
double NdcgLoss(const Vector& alpha, const ScoreStructure& s,
                const GainFunction& gain, const DiscountFunction& discount);

// 1 - sum_r (1/F(r)) g_(r) prod_{q<r} (1 - g_(q)) with g = G(s) in [0, 1].
double ErrLoss(const Vector& alpha, const ScoreStructure& s,
               const GainFunction& gain, const DiscountFunction& discount);

struct LossAndGradient {
  double value = 0.0;
  Vector gradient;
};

using PenaltyMap = std::function<double(double)>;

// sum_{i != j} h(Y_ij) phi(alpha_i - alpha_j). Requires h(0) == 0.
LossAndGradient PairwisePhiSurrogate(const Vector& alpha,
                                     const AdjacencyPreference& y,
                                     const PenaltyMap& h, const ConvexPhi& phi);

// sum_{Y_ij > 0} phi(alpha_i - alpha_j - h(Y_ij)).
LossAndGradient MarginSurrogate(const Vector& alpha,
                                const AdjacencyPreference& y,
                                const PenaltyMap& h, const ConvexPhi& phi);

// sum_{i,j} [s_ij - s_ji]_+ phi(alpha_i - alpha_j) on an aggregated matrix.
LossAndGradient DifferenceSurrogate(const Vector& alpha,
                                    const AdjacencyPreference& s,
                                    const ConvexPhi& phi);

// (1 / 2m) sum_j (alpha_j - G(s_j) / Z(s))^2. Throws "degenerate gains" when
// Z(s) <= 0.
LossAndGradient NdcgRegressionSurrogate(const Vector& alpha,
                                        const ScoreStructure& s,
                                        const GainFunction& gain,
                                        const DiscountFunction& discount);

// log(1 + exp(alpha_loser - alpha_winner)).
LossAndGradient BtlLogisticSurrogate(const Vector& alpha,
                                     const ComparisonPreference& comparison);

// sum_j (G(s_j) / Z(s)) sum_l phi(alpha_j - alpha_l); 0 when Z(s) == 0.
LossAndGradient ZhangNdcgSurrogate(const Vector& alpha,
                                   const ScoreStructure& s,
                                   const GainFunction& gain,
                                   const DiscountFunction& discount,
                                   const ConvexPhi& phi);

}  // namespace rankagg

#endif  // RANKAGG_LOSSES_H_
