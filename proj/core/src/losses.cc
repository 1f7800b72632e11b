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

#include "rankagg/losses.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "rankagg/ordering.h"

namespace rankagg {
namespace {

void CheckSize(const Vector& alpha, int m, const char* what) {
  if (alpha.size() != m) {
    throw Error(std::string(what) + ": dimension mismatch (scores " +
                std::to_string(alpha.size()) + ", items " + std::to_string(m) +
                ")");
  }
}

Vector Gains(const Vector& s, const GainFunction& gain) {
  Vector g(s.size());
  for (Eigen::Index j = 0; j < s.size(); ++j) g[j] = gain(s[j]);
  return g;
}

double NormalizerFromGains(Vector gains, const DiscountFunction& discount) {
  std::sort(gains.begin(), gains.end(), std::greater<>());
  double z = 0.0;
  for (Eigen::Index r = 0; r < gains.size(); ++r) {
    z += gains[r] * discount.Inverse(static_cast<int>(r) + 1);
  }
  return z;
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

GainFunction GainFunction::ErrGrade(double max_grade) {
  GainFunction g(Kind::kErrGrade);
  g.max_grade_ = max_grade;
  return g;
}

GainFunction GainFunction::Table(std::vector<double> table) {
  if (table.empty()) throw Error("GainFunction: empty table");
  if (!std::is_sorted(table.begin(), table.end())) {
    throw Error("GainFunction: table must be nondecreasing");
  }
  GainFunction g(Kind::kTable);
  g.table_ = std::move(table);
  return g;
}

GainFunction GainFunction::FromName(const std::string& name) {
  if (name == "exp2minus1") return Exp2Minus1();
  if (name == "exp2") return Exp2();
  if (name == "identity") return Identity();
  if (name == "clamped01") return Clamped01();
  throw Error("unknown gain function '" + name +
              "' (valid: exp2minus1, exp2, identity, clamped01)");
}

double GainFunction::operator()(double s) const {
  switch (kind_) {
    case Kind::kExp2Minus1:
      return std::exp2(s) - 1.0;
    case Kind::kExp2:
      return std::exp2(s);
    case Kind::kIdentity:
      return s;
    case Kind::kClamped01:
      return std::clamp(s, 0.0, 1.0);
    case Kind::kErrGrade:
      return std::clamp((std::exp2(s) - 1.0) / std::exp2(max_grade_), 0.0,
                        1.0);
    case Kind::kTable: {
      const double idx = std::clamp(std::round(s), 0.0,
                                    static_cast<double>(table_.size() - 1));
      return table_[static_cast<std::size_t>(idx)];
    }
  }
  return 0.0;
}

std::string GainFunction::name() const {
  switch (kind_) {
    case Kind::kExp2Minus1:
      return "exp2minus1";
    case Kind::kExp2:
      return "exp2";
    case Kind::kIdentity:
      return "identity";
    case Kind::kClamped01:
      return "clamped01";
    case Kind::kErrGrade:
      return "err_grade";
    case Kind::kTable:
      return "table";
  }
  return "";
}

DiscountFunction DiscountFunction::PrecisionAtK(int k) {
  if (k < 1) throw Error("DiscountFunction: precision cutoff must be >= 1");
  return DiscountFunction(Kind::kPrecisionAtK, k);
}

DiscountFunction DiscountFunction::FromName(const std::string& name) {
  if (name == "log1p") return Log1p();
  if (name == "identity") return Identity();
  throw Error("unknown discount '" + name + "' (valid: log1p, identity)");
}

double DiscountFunction::Value(int rank) const {
  switch (kind_) {
    case Kind::kLog1p:
      return std::log1p(static_cast<double>(rank));
    case Kind::kIdentity:
      return rank;
    case Kind::kPrecisionAtK:
      return rank <= k_ ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

double DiscountFunction::Inverse(int rank) const {
  if (kind_ == Kind::kPrecisionAtK) return rank <= k_ ? 1.0 : 0.0;
  return 1.0 / Value(rank);
}

std::string DiscountFunction::name() const {
  switch (kind_) {
    case Kind::kLog1p:
      return "log1p";
    case Kind::kIdentity:
      return "identity";
    case Kind::kPrecisionAtK:
      return "precision_at_" + std::to_string(k_);
  }
  return "";
}

ConvexPhi ConvexPhi::FromName(const std::string& name) {
  if (name == "hinge") return ConvexPhi(Kind::kHinge);
  if (name == "logistic") return ConvexPhi(Kind::kLogistic);
  if (name == "exponential") return ConvexPhi(Kind::kExponential);
  if (name == "squared_hinge") return ConvexPhi(Kind::kSquaredHinge);
  throw Error("unknown phi '" + name +
              "' (valid: hinge, logistic, exponential, squared_hinge)");
}

double ConvexPhi::Value(double t) const {
  switch (kind_) {
    case Kind::kHinge:
      return std::max(0.0, 1.0 - t);
    case Kind::kLogistic:
      return Softplus(-t);
    case Kind::kExponential:
      return std::exp(-t);
    case Kind::kSquaredHinge: {
      const double r = std::max(0.0, 1.0 - t);
      return r * r;
    }
  }
  return 0.0;
}

double ConvexPhi::Derivative(double t) const {
  switch (kind_) {
    case Kind::kHinge:
      return t < 1.0 ? -1.0 : 0.0;
    case Kind::kLogistic:
      return -Sigmoid(-t);
    case Kind::kExponential:
      return -std::exp(-t);
    case Kind::kSquaredHinge:
      return -2.0 * std::max(0.0, 1.0 - t);
  }
  return 0.0;
}

double ConvexPhi::SecondDerivative(double t) const {
  switch (kind_) {
    case Kind::kHinge:
      return 0.0;
    case Kind::kLogistic:
      return Sigmoid(t) * Sigmoid(-t);
    case Kind::kExponential:
      return std::exp(-t);
    case Kind::kSquaredHinge:
      return t < 1.0 ? 2.0 : 0.0;
  }
  return 0.0;
}

std::string ConvexPhi::name() const {
  switch (kind_) {
    case Kind::kHinge:
      return "hinge";
    case Kind::kLogistic:
      return "logistic";
    case Kind::kExponential:
      return "exponential";
    case Kind::kSquaredHinge:
      return "squared_hinge";
  }
  return "";
}

double Softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double PairwiseEdgeLoss(const Vector& alpha, const AdjacencyPreference& y) {
  const int m = y.m();
  CheckSize(alpha, m, "PairwiseEdgeLoss");
  double loss = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j || y(i, j) == 0.0) continue;
      const bool misordered =
          i < j ? alpha[i] <= alpha[j] : alpha[i] < alpha[j];
      if (misordered) loss += y(i, j);
    }
  }
  return loss;
}

double NdcgNormalizer(const Vector& s, const GainFunction& gain,
                      const DiscountFunction& discount) {
  return NormalizerFromGains(Gains(s, gain), discount);
}

double NdcgLoss(const Vector& alpha, const ScoreStructure& s,
                const GainFunction& gain, const DiscountFunction& discount) {
  const int m = s.m();
  CheckSize(alpha, m, "NdcgLoss");
  const Vector gains = Gains(s.scores, gain);
  if ((gains.array() < 0.0).any()) throw Error("NdcgLoss: negative gain");
  const double z = NormalizerFromGains(gains, discount);
  if (z == 0.0) return 0.0;
  // Summed in rank order, like z, so an ideal ordering gives exactly 0.
  const std::vector<int> order = RankedItems(alpha);
  double dcg = 0.0;
  for (int r = 0; r < m; ++r) dcg += gains[order[r]] * discount.Inverse(r + 1);
  return std::clamp(1.0 - dcg / z, 0.0, 1.0);
}

double ErrLoss(const Vector& alpha, const ScoreStructure& s,
               const GainFunction& gain, const DiscountFunction& discount) {
  const int m = s.m();
  CheckSize(alpha, m, "ErrLoss");
  const std::vector<int> order = RankedItems(alpha);
  double reach = 1.0;  // probability that the user gets to the current rank
  double utility = 0.0;
  for (int r = 0; r < m; ++r) {
    const double g = gain(s.scores[order[r]]);
    if (!(g >= 0.0 && g <= 1.0)) {
      throw Error("ErrLoss: gain outside [0, 1]");
    }
    utility += discount.Inverse(r + 1) * g * reach;
    reach *= 1.0 - g;
  }
  return std::clamp(1.0 - utility, 0.0, 1.0);
}

LossAndGradient PairwisePhiSurrogate(const Vector& alpha,
                                     const AdjacencyPreference& y,
                                     const PenaltyMap& h,
                                     const ConvexPhi& phi) {
  const int m = y.m();
  CheckSize(alpha, m, "PairwisePhiSurrogate");
  if (h(0.0) != 0.0) throw Error("PairwisePhiSurrogate: requires h(0) = 0");
  LossAndGradient out{0.0, Vector::Zero(m)};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j || y(i, j) == 0.0) continue;
      const double w = h(y(i, j));
      const double t = alpha[i] - alpha[j];
      out.value += w * phi.Value(t);
      const double d = w * phi.Derivative(t);
      out.gradient[i] += d;
      out.gradient[j] -= d;
    }
  }
  return out;
}

LossAndGradient MarginSurrogate(const Vector& alpha,
                                const AdjacencyPreference& y,
                                const PenaltyMap& h, const ConvexPhi& phi) {
  const int m = y.m();
  CheckSize(alpha, m, "MarginSurrogate");
  LossAndGradient out{0.0, Vector::Zero(m)};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j || !(y(i, j) > 0.0)) continue;
      const double t = alpha[i] - alpha[j] - h(y(i, j));
      out.value += phi.Value(t);
      const double d = phi.Derivative(t);
      out.gradient[i] += d;
      out.gradient[j] -= d;
    }
  }
  return out;
}

LossAndGradient DifferenceSurrogate(const Vector& alpha,
                                    const AdjacencyPreference& s,
                                    const ConvexPhi& phi) {
  const int m = s.m();
  CheckSize(alpha, m, "DifferenceSurrogate");
  LossAndGradient out{0.0, Vector::Zero(m)};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double w = s(i, j) - s(j, i);
      if (i == j || !(w > 0.0)) continue;
      const double t = alpha[i] - alpha[j];
      out.value += w * phi.Value(t);
      const double d = w * phi.Derivative(t);
      out.gradient[i] += d;
      out.gradient[j] -= d;
    }
  }
  return out;
}

LossAndGradient NdcgRegressionSurrogate(const Vector& alpha,
                                        const ScoreStructure& s,
                                        const GainFunction& gain,
                                        const DiscountFunction& discount) {
  const int m = s.m();
  CheckSize(alpha, m, "NdcgRegressionSurrogate");
  const Vector gains = Gains(s.scores, gain);
  const double z = NormalizerFromGains(gains, discount);
  if (!(z > 0.0)) throw Error("degenerate gains");
  const Vector residual = alpha - gains / z;
  return {residual.squaredNorm() / (2.0 * m), residual / m};
}

LossAndGradient BtlLogisticSurrogate(const Vector& alpha,
                                     const ComparisonPreference& comparison) {
  comparison.Validate(static_cast<int>(alpha.size()));
  const double gap = alpha[comparison.loser] - alpha[comparison.winner];
  LossAndGradient out{Softplus(gap), Vector::Zero(alpha.size())};
  const double p = Sigmoid(gap);
  out.gradient[comparison.loser] = p;
  out.gradient[comparison.winner] = -p;
  return out;
}

LossAndGradient ZhangNdcgSurrogate(const Vector& alpha,
                                   const ScoreStructure& s,
                                   const GainFunction& gain,
                                   const DiscountFunction& discount,
                                   const ConvexPhi& phi) {
  const int m = s.m();
  CheckSize(alpha, m, "ZhangNdcgSurrogate");
  LossAndGradient out{0.0, Vector::Zero(m)};
  const Vector gains = Gains(s.scores, gain);
  const double z = NormalizerFromGains(gains, discount);
  if (z == 0.0) return out;
  for (int j = 0; j < m; ++j) {
    const double w = gains[j] / z;
    if (w == 0.0) continue;
    for (int l = 0; l < m; ++l) {
      const double t = alpha[j] - alpha[l];
      out.value += w * phi.Value(t);
      const double d = w * phi.Derivative(t);
      out.gradient[j] += d;
      out.gradient[l] -= d;
    }
  }
  return out;
}

}  // namespace rankagg
