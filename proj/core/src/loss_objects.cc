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

#include "rankagg/loss_objects.h"

#include <string>
#include <utility>

namespace rankagg {
namespace {

template <typename T>
const T& Expect(const Structure& s, const char* loss_name) {
  const T* value = std::get_if<T>(&s);
  if (value == nullptr) {
    throw Error(std::string(loss_name) + ": unsupported structure type");
  }
  return *value;
}

PenaltyMap IdentityPenalty() {
  return [](double y) { return y; };
}

class PairwiseEdgeTarget final : public TargetLoss {
 public:
  std::string name() const override { return "pairwise_edge"; }
  double Evaluate(const Vector& alpha, const Structure& s) const override {
    return PairwiseEdgeLoss(alpha, Expect<AdjacencyPreference>(s, "pairwise"));
  }
  // A tie costs the same as the strict order placing the higher index first,
  // so strict orderings already cover every attainable value.
  bool ordering_only() const override { return true; }
};

class NdcgTarget final : public TargetLoss {
 public:
  NdcgTarget(GainFunction gain, DiscountFunction discount)
      : gain_(std::move(gain)), discount_(discount) {}
  std::string name() const override { return "ndcg"; }
  double Evaluate(const Vector& alpha, const Structure& s) const override {
    return NdcgLoss(alpha, Expect<ScoreStructure>(s, "ndcg"), gain_,
                    discount_);
  }
  bool ordering_only() const override { return true; }

 private:
  GainFunction gain_;
  DiscountFunction discount_;
};

class ErrTarget final : public TargetLoss {
 public:
  ErrTarget(GainFunction gain, DiscountFunction discount)
      : gain_(std::move(gain)), discount_(discount) {}
  std::string name() const override { return "err"; }
  double Evaluate(const Vector& alpha, const Structure& s) const override {
    return ErrLoss(alpha, Expect<ScoreStructure>(s, "err"), gain_, discount_);
  }
  bool ordering_only() const override { return true; }

 private:
  GainFunction gain_;
  DiscountFunction discount_;
};

class PairwisePhi final : public Surrogate {
 public:
  PairwisePhi(ConvexPhi phi, PenaltyMap h) : phi_(phi), h_(std::move(h)) {}
  std::string name() const override { return "pairwise_" + phi_.name(); }
  LossAndGradient Evaluate(const Vector& alpha,
                           const Structure& s) const override {
    return PairwisePhiSurrogate(
        alpha, Expect<AdjacencyPreference>(s, "pairwise_phi"), h_, phi_);
  }

 private:
  ConvexPhi phi_;
  PenaltyMap h_;
};

class Margin final : public Surrogate {
 public:
  Margin(ConvexPhi phi, PenaltyMap h) : phi_(phi), h_(std::move(h)) {}
  std::string name() const override { return "margin_" + phi_.name(); }
  LossAndGradient Evaluate(const Vector& alpha,
                           const Structure& s) const override {
    return MarginSurrogate(alpha, Expect<AdjacencyPreference>(s, "margin"), h_,
                           phi_);
  }

 private:
  ConvexPhi phi_;
  PenaltyMap h_;
};

class Difference final : public Surrogate {
 public:
  explicit Difference(ConvexPhi phi) : phi_(phi) {}
  std::string name() const override { return "difference_" + phi_.name(); }
  LossAndGradient Evaluate(const Vector& alpha,
                           const Structure& s) const override {
    return DifferenceSurrogate(
        alpha, Expect<AdjacencyPreference>(s, "difference"), phi_);
  }

 private:
  ConvexPhi phi_;
};

class NdcgRegression final : public Surrogate {
 public:
  NdcgRegression(GainFunction gain, DiscountFunction discount)
      : gain_(std::move(gain)), discount_(discount) {}
  std::string name() const override { return "reg"; }
  LossAndGradient Evaluate(const Vector& alpha,
                           const Structure& s) const override {
    return NdcgRegressionSurrogate(
        alpha, Expect<ScoreStructure>(s, "regression"), gain_, discount_);
  }

 private:
  GainFunction gain_;
  DiscountFunction discount_;
};

class BtlLogistic final : public Surrogate {
 public:
  std::string name() const override { return "logistic"; }
  LossAndGradient Evaluate(const Vector& alpha,
                           const Structure& s) const override {
    return BtlLogisticSurrogate(
        alpha, Expect<ComparisonPreference>(s, "logistic"));
  }
};

class ZhangNdcg final : public Surrogate {
 public:
  ZhangNdcg(GainFunction gain, DiscountFunction discount, ConvexPhi phi)
      : gain_(std::move(gain)), discount_(discount), phi_(phi) {}
  std::string name() const override { return "zhang_" + phi_.name(); }
  LossAndGradient Evaluate(const Vector& alpha,
                           const Structure& s) const override {
    return ZhangNdcgSurrogate(alpha, Expect<ScoreStructure>(s, "zhang"), gain_,
                              discount_, phi_);
  }

 private:
  GainFunction gain_;
  DiscountFunction discount_;
  ConvexPhi phi_;
};

}  // namespace

TargetLossPtr MakePairwiseEdgeLoss() {
  return std::make_shared<PairwiseEdgeTarget>();
}

TargetLossPtr MakeNdcgLoss(GainFunction gain, DiscountFunction discount) {
  return std::make_shared<NdcgTarget>(std::move(gain), discount);
}

TargetLossPtr MakeErrLoss(GainFunction gain, DiscountFunction discount) {
  return std::make_shared<ErrTarget>(std::move(gain), discount);
}

SurrogatePtr MakePairwisePhiSurrogate(ConvexPhi phi, PenaltyMap h) {
  return std::make_shared<PairwisePhi>(phi, h ? std::move(h)
                                              : IdentityPenalty());
}

SurrogatePtr MakeMarginSurrogate(ConvexPhi phi, PenaltyMap h) {
  return std::make_shared<Margin>(phi, h ? std::move(h) : IdentityPenalty());
}

SurrogatePtr MakeDifferenceSurrogate(ConvexPhi phi) {
  return std::make_shared<Difference>(phi);
}

SurrogatePtr MakeNdcgRegressionSurrogate(GainFunction gain,
                                         DiscountFunction discount) {
  return std::make_shared<NdcgRegression>(std::move(gain), discount);
}

SurrogatePtr MakeBtlLogisticSurrogate() {
  return std::make_shared<BtlLogistic>();
}

SurrogatePtr MakeZhangNdcgSurrogate(GainFunction gain,
                                    DiscountFunction discount, ConvexPhi phi) {
  return std::make_shared<ZhangNdcg>(std::move(gain), discount, phi);
}

}  // namespace rankagg
