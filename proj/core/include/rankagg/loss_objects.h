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

// Polymorphic wrappers so risks and the optimizer can take any loss over a
// Structure. Instances are immutable and shareable across threads.

#ifndef RANKAGG_LOSS_OBJECTS_H_
#define RANKAGG_LOSS_OBJECTS_H_

#include <memory>
#include <string>

#include "rankagg/losses.h"
#include "rankagg/types.h"

namespace rankagg {

class TargetLoss {
 public:
  virtual ~TargetLoss() = default;
  virtual std::string name() const = 0;
  virtual double Evaluate(const Vector& alpha, const Structure& s) const = 0;
  // True when every value the loss attains is attained on a strict ordering,
  // which licenses brute force over ordering representatives.
  virtual bool ordering_only() const = 0;
};

class Surrogate {
 public:
  virtual ~Surrogate() = default;
  virtual std::string name() const = 0;
  virtual LossAndGradient Evaluate(const Vector& alpha,
                                   const Structure& s) const = 0;

  double Value(const Vector& alpha, const Structure& s) const {
    return Evaluate(alpha, s).value;
  }
};

using TargetLossPtr = std::shared_ptr<const TargetLoss>;
using SurrogatePtr = std::shared_ptr<const Surrogate>;

TargetLossPtr MakePairwiseEdgeLoss();
TargetLossPtr MakeNdcgLoss(GainFunction gain, DiscountFunction discount);
TargetLossPtr MakeErrLoss(GainFunction gain, DiscountFunction discount);

SurrogatePtr MakePairwisePhiSurrogate(ConvexPhi phi, PenaltyMap h = nullptr);
SurrogatePtr MakeMarginSurrogate(ConvexPhi phi, PenaltyMap h = nullptr);
SurrogatePtr MakeDifferenceSurrogate(ConvexPhi phi);
SurrogatePtr MakeNdcgRegressionSurrogate(GainFunction gain,
                                         DiscountFunction discount);
SurrogatePtr MakeBtlLogisticSurrogate();
SurrogatePtr MakeZhangNdcgSurrogate(GainFunction gain,
                                    DiscountFunction discount, ConvexPhi phi);

}  // namespace rankagg

#endif  // RANKAGG_LOSS_OBJECTS_H_
