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

#include "rankagg/types.h"

#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <utility>

namespace rankagg {
namespace {

bool AllFinite(const Matrix& x) { return x.array().isFinite().all(); }

void CheckSquare(const Matrix& x, const char* what) {
  if (x.rows() != x.cols()) {
    throw Error(std::string(what) + ": matrix must be square");
  }
}

}  // namespace

AdjacencyPreference::AdjacencyPreference(Matrix weights)
    : weights_(std::move(weights)) {
  CheckSquare(weights_, "AdjacencyPreference");
  if (weights_.rows() < 1) throw Error("AdjacencyPreference: m must be >= 1");
  if (!AllFinite(weights_)) {
    throw Error("AdjacencyPreference: non-finite weight");
  }
  if ((weights_.array() < 0.0).any()) {
    throw Error("AdjacencyPreference: negative weight");
  }
  for (int i = 0; i < weights_.rows(); ++i) {
    if (weights_(i, i) != 0.0) {
      throw Error("AdjacencyPreference: nonzero diagonal at " +
                  std::to_string(i));
    }
  }
}

void ComparisonPreference::Validate(int m) const {
  if (winner == loser) throw Error("comparison: winner equals loser");
  if (winner < 0 || winner >= m || loser < 0 || loser >= m) {
    throw Error("comparison: item index out of range [0, " +
                std::to_string(m) + ")");
  }
}

void ClickRecord::Validate(int m) const {
  std::set<int> seen;
  for (int item : presented) {
    if (item < 0 || item >= m) {
      throw Error("click record: presented item out of range");
    }
    if (!seen.insert(item).second) {
      throw Error("click record: duplicate presented item");
    }
  }
  if (clicked_position < 1 ||
      clicked_position > static_cast<int>(presented.size()) + 1) {
    throw Error("click record: clicked_position out of range");
  }
}

ScoreStructure::ScoreStructure(Vector s) : scores(std::move(s)) {
  if (!scores.array().isFinite().all()) {
    throw Error("ScoreStructure: non-finite score");
  }
}

SkewSymmetricAggregate::SkewSymmetricAggregate(Matrix a, Matrix mask)
    : a_(std::move(a)), mask_(std::move(mask)) {
  CheckSquare(a_, "SkewSymmetricAggregate");
  if (mask_.rows() != a_.rows() || mask_.cols() != a_.cols()) {
    throw Error("SkewSymmetricAggregate: mask shape mismatch");
  }
  if (!AllFinite(a_)) throw Error("SkewSymmetricAggregate: non-finite entry");
  if ((a_ + a_.transpose()).cwiseAbs().maxCoeff() > kSkewTolerance) {
    throw Error("SkewSymmetricAggregate: matrix is not skew-symmetric");
  }
  const int m = static_cast<int>(a_.rows());
  for (int i = 0; i < m; ++i) {
    if (mask_(i, i) != 1.0) {
      throw Error("SkewSymmetricAggregate: mask diagonal must be 1");
    }
    for (int j = 0; j < m; ++j) {
      const double w = mask_(i, j);
      if (w != 0.0 && w != 1.0) {
        throw Error("SkewSymmetricAggregate: mask must be binary");
      }
      if (w != mask_(j, i)) {
        throw Error("SkewSymmetricAggregate: mask must be symmetric");
      }
      if (w == 0.0 && a_(i, j) != 0.0) {
        throw Error("SkewSymmetricAggregate: unobserved entry must be 0");
      }
    }
  }
}

SkewSymmetricAggregate SkewSymmetricAggregate::FullyObserved(Matrix a) {
  Matrix mask = Matrix::Ones(a.rows(), a.cols());
  return SkewSymmetricAggregate(std::move(a), std::move(mask));
}

DifferenceGraph::DifferenceGraph(Matrix diff) : diff_(std::move(diff)) {
  CheckSquare(diff_, "DifferenceGraph");
  if ((diff_.array() < 0.0).any()) {
    throw Error("DifferenceGraph: negative weight");
  }
  for (int i = 0; i < diff_.rows(); ++i) {
    for (int j = 0; j < diff_.cols(); ++j) {
      if (std::min(diff_(i, j), diff_(j, i)) != 0.0) {
        throw Error("DifferenceGraph: both directions of a pair carry weight");
      }
    }
  }
}

int StructureSize(const Structure& s) {
  if (const auto* score = std::get_if<ScoreStructure>(&s)) return score->m();
  if (const auto* adj = std::get_if<AdjacencyPreference>(&s)) return adj->m();
  return -1;
}

LimitLaw::LimitLaw(std::vector<Structure> support,
                   std::vector<double> probabilities)
    : support_(std::move(support)), probabilities_(std::move(probabilities)) {
  if (support_.empty()) throw Error("LimitLaw: empty support");
  if (support_.size() != probabilities_.size()) {
    throw Error("LimitLaw: support and probabilities differ in length");
  }
  double total = 0.0;
  for (double p : probabilities_) {
    if (!(p >= 0.0)) throw Error("LimitLaw: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw Error("LimitLaw: probabilities must sum to 1");
  }
  m_ = StructureSize(support_.front());
  for (const Structure& s : support_) {
    if (StructureSize(s) != m_) {
      throw Error("LimitLaw: structures disagree on item count");
    }
  }
}

std::size_t QueryDataset::total_judgments() const {
  std::size_t n = 0;
  for (const Query& q : queries) n += q.judgments.size();
  return n;
}

void QueryDataset::Validate() const {
  const int d = dim();
  for (const Query& q : queries) {
    if (q.d() != d) {
      throw Error("dataset: feature dimension differs in query " + q.query_id);
    }
    if (q.relevances && q.relevances->size() != q.m()) {
      throw Error("dataset: relevance length differs from item count in " +
                  q.query_id);
    }
    const int m = q.m();
    for (const PreferenceJudgment& j : q.judgments) {
      if (const auto* adj = std::get_if<AdjacencyPreference>(&j)) {
        if (adj->m() != m) {
          throw Error("dataset: adjacency judgment size mismatch in " +
                      q.query_id);
        }
      } else if (const auto* cmp = std::get_if<ComparisonPreference>(&j)) {
        cmp->Validate(m);
      } else {
        std::get<ClickRecord>(j).Validate(m);
      }
    }
  }
}

LinearScorer::LinearScorer(Vector theta) : theta_(std::move(theta)) {
  if (!theta_.array().isFinite().all()) {
    throw Error("LinearScorer: non-finite parameter");
  }
}

}  // namespace rankagg
