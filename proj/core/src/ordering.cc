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

#include "rankagg/ordering.h"

#include <algorithm>
#include <numeric>

namespace rankagg {
namespace {

int Sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

std::vector<int> RankedItems(const Vector& alpha) {
  if (alpha.size() == 0) throw Error("empty scores");
  std::vector<int> order(alpha.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&alpha](int a, int b) { return alpha[a] > alpha[b]; });
  return order;
}

std::vector<int> RankPermutation(const Vector& alpha) {
  const std::vector<int> order = RankedItems(alpha);
  std::vector<int> ranks(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    ranks[order[r]] = static_cast<int>(r) + 1;
  }
  return ranks;
}

bool SameOrdering(const Vector& alpha, const Vector& beta) {
  if (alpha.size() != beta.size()) {
    throw Error("SameOrdering: length mismatch");
  }
  const Eigen::Index m = alpha.size();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      if (Sign(alpha[i] - alpha[j]) != Sign(beta[i] - beta[j])) return false;
    }
  }
  return true;
}

Vector OrderingRepresentative(const std::vector<int>& items_by_rank) {
  const int m = static_cast<int>(items_by_rank.size());
  Vector alpha(m);
  for (int r = 0; r < m; ++r) alpha[items_by_rank[r]] = m - r;
  return alpha;
}

std::vector<std::vector<int>> AllOrderings(int m) {
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace rankagg
