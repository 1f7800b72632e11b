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

#ifndef RANKAGG_ORDERING_H_
#define RANKAGG_ORDERING_H_

#include <vector>

#include "rankagg/types.h"

namespace rankagg {

// ranks[i] is the 1-based rank of item i under a stable descending sort of
// `alpha`; tied items keep index order (lower index ranks first).
std::vector<int> RankPermutation(const Vector& alpha);

// Inverse of RankPermutation: order[r] is the item placed at rank r + 1.
std::vector<int> RankedItems(const Vector& alpha);

// True iff sign(alpha_i - alpha_j) == sign(beta_i - beta_j) for every pair.
bool SameOrdering(const Vector& alpha, const Vector& beta);

// Score vector whose induced ordering lists `items_by_rank` from top to
// bottom: the top item gets m, the next m - 1, and so on.
Vector OrderingRepresentative(const std::vector<int>& items_by_rank);

// Every permutation of {0, ..., m - 1} in lexicographic order.
std::vector<std::vector<int>> AllOrderings(int m);

}  // namespace rankagg

#endif  // RANKAGG_ORDERING_H_
