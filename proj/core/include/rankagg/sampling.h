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

#ifndef RANKAGG_SAMPLING_H_
#define RANKAGG_SAMPLING_H_

#include <cstdint>
#include <vector>

#include "rankagg/types.h"

namespace rankagg {

// Seeds an independent stream for (seed, stream) with a splitmix64 mix so
// nearby seeds do not produce correlated engines.
Rng MakeRng(std::uint64_t seed, std::uint64_t stream = 0);

int UniformIndex(Rng& rng, int n);
double Uniform01(Rng& rng);

// Uniformly random k-subset of {0, ..., n - 1}, sorted ascending. Returns
// every index when n <= k.
std::vector<int> UniformSubset(int n, int k, Rng& rng);

// Partial Fisher-Yates over a persistent index pool: each Draw is O(k) and
// uniform regardless of the pool's current arrangement.
class SubsetSampler {
 public:
  explicit SubsetSampler(int n);
  std::vector<int> Draw(int k, Rng& rng);

 private:
  std::vector<int> pool_;
};

}  // namespace rankagg

#endif  // RANKAGG_SAMPLING_H_
