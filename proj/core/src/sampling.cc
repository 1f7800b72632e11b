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

#include "rankagg/sampling.h"

#include <algorithm>
#include <numeric>
#include <utility>

namespace rankagg {

Rng MakeRng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return Rng(z);
}

int UniformIndex(Rng& rng, int n) {
  return std::uniform_int_distribution<int>(0, n - 1)(rng);
}

double Uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

std::vector<int> UniformSubset(int n, int k, Rng& rng) {
  SubsetSampler sampler(n);
  return sampler.Draw(k, rng);
}

SubsetSampler::SubsetSampler(int n) : pool_(n) {
  std::iota(pool_.begin(), pool_.end(), 0);
}

std::vector<int> SubsetSampler::Draw(int k, Rng& rng) {
  const int n = static_cast<int>(pool_.size());
  if (k >= n) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  for (int i = 0; i < k; ++i) {
    const int j = i + UniformIndex(rng, n - i);
    std::swap(pool_[i], pool_[j]);
  }
  std::vector<int> out(pool_.begin(), pool_.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rankagg
