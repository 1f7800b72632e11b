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

// Learning-to-rank text format:
//   <relevance> qid:<id> <fid>:<value> ... [# comment]
// Feature ids are 1-based; every query gets dense rows sized to the largest
// id seen in the whole input.

#ifndef RANKAGG_LETOR_H_
#define RANKAGG_LETOR_H_

#include <iosfwd>

#include "rankagg/types.h"

namespace rankagg {

// Groups lines by qid in first-appearance order and stores relevances.
// Throws kInvalidArgument with "line N: ..." on malformed input.
QueryDataset LetorParse(std::istream& in);

// Writes every feature id explicitly, with round-trip precision.
void LetorSerialize(const QueryDataset& data, std::ostream& out);

}  // namespace rankagg

#endif  // RANKAGG_LETOR_H_
