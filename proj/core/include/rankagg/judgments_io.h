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

// Judgment sidecar documents:
//   {"schema_version": 1,
//    "queries": [{"query_id": "1", "m": 4, "relevances": [...],
//                 "pairs": [[winner, loser], ...],
//                 "sessions": [{"presented": [...], "clicked": c}, ...],
//                 "adjacency": [[[...], ...], ...]}]}
// Every judgment key is optional; "clicked" is 1-based and len + 1 means no
// click.

#ifndef RANKAGG_JUDGMENTS_IO_H_
#define RANKAGG_JUDGMENTS_IO_H_

#include <nlohmann/json.hpp>

#include "rankagg/types.h"

namespace rankagg {

inline constexpr int kJudgmentsSchemaVersion = 1;

nlohmann::json JudgmentsToJson(const QueryDataset& data);

// Builds queries with m x 0 feature matrices from a sidecar alone.
QueryDataset DatasetFromJudgmentsJson(const nlohmann::json& doc);

// Attaches judgments (and relevances when the dataset lacks them) to the
// queries of `data` with matching ids. Throws on unknown ids or item-count
// mismatches.
void AttachJudgmentsFromJson(const nlohmann::json& doc, QueryDataset& data);

}  // namespace rankagg

#endif  // RANKAGG_JUDGMENTS_IO_H_
