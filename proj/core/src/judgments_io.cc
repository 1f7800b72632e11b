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

#include "rankagg/judgments_io.h"

#include <string>
#include <unordered_map>
#include <vector>

namespace rankagg {
namespace {

using nlohmann::json;

struct ParsedQuery {
  std::string query_id;
  int m = 0;
  std::optional<Vector> relevances;
  std::vector<PreferenceJudgment> judgments;
};

Vector ToVector(const json& j) {
  std::vector<double> v = j.get<std::vector<double>>();
  return Eigen::Map<Vector>(v.data(), static_cast<int>(v.size()));
}

ParsedQuery ParseQuery(const json& jq) {
  ParsedQuery out;
  const json& id = jq.at("query_id");
  out.query_id = id.is_string() ? id.get<std::string>() : id.dump();
  if (jq.contains("relevances")) out.relevances = ToVector(jq["relevances"]);
  if (jq.contains("m")) {
    out.m = jq["m"].get<int>();
  } else if (out.relevances.has_value()) {
    out.m = static_cast<int>(out.relevances->size());
  } else {
    throw Error("query " + out.query_id + ": need \"m\" or \"relevances\"");
  }
  if (out.m < 1) throw Error("query " + out.query_id + ": m must be >= 1");
  if (out.relevances.has_value() && out.relevances->size() != out.m) {
    throw Error("query " + out.query_id + ": relevances length != m");
  }
  if (jq.contains("pairs")) {
    for (const json& p : jq["pairs"]) {
      if (!p.is_array() || p.size() != 2) {
        throw Error("query " + out.query_id + ": pairs must be [winner, loser]");
      }
      ComparisonPreference c{p[0].get<int>(), p[1].get<int>()};
      c.Validate(out.m);
      out.judgments.emplace_back(c);
    }
  }
  if (jq.contains("sessions")) {
    for (const json& s : jq["sessions"]) {
      ClickRecord r{s.at("presented").get<std::vector<int>>(),
                    s.at("clicked").get<int>()};
      r.Validate(out.m);
      out.judgments.emplace_back(std::move(r));
    }
  }
  if (jq.contains("adjacency")) {
    for (const json& a : jq["adjacency"]) {
      Matrix w(out.m, out.m);
      if (a.size() != static_cast<std::size_t>(out.m)) {
        throw Error("query " + out.query_id + ": adjacency must be m x m");
      }
      for (int i = 0; i < out.m; ++i) {
        if (a[i].size() != static_cast<std::size_t>(out.m)) {
          throw Error("query " + out.query_id + ": adjacency must be m x m");
        }
        for (int j = 0; j < out.m; ++j) w(i, j) = a[i][j].get<double>();
      }
      out.judgments.emplace_back(AdjacencyPreference(std::move(w)));
    }
  }
  return out;
}

std::vector<ParsedQuery> ParseDocument(const json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("queries")) {
      throw Error("judgments document needs a \"queries\" array");
    }
    const int version = doc.value("schema_version", kJudgmentsSchemaVersion);
    if (version != kJudgmentsSchemaVersion) {
      throw Error("unsupported judgments schema_version " +
                  std::to_string(version));
    }
    std::vector<ParsedQuery> out;
    for (const json& jq : doc.at("queries")) out.push_back(ParseQuery(jq));
    return out;
  } catch (const json::exception& e) {
    throw Error(std::string("judgments document: ") + e.what());
  }
}

}  // namespace

nlohmann::json JudgmentsToJson(const QueryDataset& data) {
  json doc;
  doc["schema_version"] = kJudgmentsSchemaVersion;
  doc["queries"] = json::array();
  for (const Query& q : data.queries) {
    json jq;
    jq["query_id"] = q.query_id;
    jq["m"] = q.m();
    if (q.relevances.has_value()) {
      jq["relevances"] = std::vector<double>(q.relevances->data(),
                                             q.relevances->data() +
                                                 q.relevances->size());
    }
    json pairs = json::array();
    json sessions = json::array();
    json adjacency = json::array();
    for (const PreferenceJudgment& j : q.judgments) {
      if (const auto* c = std::get_if<ComparisonPreference>(&j)) {
        pairs.push_back({c->winner, c->loser});
      } else if (const auto* r = std::get_if<ClickRecord>(&j)) {
        sessions.push_back(
            {{"presented", r->presented}, {"clicked", r->clicked_position}});
      } else {
        const Matrix& w = std::get<AdjacencyPreference>(j).weights();
        json rows = json::array();
        for (int i = 0; i < w.rows(); ++i) {
          rows.push_back(std::vector<double>(w.cols()));
          for (int k = 0; k < w.cols(); ++k) rows[i][k] = w(i, k);
        }
        adjacency.push_back(std::move(rows));
      }
    }
    if (!pairs.empty()) jq["pairs"] = std::move(pairs);
    if (!sessions.empty()) jq["sessions"] = std::move(sessions);
    if (!adjacency.empty()) jq["adjacency"] = std::move(adjacency);
    doc["queries"].push_back(std::move(jq));
  }
  return doc;
}

QueryDataset DatasetFromJudgmentsJson(const nlohmann::json& doc) {
  QueryDataset data;
  for (ParsedQuery& p : ParseDocument(doc)) {
    Query q;
    q.query_id = std::move(p.query_id);
    q.features = Matrix::Zero(p.m, 0);
    q.judgments = std::move(p.judgments);
    q.relevances = std::move(p.relevances);
    data.queries.push_back(std::move(q));
  }
  return data;
}

void AttachJudgmentsFromJson(const nlohmann::json& doc, QueryDataset& data) {
  std::unordered_map<std::string, Query*> by_id;
  for (Query& q : data.queries) by_id[q.query_id] = &q;
  for (ParsedQuery& p : ParseDocument(doc)) {
    auto it = by_id.find(p.query_id);
    if (it == by_id.end()) {
      throw Error("judgments reference unknown query " + p.query_id);
    }
    Query& q = *it->second;
    if (q.m() != p.m) {
      throw Error("query " + p.query_id + ": judgments have m = " +
                  std::to_string(p.m) + " but features have " +
                  std::to_string(q.m()) + " rows");
    }
    for (PreferenceJudgment& j : p.judgments) {
      q.judgments.push_back(std::move(j));
    }
    if (p.relevances.has_value()) q.relevances = std::move(p.relevances);
  }
}

}  // namespace rankagg
