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

#include "rankagg/letor.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rankagg {
namespace {

struct Row {
  double relevance;
  std::map<int, double> features;
};

[[noreturn]] void Fail(int line, const std::string& what) {
  throw Error("line " + std::to_string(line) + ": " + what);
}

double ParseDouble(std::string_view token, int line, const char* what) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() ||
      !std::isfinite(value)) {
    Fail(line, std::string("non-numeric ") + what + " '" + std::string(token) +
                   "'");
  }
  return value;
}

}  // namespace

QueryDataset LetorParse(std::istream& in) {
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<Row>> rows;
  int max_fid = 0;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream tokens(raw);
    std::string token;
    if (!(tokens >> token)) continue;

    Row row;
    row.relevance = ParseDouble(token, line, "relevance");
    if (!(tokens >> token) || token.rfind("qid:", 0) != 0 ||
        token.size() == 4) {
      Fail(line, "expected qid:<id>");
    }
    const std::string qid = token.substr(4);
    while (tokens >> token) {
      const std::size_t colon = token.find(':');
      if (colon == std::string::npos || colon == 0) {
        Fail(line, "expected <fid>:<value>, got '" + token + "'");
      }
      int fid = 0;
      const auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + colon, fid);
      if (ec != std::errc() || ptr != token.data() + colon || fid < 1) {
        Fail(line, "bad feature id '" + token.substr(0, colon) + "'");
      }
      const double value = ParseDouble(
          std::string_view(token).substr(colon + 1), line, "feature value");
      if (!row.features.emplace(fid, value).second) {
        Fail(line, "duplicate feature id " + std::to_string(fid));
      }
      max_fid = std::max(max_fid, fid);
    }
    auto [it, inserted] = rows.try_emplace(qid);
    if (inserted) order.push_back(qid);
    it->second.push_back(std::move(row));
  }

  QueryDataset data;
  for (const std::string& qid : order) {
    const std::vector<Row>& items = rows[qid];
    Query q;
    q.query_id = qid;
    q.features = Matrix::Zero(static_cast<int>(items.size()), max_fid);
    Vector rel(static_cast<int>(items.size()));
    for (std::size_t i = 0; i < items.size(); ++i) {
      rel[i] = items[i].relevance;
      for (const auto& [fid, value] : items[i].features) {
        q.features(i, fid - 1) = value;
      }
    }
    q.relevances = std::move(rel);
    data.queries.push_back(std::move(q));
  }
  return data;
}

void LetorSerialize(const QueryDataset& data, std::ostream& out) {
  std::ostringstream buf;
  buf.precision(17);
  for (const Query& q : data.queries) {
    if (q.query_id.empty() ||
        q.query_id.find_first_of(" \t#") != std::string::npos) {
      throw Error("LetorSerialize: query id '" + q.query_id +
                  "' cannot be written");
    }
    for (int i = 0; i < q.m(); ++i) {
      buf << (q.relevances.has_value() ? (*q.relevances)[i] : 0.0)
          << " qid:" << q.query_id;
      for (int k = 0; k < q.d(); ++k) {
        buf << ' ' << (k + 1) << ':' << q.features(i, k);
      }
      buf << '\n';
    }
  }
  out << buf.str();
}

}  // namespace rankagg
