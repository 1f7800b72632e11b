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

// Domain types shared by every rankagg module: preference judgments, the
// structures they aggregate into, finite-support limit laws, per-query
// datasets and the linear scoring model.

#ifndef RANKAGG_TYPES_H_
#define RANKAGG_TYPES_H_

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace rankagg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

enum class ErrorCode {
  kInvalidArgument,
  // Declared algorithmic failures: search exhaustion, divergence, no
  // convergence.
  kAlgorithmFailure,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  explicit Error(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Weighted directed graph on m nodes; weights(i, j) is the strength of
// "i preferred to j".
class AdjacencyPreference {
 public:
  explicit AdjacencyPreference(Matrix weights);

  static AdjacencyPreference Zero(int m) {
    return AdjacencyPreference(Matrix::Zero(m, m));
  }

  int m() const { return static_cast<int>(weights_.rows()); }
  const Matrix& weights() const { return weights_; }
  double operator()(int i, int j) const { return weights_(i, j); }

 private:
  Matrix weights_;
};

// One observed pairwise comparison "winner preferred to loser".
struct ComparisonPreference {
  int winner = 0;
  int loser = 0;

  // Throws if the pair is degenerate or out of [0, m).
  void Validate(int m) const;
};

// Cascade click record: `presented` lists item ids by position;
// `clicked_position` is 1-based, with presented.size() + 1 meaning no click.
struct ClickRecord {
  std::vector<int> presented;
  int clicked_position = 1;

  bool has_click() const {
    return clicked_position <= static_cast<int>(presented.size());
  }
  void Validate(int m) const;
};

struct ScoreStructure {
  Vector scores;

  ScoreStructure() = default;
  explicit ScoreStructure(Vector s);
  int m() const { return static_cast<int>(scores.size()); }
};

// Skew-symmetric comparison matrix together with its observation mask.
class SkewSymmetricAggregate {
 public:
  static constexpr double kSkewTolerance = 1e-12;

  SkewSymmetricAggregate(Matrix a, Matrix mask);

  // Full mask (every pair observed).
  static SkewSymmetricAggregate FullyObserved(Matrix a);

  int m() const { return static_cast<int>(a_.rows()); }
  const Matrix& a() const { return a_; }
  const Matrix& mask() const { return mask_; }

 private:
  Matrix a_;
  Matrix mask_;
};

// diff(i, j) = max{Y_ij - Y_ji, 0}.
class DifferenceGraph {
 public:
  explicit DifferenceGraph(Matrix diff);

  int m() const { return static_cast<int>(diff_.rows()); }
  const Matrix& diff() const { return diff_; }
  double weight(int i, int j) const { return diff_(i, j); }
  bool has_edge(int i, int j) const { return diff_(i, j) > 0.0; }

 private:
  Matrix diff_;
};

using PreferenceJudgment =
    std::variant<AdjacencyPreference, ComparisonPreference, ClickRecord>;

// Anything a loss can be evaluated against. A bare comparison is the
// identity structure used by the pairwise logistic baseline.
using Structure =
    std::variant<ScoreStructure, AdjacencyPreference, ComparisonPreference>;

// Item count of a structure; comparisons carry none and report -1.
int StructureSize(const Structure& s);

// Finite-support distribution over structures.
class LimitLaw {
 public:
  static constexpr double kMassTolerance = 1e-12;

  LimitLaw(std::vector<Structure> support, std::vector<double> probabilities);

  static LimitLaw PointMass(Structure s) {
    return LimitLaw({std::move(s)}, {1.0});
  }

  int m() const { return m_; }
  std::size_t size() const { return support_.size(); }
  const std::vector<Structure>& support() const { return support_; }
  const std::vector<double>& probabilities() const { return probabilities_; }

 private:
  std::vector<Structure> support_;
  std::vector<double> probabilities_;
  int m_ = 0;
};

struct Query {
  std::string query_id;
  Matrix features;  // m x d, one row per result
  std::vector<PreferenceJudgment> judgments;
  std::optional<Vector> relevances;

  int m() const { return static_cast<int>(features.rows()); }
  int d() const { return static_cast<int>(features.cols()); }
};

struct QueryDataset {
  std::vector<Query> queries;

  bool empty() const { return queries.empty(); }
  // Feature dimension; 0 for an empty dataset.
  int dim() const { return queries.empty() ? 0 : queries.front().d(); }
  std::size_t total_judgments() const;

  // Throws if d differs across queries or a judgment references an item
  // outside its query.
  void Validate() const;
};

class LinearScorer {
 public:
  LinearScorer() = default;
  explicit LinearScorer(Vector theta);

  static LinearScorer Zero(int d) { return LinearScorer(Vector::Zero(d)); }

  const Vector& theta() const { return theta_; }
  int dim() const { return static_cast<int>(theta_.size()); }

  // f(q)_i = <theta, x_i>.
  Vector Score(const Matrix& features) const { return features * theta_; }

 private:
  Vector theta_;
};

}  // namespace rankagg

#endif  // RANKAGG_TYPES_H_
