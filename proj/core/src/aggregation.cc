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

#include "rankagg/aggregation.h"

#include <cmath>
#include <queue>
#include <string>
#include <utility>

namespace rankagg {
namespace {

// wins(i, j) = number of comparisons with i preferred to j.
Matrix WinCounts(std::span<const ComparisonPreference> comparisons, int m) {
  Matrix wins = Matrix::Zero(m, m);
  for (const ComparisonPreference& c : comparisons) {
    c.Validate(m);
    wins(c.winner, c.loser) += 1.0;
  }
  return wins;
}

bool MaskConnected(const Matrix& mask) {
  const int m = static_cast<int>(mask.rows());
  std::vector<bool> seen(m, false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v = 0; v < m; ++v) {
      if (!seen[v] && mask(u, v) != 0.0) {
        seen[v] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == m;
}

}  // namespace

AdjacencyPreference AverageAdjacency(
    std::span<const AdjacencyPreference> prefs) {
  if (prefs.empty()) throw Error("no judgments");
  const int m = prefs.front().m();
  Matrix sum = Matrix::Zero(m, m);
  for (const AdjacencyPreference& y : prefs) {
    if (y.m() != m) throw Error("AverageAdjacency: inconsistent item count");
    sum += y.weights();
  }
  return AdjacencyPreference(sum / static_cast<double>(prefs.size()));
}

SkewSymmetricAggregate BtlLogOdds(
    std::span<const ComparisonPreference> comparisons, int m, double c) {
  if (!(c > 0.0)) throw Error("BtlLogOdds: smoothing c must be > 0");
  const Matrix wins = WinCounts(comparisons, m);
  Matrix a = Matrix::Zero(m, m);
  Matrix mask = Matrix::Identity(m, m);
  const double total = static_cast<double>(comparisons.size());
  for (int j = 0; j < m; ++j) {
    for (int l = j + 1; l < m; ++l) {
      if (wins(j, l) + wins(l, j) == 0.0) continue;
      const double p_jl = wins(j, l) / total;
      const double p_lj = wins(l, j) / total;
      const double value = std::log((p_jl + c) / (p_lj + c));
      a(j, l) = value;
      a(l, j) = -value;
      mask(j, l) = mask(l, j) = 1.0;
    }
  }
  return SkewSymmetricAggregate(std::move(a), std::move(mask));
}

ScoreStructure ThurstoneMostellerScores(const SkewSymmetricAggregate& agg) {
  const Matrix& mask = agg.mask();
  const int m = agg.m();
  if (!MaskConnected(mask)) throw Error("comparison graph disconnected");

  const Vector degree = mask.rowwise().sum();
  const Matrix laplacian = Matrix(degree.asDiagonal()) - mask;
  const Vector rhs = agg.a().cwiseProduct(mask).rowwise().sum();

  // Laplacian pseudoinverse through its eigendecomposition; the null space
  // is spanned by the ones vector since the graph is connected.
  Eigen::SelfAdjointEigenSolver<Matrix> eig(laplacian);
  const Vector& values = eig.eigenvalues();
  const Matrix& vectors = eig.eigenvectors();
  const double cutoff =
      std::max(1.0, values.cwiseAbs().maxCoeff()) * 1e-10 * m;
  Vector s = Vector::Zero(m);
  for (int i = 0; i < m; ++i) {
    if (values[i] > cutoff) {
      s += vectors.col(i) * (vectors.col(i).dot(rhs) / values[i]);
    }
  }
  s.array() -= s.mean();
  return ScoreStructure(std::move(s));
}

ScoreStructure BordaScores(const SkewSymmetricAggregate& agg) {
  return ScoreStructure(agg.a().rowwise().sum());
}

ScoreStructure AmmarShahScores(
    std::span<const ComparisonPreference> comparisons, int m) {
  if (m < 2) throw Error("AmmarShahScores: need m >= 2");
  const Matrix wins = WinCounts(comparisons, m);
  Vector s = Vector::Zero(m);
  for (int j = 0; j < m; ++j) {
    for (int l = 0; l < m; ++l) {
      const double seen = wins(j, l) + wins(l, j);
      if (l != j && seen > 0.0) s[j] += wins(j, l) / seen;
    }
  }
  return ScoreStructure(s / static_cast<double>(m - 1));
}

ScoreStructure EigenvectorScores(const Matrix& reciprocal, double tol,
                                 int max_iter) {
  if (reciprocal.rows() != reciprocal.cols() || reciprocal.rows() == 0) {
    throw Error("EigenvectorScores: matrix must be square and nonempty");
  }
  const int m = static_cast<int>(reciprocal.rows());
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!(reciprocal(i, j) > 0.0)) {
        throw Error("EigenvectorScores: nonpositive entry at (" +
                    std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (std::abs(reciprocal(i, j) * reciprocal(j, i) - 1.0) > 1e-9) {
        throw Error("EigenvectorScores: matrix is not reciprocal");
      }
    }
  }
  Vector x = Vector::Constant(m, 1.0 / m);
  for (int it = 0; it < max_iter; ++it) {
    Vector y = reciprocal * x;
    y /= y.sum();
    const double change = (y - x).cwiseAbs().maxCoeff();
    x = std::move(y);
    if (change < tol) return ScoreStructure(std::move(x));
  }
  throw ConvergenceError("EigenvectorScores: power iteration did not converge",
                         std::move(x));
}

Matrix ReciprocalRatios(std::span<const ComparisonPreference> comparisons,
                        int m, double c) {
  if (!(c > 0.0)) throw Error("ReciprocalRatios: smoothing c must be > 0");
  const Matrix wins = WinCounts(comparisons, m);
  const double total = static_cast<double>(comparisons.size());
  Matrix r = Matrix::Ones(m, m);
  for (int j = 0; j < m; ++j) {
    for (int l = j + 1; l < m; ++l) {
      if (wins(j, l) + wins(l, j) == 0.0) continue;
      r(j, l) = (wins(j, l) / total + c) / (wins(l, j) / total + c);
      r(l, j) = 1.0 / r(j, l);
    }
  }
  return r;
}

CascadeEstimate CascadeMle(std::span<const ClickRecord> clicks, int m) {
  CascadeEstimate out;
  out.clicks.assign(m, 0);
  out.examinations.assign(m, 0);
  for (const ClickRecord& rec : clicks) {
    rec.Validate(m);
    const int shown = static_cast<int>(rec.presented.size());
    const int last_examined = std::min(rec.clicked_position, shown);
    for (int pos = 1; pos <= last_examined; ++pos) {
      ++out.examinations[rec.presented[pos - 1]];
    }
    if (rec.has_click()) ++out.clicks[rec.presented[rec.clicked_position - 1]];
  }
  Vector p = Vector::Zero(m);
  for (int l = 0; l < m; ++l) {
    if (out.examinations[l] > 0) {
      p[l] = static_cast<double>(out.clicks[l]) / out.examinations[l];
    }
  }
  out.probabilities = ScoreStructure(std::move(p));
  return out;
}

ScoreStructure EmpiricalLogOddsScores(
    std::span<const ComparisonPreference> comparisons, int m, double c) {
  if (m < 2) throw Error("EmpiricalLogOddsScores: need m >= 2");
  if (c < 0.0) throw Error("EmpiricalLogOddsScores: smoothing must be >= 0");
  const Matrix wins = WinCounts(comparisons, m);
  Vector s = Vector::Zero(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      double w_ij = wins(i, j);
      double w_ji = wins(j, i);
      if (w_ij + w_ji == 0.0) continue;
      if (w_ij == 0.0 || w_ji == 0.0) {
        if (c == 0.0) throw Error("infinite log-odds; supply smoothing");
        w_ij += c;
        w_ji += c;
      }
      const double log_odds = std::log(w_ij / w_ji);
      s[i] += log_odds;
      s[j] -= log_odds;
    }
  }
  return ScoreStructure(s / static_cast<double>(m - 1));
}

std::vector<ComparisonPreference> CollectComparisons(
    const JudgmentRefs& batch) {
  std::vector<ComparisonPreference> out;
  out.reserve(batch.size());
  for (const PreferenceJudgment* j : batch) {
    const auto* c = std::get_if<ComparisonPreference>(j);
    if (c == nullptr) throw Error("expected pairwise comparison judgments");
    out.push_back(*c);
  }
  return out;
}

std::vector<AdjacencyPreference> CollectAdjacencies(const JudgmentRefs& batch) {
  std::vector<AdjacencyPreference> out;
  out.reserve(batch.size());
  for (const PreferenceJudgment* j : batch) {
    const auto* a = std::get_if<AdjacencyPreference>(j);
    if (a == nullptr) throw Error("expected adjacency judgments");
    out.push_back(*a);
  }
  return out;
}

std::vector<ClickRecord> CollectClicks(const JudgmentRefs& batch) {
  std::vector<ClickRecord> out;
  out.reserve(batch.size());
  for (const PreferenceJudgment* j : batch) {
    const auto* c = std::get_if<ClickRecord>(j);
    if (c == nullptr) throw Error("expected click judgments");
    out.push_back(*c);
  }
  return out;
}

StructureFunction IdentityStructure() {
  return [](const JudgmentRefs& batch, int) -> Structure {
    if (batch.empty()) throw Error("no judgments");
    const PreferenceJudgment& first = *batch.front();
    if (const auto* c = std::get_if<ComparisonPreference>(&first)) return *c;
    if (const auto* a = std::get_if<AdjacencyPreference>(&first)) return *a;
    throw Error("identity structure is undefined for click records");
  };
}

StructureFunction AveragedAdjacencyStructure() {
  return [](const JudgmentRefs& batch, int) -> Structure {
    return AverageAdjacency(CollectAdjacencies(batch));
  };
}

StructureFunction LogOddsStructure(double c) {
  return [c](const JudgmentRefs& batch, int m) -> Structure {
    return EmpiricalLogOddsScores(CollectComparisons(batch), m, c);
  };
}

StructureFunction ThurstoneStructure(double c) {
  return [c](const JudgmentRefs& batch, int m) -> Structure {
    return ThurstoneMostellerScores(
        BtlLogOdds(CollectComparisons(batch), m, c));
  };
}

StructureFunction BordaStructure(double c) {
  return [c](const JudgmentRefs& batch, int m) -> Structure {
    return BordaScores(BtlLogOdds(CollectComparisons(batch), m, c));
  };
}

StructureFunction AmmarShahStructure() {
  return [](const JudgmentRefs& batch, int m) -> Structure {
    return AmmarShahScores(CollectComparisons(batch), m);
  };
}

StructureFunction CascadeMleStructure() {
  return [](const JudgmentRefs& batch, int m) -> Structure {
    return CascadeMle(CollectClicks(batch), m).probabilities;
  };
}

}  // namespace rankagg
