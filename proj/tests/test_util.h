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

// Independent oracles shared by the test suites. Nothing here calls the
// library code it is used to check.

#ifndef RANKAGG_TESTS_TEST_UTIL_H_
#define RANKAGG_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace rankagg::testing {

inline std::vector<std::vector<int>> Permutations(int m) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// DCG of placing item order[r] at rank r + 1 with natural-log discount.
inline double DcgOfOrder(const std::vector<double>& gains,
                         const std::vector<int>& order) {
  double dcg = 0.0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    dcg += gains[order[r]] / std::log(2.0 + r);
  }
  return dcg;
}

inline double BruteForceZ(const std::vector<double>& gains) {
  double best = -1e300;
  for (const auto& p : Permutations(static_cast<int>(gains.size()))) {
    best = std::max(best, DcgOfOrder(gains, p));
  }
  return best;
}

// Items sorted by descending score, ties to the lower index.
inline std::vector<int> OrderOf(const Eigen::VectorXd& alpha) {
  std::vector<int> order(alpha.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return alpha[a] > alpha[b]; });
  return order;
}

// Central differences with step h.
inline Eigen::VectorXd NumericGradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h = 1e-5) {
  Eigen::VectorXd g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    Eigen::VectorXd a = x;
    Eigen::VectorXd b = x;
    a[i] += h;
    b[i] -= h;
    g[i] = (f(a) - f(b)) / (2.0 * h);
  }
  return g;
}

inline double RelativeError(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

// Dominant (largest real part) eigenvector from a full eigendecomposition,
// normalized to sum 1.
inline Eigen::VectorXd DenseDominantEigenvector(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  int best = 0;
  for (int i = 1; i < a.rows(); ++i) {
    if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
  }
  Eigen::VectorXd v = es.eigenvectors().col(best).real();
  return v / v.sum();
}

// Least squares x_i - x_j ~ a(i, j) over observed pairs i < j, plus the row
// 1'x = 0, solved by QR.
inline Eigen::VectorXd DenseDifferenceLeastSquares(const Eigen::MatrixXd& a,
                                                   const Eigen::MatrixXd& mask) {
  const int m = static_cast<int>(a.rows());
  std::vector<std::pair<int, int>> rows;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (mask(i, j) != 0.0) rows.emplace_back(i, j);
    }
  }
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(rows.size() + 1, m);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(rows.size() + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    b(r, rows[r].first) = 1.0;
    b(r, rows[r].second) = -1.0;
    y[r] = a(rows[r].first, rows[r].second);
  }
  b.row(rows.size()).setOnes();
  return b.colPivHouseholderQr().solve(y);
}

inline Eigen::MatrixXd RandomSkew(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      a(i, j) = n(rng);
      a(j, i) = -a(i, j);
    }
  }
  return a;
}

}  // namespace rankagg::testing

#endif  // RANKAGG_TESTS_TEST_UTIL_H_
