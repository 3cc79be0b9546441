// Copyright 2026 The graphchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "graphchain/assignment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace graphchain {
namespace {

void check_input(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("assignment matrix must be square");
  if (!m.allFinite()) throw std::invalid_argument("assignment matrix has non-finite entries");
}

// Min-cost assignment via shortest augmenting paths (1-indexed with a
// virtual row/column 0). cost is read through the accessor so that the
// max variant can negate on the fly.
template <typename Cost>
std::vector<std::size_t> hungarian(std::size_t n, Cost cost) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[match[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

double assignment_total(const DenseMatrix& weights, const Permutation& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    total += weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p[i]));
  }
  return total;
}

Assignment lap_max(const DenseMatrix& weights) {
  check_input(weights);
  const auto n = static_cast<std::size_t>(weights.rows());
  auto rows = hungarian(n, [&](std::size_t i, std::size_t j) {
    return -weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  });
  Permutation p(std::move(rows));
  const double total = assignment_total(weights, p);
  return {std::move(p), total};
}

Assignment lap_min(const DenseMatrix& costs) {
  check_input(costs);
  const auto n = static_cast<std::size_t>(costs.rows());
  auto rows = hungarian(n, [&](std::size_t i, std::size_t j) {
    return costs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  });
  Permutation p(std::move(rows));
  const double total = assignment_total(costs, p);
  return {std::move(p), total};
}

Permutation proj(const DenseMatrix& s) { return lap_max(s).permutation; }

bool is_doubly_stochastic(const DenseMatrix& d, double tol) {
  if (d.rows() != d.cols()) return false;
  if (d.size() == 0) return true;
  if (!d.allFinite() || d.minCoeff() < -tol) return false;
  const auto rows = d.rowwise().sum();
  const auto cols = d.colwise().sum();
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    if (std::abs(rows(i) - 1.0) > tol || std::abs(cols(i) - 1.0) > tol) return false;
  }
  return true;
}

}  // namespace graphchain
