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

#pragma once

#include <Eigen/Core>

#include "graphchain/graph.hpp"

namespace graphchain {

using DenseMatrix = Eigen::MatrixXd;

struct Assignment {
  Permutation permutation;
  /// Σ_i weights(i, permutation[i]), summed in row order.
  double total = 0.0;
};

/// Exact maximum-weight perfect matching on a square matrix
/// (shortest augmenting paths with potentials, O(n^3)).
///
/// Ties are resolved by the fixed row/column scan order, so results are
/// reproducible. Throws std::invalid_argument for non-square or non-finite
/// input.
Assignment lap_max(const DenseMatrix& weights);

/// Minimisation wrapper around lap_max.
Assignment lap_min(const DenseMatrix& costs);

/// Permutation maximising <P, s>.
Permutation proj(const DenseMatrix& s);

/// Σ_i weights(i, p[i]) in row order.
double assignment_total(const DenseMatrix& weights, const Permutation& p);

/// True if every entry is >= -tol and every row and column sums to 1 ± tol.
bool is_doubly_stochastic(const DenseMatrix& d, double tol = 1e-9);

}  // namespace graphchain
