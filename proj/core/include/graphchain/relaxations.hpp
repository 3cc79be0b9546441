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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "graphchain/assignment.hpp"
#include "graphchain/graph.hpp"

namespace graphchain {

struct FwConfig {
  std::size_t max_iters = 30;
  double rel_tol = 1e-6;

  static FwConfig faq_defaults() { return {30, 1e-6}; }
  static FwConfig convex_defaults() { return {100, 1e-6}; }
  void validate() const;
};

struct FwReport {
  /// Number of linear-assignment direction steps taken.
  std::size_t iterations = 0;
  double initial_objective = 0.0;
  /// Objective after each direction step; size() == iterations.
  std::vector<double> objective_trace;
  bool converged = false;

  /// Non-increasing (minimise) or non-decreasing (maximise) including the
  /// initial objective.
  bool monotone(bool maximize) const;
};

/// Process-wide tally of Frank-Wolfe runs whose trace broke monotonicity.
struct FwAuditCounts {
  std::uint64_t runs = 0;
  std::uint64_t violations = 0;
};
FwAuditCounts fw_audit();
void reset_fw_audit();

struct ConvexResult {
  DenseMatrix d;
  FwReport report;
};

/// Frank-Wolfe on min ||AD - DB||_F^2 over doubly stochastic D, started at
/// the barycenter J/n.
ConvexResult convex_relax(const Graph& a, const Graph& b,
                          const FwConfig& cfg = FwConfig::convex_defaults());
ConvexResult convex_relax(const Graph& a, const Graph& b, const DenseMatrix& init,
                          const FwConfig& cfg = FwConfig::convex_defaults());

/// ||AD - DB||_F^2.
double convex_objective(const Graph& a, const Graph& b, const DenseMatrix& d);
/// <AD, DB>; equals 2 * nce for a permutation matrix.
double indefinite_objective(const Graph& a, const Graph& b, const DenseMatrix& d);

struct FaqResult {
  Permutation permutation;
  DenseMatrix d;
  FwReport report;
};

/// Frank-Wolfe ascent on <AD, DB> followed by a final projection.
/// Throws std::invalid_argument if `init` is not doubly stochastic (1e-6).
FaqResult faq(const Graph& a, const Graph& b, const DenseMatrix& init,
              const FwConfig& cfg = FwConfig::faq_defaults());
FaqResult faq(const Graph& a, const Graph& b, const Permutation& init,
              const FwConfig& cfg = FwConfig::faq_defaults());
/// FAQ started at the barycenter.
FaqResult faq_barycenter(const Graph& a, const Graph& b,
                         const FwConfig& cfg = FwConfig::faq_defaults());

enum class SimilarityInit {
  /// Permutation matrix of proj(s).
  projection,
  /// Row softmax of s followed by alternating row/column rescaling.
  sinkhorn,
};

FaqResult faq_from_similarity(const Graph& a, const Graph& b, const DenseMatrix& s,
                              const FwConfig& cfg = FwConfig::faq_defaults(),
                              SimilarityInit init = SimilarityInit::projection);

/// Row softmax then `rounds` row/column normalisations.
DenseMatrix sinkhorn_from_similarity(const DenseMatrix& s, int rounds = 10);

DenseMatrix barycenter(std::size_t n);

struct BruteForceResult {
  Permutation permutation;
  std::size_t opt_nce = 0;
};

/// Exhaustive maximiser of nce over all permutations (first in
/// lexicographic order among ties). Throws std::invalid_argument for n > 10.
BruteForceResult gap_bruteforce(const Graph& a, const Graph& b);

constexpr std::size_t kBruteForceMaxNodes = 10;

}  // namespace graphchain
