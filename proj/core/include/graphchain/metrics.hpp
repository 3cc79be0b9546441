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
#include <span>
#include <utility>
#include <vector>

#include "graphchain/graph.hpp"

namespace graphchain {

/// Relabels `g` so that node i becomes node p(i): out(p(i), p(j)) = g(i, j).
Graph apply_permutation(const Graph& g, const Permutation& p);

/// Number of common edges, ½ Σ_ij A_ij B_{p(i) p(j)}.
std::size_t nce(const Graph& a, const Graph& b, const Permutation& p);

/// Fraction of indices where p and reference agree.
double acc(const Permutation& p, const Permutation& reference);

/// score[i] = Σ_j A_ij B_{p(i) p(j)}: matched edges incident to i.
std::vector<std::size_t> node_scores(const Graph& a, const Graph& b,
                                     const Permutation& p);

struct RankingPair {
  Ranking a;
  Ranking b;
};

/// Orders nodes of A by decreasing score (ties by ascending index) and maps
/// that order through p to get the ranking of B.
RankingPair ranking_from_scores(std::span<const std::size_t> scores,
                                const Permutation& p);

}  // namespace graphchain
