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

#include "graphchain/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace graphchain {
namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string("size mismatch: ") + what);
}

}  // namespace

Graph apply_permutation(const Graph& g, const Permutation& p) {
  require_same_size(g.size(), p.size(), "apply_permutation");
  Graph out(g.size());
  for (const Edge& e : g.edges()) out.add_edge(p[e.u], p[e.v]);
  return out;
}

std::vector<std::size_t> node_scores(const Graph& a, const Graph& b,
                                     const Permutation& p) {
  require_same_size(a.size(), b.size(), "node_scores graphs");
  require_same_size(a.size(), p.size(), "node_scores permutation");
  const std::size_t n = a.size();
  std::vector<std::size_t> score(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = a.row(i);
    const std::size_t pi = p[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] && b.has_edge(pi, p[j])) ++score[i];
    }
  }
  return score;
}

std::size_t nce(const Graph& a, const Graph& b, const Permutation& p) {
  const auto scores = node_scores(a, b, p);
  return std::accumulate(scores.begin(), scores.end(), std::size_t{0}) / 2;
}

double acc(const Permutation& p, const Permutation& reference) {
  require_same_size(p.size(), reference.size(), "acc");
  if (p.size() == 0) return 1.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < p.size(); ++i) hits += (p[i] == reference[i]);
  return static_cast<double>(hits) / static_cast<double>(p.size());
}

RankingPair ranking_from_scores(std::span<const std::size_t> scores,
                                const Permutation& p) {
  require_same_size(scores.size(), p.size(), "ranking_from_scores");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return scores[x] > scores[y]; });
  std::vector<std::size_t> order_b(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) order_b[k] = p[order[k]];
  return {Ranking(std::move(order)), Ranking(std::move(order_b))};
}

}  // namespace graphchain
