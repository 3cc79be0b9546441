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

#include "graphchain/graph.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "graphchain/rng.hpp"

namespace graphchain {

Graph::Graph(std::size_t n) : n_(n), adjacency_(n * n, 0) {
  if (n > kMaxNodes) {
    throw std::invalid_argument("graph size " + std::to_string(n) +
                                " exceeds the dense limit " +
                                std::to_string(kMaxNodes));
  }
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.u == e.v) throw std::invalid_argument("self-loop in edge list");
    if (!g.add_edge(e.u, e.v)) {
      throw std::invalid_argument("duplicate edge " + std::to_string(e.u) +
                                  "-" + std::to_string(e.v));
    }
  }
  return g;
}

bool Graph::add_edge(std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("self-loops are not allowed");
  if (adjacency_[i * n_ + j]) return false;
  adjacency_[i * n_ + j] = 1;
  adjacency_[j * n_ + i] = 1;
  ++edge_count_;
  return true;
}

bool Graph::remove_edge(std::size_t i, std::size_t j) {
  if (!adjacency_[i * n_ + j]) return false;
  adjacency_[i * n_ + j] = 0;
  adjacency_[j * n_ + i] = 0;
  --edge_count_;
  return true;
}

std::size_t Graph::degree(std::size_t i) const {
  std::size_t d = 0;
  for (auto x : row(i)) d += x;
  return d;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = degree(i);
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (has_edge(i, j)) out.push_back({i, j});
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> Graph::neighbors() const {
  std::vector<std::vector<std::size_t>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (has_edge(i, j)) out[i].push_back(j);
    }
  }
  return out;
}

Eigen::MatrixXd Graph::dense() const {
  Eigen::MatrixXd m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          has_edge(i, j) ? 1.0 : 0.0;
    }
  }
  return m;
}

bool is_bijection(std::span<const std::size_t> mapping) {
  std::vector<char> seen(mapping.size(), 0);
  for (auto x : mapping) {
    if (x >= mapping.size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

Permutation::Permutation(std::vector<std::size_t> mapping)
    : mapping_(std::move(mapping)) {
  if (!is_bijection(mapping_)) {
    throw std::invalid_argument("mapping is not a permutation");
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return Permutation(std::move(m));
}

Permutation Permutation::random(std::size_t n, Rng& rng) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  rng.shuffle(m.begin(), m.end());
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) inv[mapping_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& inner) const {
  if (inner.size() != size()) {
    throw std::invalid_argument("permutation size mismatch in compose");
  }
  std::vector<std::size_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = mapping_[inner[i]];
  return Permutation(std::move(out));
}

Eigen::MatrixXd Permutation::matrix() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < size(); ++i) {
    p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(mapping_[i])) = 1.0;
  }
  return p;
}

Ranking::Ranking(std::vector<std::size_t> order) : order_(std::move(order)) {
  if (!is_bijection(order_)) {
    throw std::invalid_argument("ranking is not a permutation of the nodes");
  }
}

std::vector<std::size_t> Ranking::positions() const {
  std::vector<std::size_t> pos(order_.size());
  for (std::size_t k = 0; k < order_.size(); ++k) pos[order_[k]] = k;
  return pos;
}

}  // namespace graphchain
