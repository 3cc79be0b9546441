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
#include <span>
#include <vector>

#include <Eigen/Core>

namespace graphchain {

class Rng;

/// Undirected edge with endpoints stored as (u < v) when produced by Graph.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on nodes {0, ..., n-1}.
///
/// Storage is a dense byte matrix (symmetric, zero diagonal). The edge-list
/// and neighbour-list views are derived on demand.
class Graph {
 public:
  static constexpr std::size_t kMaxNodes = 4096;

  Graph() = default;
  explicit Graph(std::size_t n);

  /// Throws std::invalid_argument on self-loops, out-of-range endpoints or
  /// repeated edges.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }

  bool has_edge(std::size_t i, std::size_t j) const {
    return adjacency_[i * n_ + j] != 0;
  }
  std::uint8_t operator()(std::size_t i, std::size_t j) const {
    return adjacency_[i * n_ + j];
  }

  /// Returns false if the edge was already present.
  bool add_edge(std::size_t i, std::size_t j);
  /// Returns false if the edge was absent.
  bool remove_edge(std::size_t i, std::size_t j);

  std::size_t degree(std::size_t i) const;
  std::vector<std::size_t> degrees() const;
  std::span<const std::uint8_t> row(std::size_t i) const {
    return {adjacency_.data() + i * n_, n_};
  }

  /// Edges sorted lexicographically with u < v.
  std::vector<Edge> edges() const;
  /// Ascending neighbour lists.
  std::vector<std::vector<std::size_t>> neighbors() const;
  Eigen::MatrixXd dense() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::uint8_t> adjacency_;
};

/// Bijection on {0, ..., n-1}; mapping()[i] is the image of i.
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument if `mapping` is not a bijection.
  explicit Permutation(std::vector<std::size_t> mapping);

  static Permutation identity(std::size_t n);
  static Permutation random(std::size_t n, Rng& rng);

  std::size_t size() const { return mapping_.size(); }
  std::size_t operator[](std::size_t i) const { return mapping_[i]; }
  std::span<const std::size_t> mapping() const { return mapping_; }

  Permutation inverse() const;
  /// (this ∘ inner)(i) = this[inner[i]].
  Permutation compose(const Permutation& inner) const;
  /// Permutation matrix with P(i, mapping[i]) = 1.
  Eigen::MatrixXd matrix() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> mapping_;
};

/// Node ordering: order()[k] is the node ranked k-th (0 = best).
class Ranking {
 public:
  Ranking() = default;
  /// Throws std::invalid_argument if `order` is not a bijection.
  explicit Ranking(std::vector<std::size_t> order);

  std::size_t size() const { return order_.size(); }
  std::size_t operator[](std::size_t k) const { return order_[k]; }
  std::span<const std::size_t> order() const { return order_; }
  /// positions()[node] = rank of node.
  std::vector<std::size_t> positions() const;

  friend bool operator==(const Ranking&, const Ranking&) = default;

 private:
  std::vector<std::size_t> order_;
};

bool is_bijection(std::span<const std::size_t> mapping);

}  // namespace graphchain
