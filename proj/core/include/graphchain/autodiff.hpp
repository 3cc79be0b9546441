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
#include <functional>
#include <initializer_list>
#include <vector>

#include "graphchain/tensor.hpp"

namespace graphchain::tensor {

/// Handle to a value recorded on a Tape.
struct Var {
  std::uint32_t id = 0;
};

/// Linear record of a forward computation for reverse-mode gradients.
///
/// Each op appends its output node and, when any input needs a gradient, a
/// closure that pushes the output gradient back to its inputs. backward()
/// replays the closures in reverse order.
template <typename T>
class Tape {
 public:
  using Backward = std::function<void(Tape&)>;

  Var constant(Tensor<T> value);
  /// Leaf holding p.value. With gradients enabled its gradient can be
  /// collected by accumulate_grad(p) after backward().
  Var parameter(const Parameter<T>& p);
  Var record(Tensor<T> value, std::initializer_list<Var> inputs, Backward backward);

  const Tensor<T>& value(Var v) const { return nodes_[v.id].value; }
  /// Gradient buffer of v, zero-initialised on first access.
  Tensor<T>& grad(Var v);
  bool needs_grad(Var v) const { return nodes_[v.id].needs_grad; }

  /// Seeds d(out)/d(out) = 1 for a single-element output.
  void backward(Var out);
  /// Adds the gradients of every leaf bound to p into p.grad.
  void accumulate_grad(Parameter<T>& p) const;

  /// With gradients disabled no closures are kept.
  void set_grad_enabled(bool enabled) { grad_enabled_ = enabled; }
  bool grad_enabled() const { return grad_enabled_; }
  std::size_t size() const { return nodes_.size(); }
  void clear() { nodes_.clear(); }

 private:
  struct Node {
    Tensor<T> value;
    Tensor<T> grad;
    Backward backward;
    const Parameter<T>* param = nullptr;
    bool needs_grad = false;
  };
  std::vector<Node> nodes_;
  bool grad_enabled_ = true;
};

// Ops. Shapes are checked and std::invalid_argument is thrown on mismatch.

/// [m,k] x [k,n] -> [m,n]
template <typename T> Var matmul(Tape<T>& t, Var a, Var b);
/// [m,k] x [n,k]^T -> [m,n]
template <typename T> Var matmul_nt(Tape<T>& t, Var a, Var b);
template <typename T> Var add(Tape<T>& t, Var a, Var b);
template <typename T> Var mul(Tape<T>& t, Var a, Var b);
/// x [r,c] + bias [c] broadcast over rows.
template <typename T> Var add_row(Tape<T>& t, Var x, Var bias);
template <typename T> Var scale(Tape<T>& t, Var x, T factor);
/// [r,c1] ++ [r,c2] -> [r,c1+c2]
template <typename T> Var concat_last(Tape<T>& t, Var a, Var b);
template <typename T> Var relu(Tape<T>& t, Var x);
/// Rows of table [k,d] picked by `indices` -> [indices.size(), d].
template <typename T> Var embedding(Tape<T>& t, Var table, std::vector<std::size_t> indices);
/// Max over one axis; the gradient goes to the first maximal entry.
template <typename T> Var max_over_axis(Tape<T>& t, Var x, std::size_t axis);
template <typename T> Var reshape(Tape<T>& t, Var x, Shape shape);
template <typename T> Var row_softmax(Tape<T>& t, Var x);
/// Per-column standardisation over all rows, then gamma * x_hat + beta.
template <typename T> Var graph_norm(Tape<T>& t, Var x, Var gamma, Var beta, T eps = T(1e-5));
/// Per-channel matrix product of pair tensors stored as [n*n, c]:
/// out[(i,j),c] = Σ_l x[(i,l),c] * y[(l,j),c].
template <typename T> Var pair_matmul(Tape<T>& t, Var x, Var y, std::size_t n);
/// Σ_i (logsumexp(row_i) - row_i[targets[i]]) -> [1].
template <typename T> Var cross_entropy(Tape<T>& t, Var logits, std::vector<std::size_t> targets);
/// rows [n,d] placed on the diagonal pairs of an [n*n, d] pair tensor.
template <typename T> Var scatter_diagonal(Tape<T>& t, Var rows);
/// Σ of all entries -> [1].
template <typename T> Var sum(Tape<T>& t, Var x);

}  // namespace graphchain::tensor
