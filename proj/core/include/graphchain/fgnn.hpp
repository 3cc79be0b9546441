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
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "graphchain/autodiff.hpp"
#include "graphchain/graph.hpp"
#include "graphchain/tensor.hpp"

namespace graphchain {

class Rng;

namespace fgnn {

using tensor::Parameter;
using tensor::Tape;
using tensor::Tensor;
using tensor::Var;

enum class RankInjection {
  /// Rank encodings are concatenated to the pooled node features only.
  readout,
  /// Additionally, a second rank table is written on the diagonal pair
  /// states of the input embedding.
  readout_and_input,
};

std::string to_string(RankInjection r);
RankInjection parse_rank_injection(const std::string& s);

struct FgnnConfig {
  std::size_t feature_dim = 64;
  std::size_t num_layers = 2;
  std::size_t mlp_hidden = 256;
  std::size_t mlp_hidden_layers = 2;
  /// Largest graph the rank tables cover. Unused without rank encodings.
  std::size_t n_max = 0;
  /// false for f, true for every g.
  bool use_ranks = false;
  RankInjection rank_injection = RankInjection::readout;
  double norm_eps = 1e-5;

  void validate() const;
  /// Width of forward() output: feature_dim, or 2 * feature_dim with ranks.
  std::size_t output_dim() const { return use_ranks ? 2 * feature_dim : feature_dim; }
  friend bool operator==(const FgnnConfig&, const FgnnConfig&) = default;
};

template <typename T>
struct Linear {
  Parameter<T> weight;  // [in, out]
  Parameter<T> bias;    // [out]
};

template <typename T>
struct NormAffine {
  Parameter<T> gamma;
  Parameter<T> beta;
};

/// Linear -> (graph norm -> relu -> Linear) * hidden layers.
template <typename T>
struct Mlp {
  std::vector<Linear<T>> linears;
  std::vector<NormAffine<T>> norms;  // one per hidden layer
};

template <typename T>
struct PairLayer {
  Mlp<T> m0;  // d -> d
  Mlp<T> m1;  // 2d -> d
};

template <typename T>
struct FgnnParams {
  FgnnConfig config;
  Parameter<T> embedding;  // [2, d]: no-edge, edge
  std::vector<PairLayer<T>> layers;
  Parameter<T> rank_embedding;        // [n_max, d] with use_ranks
  Parameter<T> rank_input_embedding;  // [n_max, d] with readout_and_input

  /// Linear layers U(-1/sqrt(fan_in), 1/sqrt(fan_in)), input tables N(0, 1),
  /// readout rank table N(0, 1/d), norm scale 1 and shift 0.
  static FgnnParams init(const FgnnConfig& config, Rng& rng);

  /// Visits parameters in a fixed order with stable dotted names.
  void for_each(const std::function<void(const std::string&, Parameter<T>&)>& fn);
  void for_each(const std::function<void(const std::string&, const Parameter<T>&)>& fn) const;
  std::size_t parameter_count() const;
  void zero_grad();

  template <typename U>
  FgnnParams<U> cast() const;
};

inline constexpr const char* kInitScheme = "uniform_fan_in+normal_embedding";

/// h0[(i,j)] = E[A_ij]; plus the input rank table on the diagonal when the
/// config asks for it. Returns an [n*n, d] pair tensor.
template <typename T>
Var embed_input(Tape<T>& t, const Graph& g, const FgnnParams<T>& p,
                const Ranking* rank = nullptr);

/// h + m1(h, Σ_l h[i,l] ⊙ m0(h)[l,j]).
template <typename T>
Var residual_layer(Tape<T>& t, Var h, const PairLayer<T>& layer, std::size_t n, T eps);

template <typename T>
Var mlp(Tape<T>& t, Var x, const Mlp<T>& m, T eps);

/// node_i = max_j h[(i,j)] -> [n, d].
template <typename T>
Var readout(Tape<T>& t, Var h, std::size_t n);

/// f(A): embed -> layers -> readout, [n, d].
template <typename T>
Var forward_f(Tape<T>& t, const Graph& g, const FgnnParams<T>& p);

/// g(A, r): readout features concatenated with R[position of node], [n, 2d].
template <typename T>
Var forward_g(Tape<T>& t, const Graph& g, const Ranking& rank, const FgnnParams<T>& p);

/// forward_f or forward_g depending on config.use_ranks.
template <typename T>
Var forward(Tape<T>& t, const Graph& g, const Ranking* rank, const FgnnParams<T>& p);

/// F_A F_B^T.
template <typename T>
Var similarity(Tape<T>& t, Var features_a, Var features_b);

/// Gradient-free evaluation of features.
template <typename T>
Tensor<T> compute_features(const Graph& g, const Ranking* rank, const FgnnParams<T>& p);

/// Gradient-free S = F_A F_B^T as a double matrix.
template <typename T>
Eigen::MatrixXd compute_similarity(const Graph& a, const Ranking* rank_a, const Graph& b,
                                   const Ranking* rank_b, const FgnnParams<T>& p);

Eigen::MatrixXd similarity(const Eigen::MatrixXd& features_a, const Eigen::MatrixXd& features_b);

}  // namespace fgnn
}  // namespace graphchain
