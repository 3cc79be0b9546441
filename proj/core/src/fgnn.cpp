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

#include "graphchain/fgnn.hpp"

#include <cmath>
#include <stdexcept>

#include "graphchain/rng.hpp"

namespace graphchain::fgnn {

using tensor::Shape;

std::string to_string(RankInjection r) {
  return r == RankInjection::readout ? "readout" : "readout_and_input";
}

RankInjection parse_rank_injection(const std::string& s) {
  if (s == "readout") return RankInjection::readout;
  if (s == "readout_and_input") return RankInjection::readout_and_input;
  throw std::invalid_argument("rank injection must be readout or readout_and_input");
}

void FgnnConfig::validate() const {
  if (feature_dim == 0) throw std::invalid_argument("feature_dim must be >= 1");
  if (mlp_hidden == 0) throw std::invalid_argument("mlp_hidden must be >= 1");
  if (use_ranks && n_max == 0) throw std::invalid_argument("rank encodings need n_max >= 1");
}

namespace {

template <typename T>
Parameter<T> uniform_param(Shape shape, double bound, Rng& rng) {
  Tensor<T> v(std::move(shape));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<T>(rng.uniform(-bound, bound));
  return Parameter<T>(std::move(v));
}

template <typename T>
Parameter<T> normal_param(Shape shape, Rng& rng, double stddev = 1.0) {
  Tensor<T> v(std::move(shape));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<T>(stddev * rng.normal());
  return Parameter<T>(std::move(v));
}

template <typename T>
Mlp<T> init_mlp(std::size_t in, std::size_t hidden, std::size_t hidden_layers,
                std::size_t out, Rng& rng) {
  Mlp<T> m;
  std::size_t width = in;
  for (std::size_t k = 0; k <= hidden_layers; ++k) {
    const std::size_t next = k == hidden_layers ? out : hidden;
    const double bound = 1.0 / std::sqrt(static_cast<double>(width));
    Linear<T> lin{uniform_param<T>({width, next}, bound, rng),
                  uniform_param<T>({next}, bound, rng)};
    m.linears.push_back(std::move(lin));
    if (k < hidden_layers) {
      m.norms.push_back({Parameter<T>(Tensor<T>({next}, T{1})),
                         Parameter<T>(Tensor<T>({next}, T{0}))});
    }
    width = next;
  }
  return m;
}

template <typename P, typename F>
void visit_mlp(const std::string& prefix, P& m, F& fn) {
  for (std::size_t k = 0; k < m.linears.size(); ++k) {
    fn(prefix + ".linear." + std::to_string(k) + ".weight", m.linears[k].weight);
    fn(prefix + ".linear." + std::to_string(k) + ".bias", m.linears[k].bias);
    if (k < m.norms.size()) {
      fn(prefix + ".norm." + std::to_string(k) + ".gamma", m.norms[k].gamma);
      fn(prefix + ".norm." + std::to_string(k) + ".beta", m.norms[k].beta);
    }
  }
}

template <typename P, typename F>
void visit_params(P& p, F& fn) {
  fn(std::string("embedding"), p.embedding);
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    const std::string prefix = "layers." + std::to_string(l);
    visit_mlp(prefix + ".m0", p.layers[l].m0, fn);
    visit_mlp(prefix + ".m1", p.layers[l].m1, fn);
  }
  if (p.config.use_ranks) {
    fn(std::string("rank_embedding"), p.rank_embedding);
    if (p.config.rank_injection == RankInjection::readout_and_input) {
      fn(std::string("rank_input_embedding"), p.rank_input_embedding);
    }
  }
}

}  // namespace

template <typename T>
FgnnParams<T> FgnnParams<T>::init(const FgnnConfig& config, Rng& rng) {
  config.validate();
  FgnnParams<T> p;
  p.config = config;
  const std::size_t d = config.feature_dim;
  p.embedding = normal_param<T>({2, d}, rng);
  for (std::size_t l = 0; l < config.num_layers; ++l) {
    PairLayer<T> layer;
    layer.m0 = init_mlp<T>(d, config.mlp_hidden, config.mlp_hidden_layers, d, rng);
    layer.m1 = init_mlp<T>(2 * d, config.mlp_hidden, config.mlp_hidden_layers, d, rng);
    p.layers.push_back(std::move(layer));
  }
  if (config.use_ranks) {
    const double rank_std = 1.0 / std::sqrt(static_cast<double>(d));
    p.rank_embedding = normal_param<T>({config.n_max, d}, rng, rank_std);
    if (config.rank_injection == RankInjection::readout_and_input) {
      p.rank_input_embedding = normal_param<T>({config.n_max, d}, rng);
    }
  }
  return p;
}

template <typename T>
void FgnnParams<T>::for_each(
    const std::function<void(const std::string&, Parameter<T>&)>& fn) {
  visit_params(*this, fn);
}

template <typename T>
void FgnnParams<T>::for_each(
    const std::function<void(const std::string&, const Parameter<T>&)>& fn) const {
  visit_params(*this, fn);
}

template <typename T>
std::size_t FgnnParams<T>::parameter_count() const {
  std::size_t count = 0;
  for_each([&](const std::string&, const Parameter<T>& p) { count += p.value.size(); });
  return count;
}

template <typename T>
void FgnnParams<T>::zero_grad() {
  for_each([](const std::string&, Parameter<T>& p) {
    if (p.grad.shape() != p.value.shape()) p.grad = Tensor<T>(p.value.shape());
    p.zero_grad();
  });
}

template <typename T>
template <typename U>
FgnnParams<U> FgnnParams<T>::cast() const {
  auto cast_param = [](const Parameter<T>& p) { return Parameter<U>(p.value.template cast<U>()); };
  auto cast_mlp = [&](const Mlp<T>& m) {
    Mlp<U> out;
    for (const auto& lin : m.linears) out.linears.push_back({cast_param(lin.weight), cast_param(lin.bias)});
    for (const auto& nrm : m.norms) out.norms.push_back({cast_param(nrm.gamma), cast_param(nrm.beta)});
    return out;
  };
  FgnnParams<U> out;
  out.config = config;
  out.embedding = cast_param(embedding);
  for (const auto& layer : layers) out.layers.push_back({cast_mlp(layer.m0), cast_mlp(layer.m1)});
  out.rank_embedding = cast_param(rank_embedding);
  out.rank_input_embedding = cast_param(rank_input_embedding);
  return out;
}

template <typename T>
Var embed_input(Tape<T>& t, const Graph& g, const FgnnParams<T>& p, const Ranking* rank) {
  const std::size_t n = g.size();
  if (p.config.use_ranks && n > p.config.n_max) {
    throw std::invalid_argument("graph with " + std::to_string(n) +
                                " nodes exceeds the model's n_max of " +
                                std::to_string(p.config.n_max));
  }
  std::vector<std::size_t> idx(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) idx[i * n + j] = g(i, j);
  }
  Var h = tensor::embedding(t, t.parameter(p.embedding), std::move(idx));
  if (p.config.use_ranks && p.config.rank_injection == RankInjection::readout_and_input) {
    if (rank == nullptr) throw std::invalid_argument("rank-aware embedding needs a ranking");
    Var rows = tensor::embedding(t, t.parameter(p.rank_input_embedding), rank->positions());
    h = tensor::add(t, h, tensor::scatter_diagonal(t, rows));
  }
  return h;
}

template <typename T>
Var mlp(Tape<T>& t, Var x, const Mlp<T>& m, T eps) {
  for (std::size_t k = 0; k < m.linears.size(); ++k) {
    x = tensor::matmul(t, x, t.parameter(m.linears[k].weight));
    x = tensor::add_row(t, x, t.parameter(m.linears[k].bias));
    if (k < m.norms.size()) {
      x = tensor::graph_norm(t, x, t.parameter(m.norms[k].gamma), t.parameter(m.norms[k].beta), eps);
      x = tensor::relu(t, x);
    }
  }
  return x;
}

template <typename T>
Var residual_layer(Tape<T>& t, Var h, const PairLayer<T>& layer, std::size_t n, T eps) {
  Var m0 = mlp(t, h, layer.m0, eps);
  Var agg = tensor::pair_matmul(t, h, m0, n);
  Var m1 = mlp(t, tensor::concat_last(t, h, agg), layer.m1, eps);
  return tensor::add(t, h, m1);
}

template <typename T>
Var readout(Tape<T>& t, Var h, std::size_t n) {
  const std::size_t d = t.value(h).dim(1);
  Var cube = tensor::reshape(t, h, Shape{n, n, d});
  return tensor::max_over_axis(t, cube, 1);
}

namespace {

template <typename T>
Var structural_features(Tape<T>& t, const Graph& g, const Ranking* rank, const FgnnParams<T>& p) {
  const std::size_t n = g.size();
  if (n == 0) throw std::invalid_argument("empty graph");
  const T eps = static_cast<T>(p.config.norm_eps);
  Var h = embed_input(t, g, p, rank);
  for (const auto& layer : p.layers) h = residual_layer(t, h, layer, n, eps);
  return readout(t, h, n);
}

}  // namespace

template <typename T>
Var forward_f(Tape<T>& t, const Graph& g, const FgnnParams<T>& p) {
  if (p.config.use_ranks) throw std::invalid_argument("forward_f called with rank-aware params");
  return structural_features(t, g, nullptr, p);
}

template <typename T>
Var forward_g(Tape<T>& t, const Graph& g, const Ranking& rank, const FgnnParams<T>& p) {
  if (!p.config.use_ranks) throw std::invalid_argument("forward_g needs rank-aware params");
  if (rank.size() != g.size()) throw std::invalid_argument("ranking size does not match graph");
  Var node = structural_features(t, g, &rank, p);
  Var pos = tensor::embedding(t, t.parameter(p.rank_embedding), rank.positions());
  return tensor::concat_last(t, node, pos);
}

template <typename T>
Var forward(Tape<T>& t, const Graph& g, const Ranking* rank, const FgnnParams<T>& p) {
  if (!p.config.use_ranks) return forward_f(t, g, p);
  if (rank == nullptr) throw std::invalid_argument("rank-aware network needs a ranking");
  return forward_g(t, g, *rank, p);
}

template <typename T>
Var similarity(Tape<T>& t, Var features_a, Var features_b) {
  return tensor::matmul_nt(t, features_a, features_b);
}

template <typename T>
Tensor<T> compute_features(const Graph& g, const Ranking* rank, const FgnnParams<T>& p) {
  Tape<T> t;
  t.set_grad_enabled(false);
  return t.value(forward(t, g, rank, p));
}

template <typename T>
Eigen::MatrixXd compute_similarity(const Graph& a, const Ranking* rank_a, const Graph& b,
                                   const Ranking* rank_b, const FgnnParams<T>& p) {
  if (a.size() != b.size()) throw std::invalid_argument("graphs differ in size");
  Tape<T> t;
  t.set_grad_enabled(false);
  Var fa = forward(t, a, rank_a, p);
  Var fb = forward(t, b, rank_b, p);
  const auto& s = t.value(similarity(t, fa, fb));
  return s.matrix().template cast<double>();
}

Eigen::MatrixXd similarity(const Eigen::MatrixXd& features_a, const Eigen::MatrixXd& features_b) {
  if (features_a.cols() != features_b.cols()) {
    throw std::invalid_argument("feature dimensions differ");
  }
  return features_a * features_b.transpose();
}

#define GRAPHCHAIN_INSTANTIATE_FGNN(T)                                                       \
  template struct FgnnParams<T>;                                                             \
  template Var embed_input<T>(Tape<T>&, const Graph&, const FgnnParams<T>&, const Ranking*); \
  template Var mlp<T>(Tape<T>&, Var, const Mlp<T>&, T);                                      \
  template Var residual_layer<T>(Tape<T>&, Var, const PairLayer<T>&, std::size_t, T);        \
  template Var readout<T>(Tape<T>&, Var, std::size_t);                                       \
  template Var forward_f<T>(Tape<T>&, const Graph&, const FgnnParams<T>&);                   \
  template Var forward_g<T>(Tape<T>&, const Graph&, const Ranking&, const FgnnParams<T>&);   \
  template Var forward<T>(Tape<T>&, const Graph&, const Ranking*, const FgnnParams<T>&);     \
  template Var similarity<T>(Tape<T>&, Var, Var);                                            \
  template Tensor<T> compute_features<T>(const Graph&, const Ranking*, const FgnnParams<T>&); \
  template Eigen::MatrixXd compute_similarity<T>(const Graph&, const Ranking*, const Graph&,  \
                                                 const Ranking*, const FgnnParams<T>&);

GRAPHCHAIN_INSTANTIATE_FGNN(float)
GRAPHCHAIN_INSTANTIATE_FGNN(double)

template FgnnParams<float> FgnnParams<double>::cast<float>() const;
template FgnnParams<double> FgnnParams<float>::cast<double>() const;
template FgnnParams<double> FgnnParams<double>::cast<double>() const;
template FgnnParams<float> FgnnParams<float>::cast<float>() const;

#undef GRAPHCHAIN_INSTANTIATE_FGNN

}  // namespace graphchain::fgnn
