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
#include <optional>
#include <string>
#include <vector>

#include "graphchain/assignment.hpp"
#include "graphchain/fgnn.hpp"
#include "graphchain/generators.hpp"
#include "graphchain/metrics.hpp"
#include "graphchain/optim.hpp"
#include "graphchain/relaxations.hpp"

namespace graphchain::chaining {

using fgnn::FgnnConfig;
using fgnn::FgnnParams;
using tensor::Precision;
using tensor::TrainConfig;

/// Cross-entropy of the row softmax of s against p_star:
/// -Σ_i log softmax(s)_{i, p_star(i)}.
double loss(const DenseMatrix& s, const Permutation& p_star);

/// Same loss recorded on a tape.
template <typename T>
tensor::Var loss(tensor::Tape<T>& t, tensor::Var s, const Permutation& p_star);

/// Rankings induced by proj(s): nodes of A by decreasing matched-edge score
/// and their images in B.
RankingPair rank_step(const Graph& a, const Graph& b, const DenseMatrix& s);
RankingPair rank_step(const Graph& a, const Graph& b, const Permutation& p);

struct StageCurve {
  std::vector<double> train_loss;
  std::vector<double> val_loss;
  std::vector<double> val_acc;
  std::vector<double> learning_rate;
  std::size_t best_epoch = 0;
};

struct TrainMeta {
  Family family = Family::erdos_renyi;
  double noise = 0.0;
  double mean_degree = 0.0;
  std::size_t train_count = 0;
  std::size_t val_count = 0;
  TrainConfig hp;
};

/// Trained sequence f, g1, ..., gL.
template <typename T>
struct ChainModel {
  FgnnParams<T> f;
  std::vector<FgnnParams<T>> g;
  TrainMeta meta;
  /// One curve per stage; stage 0 is f.
  std::vector<StageCurve> curves;

  std::size_t depth() const { return g.size(); }
  /// Largest graph the rank tables accept; 0 for L = 0 (no limit).
  std::size_t n_max() const { return g.empty() ? 0 : g.front().config.n_max; }
  void validate() const;

  template <typename U>
  ChainModel<U> cast() const;
};

struct ChainTrainConfig {
  TrainConfig hp;
  /// Architecture of f; g networks share it with rank encodings enabled.
  FgnnConfig arch;
  std::size_t depth = 0;
  /// Rank table size; 0 means the largest n in the data.
  std::size_t n_max = 0;
  fgnn::RankInjection rank_injection = fgnn::RankInjection::readout;

  void validate() const;
};

/// Progress callback: (stage, epoch, train loss, val loss, val acc).
using TrainObserver =
    std::function<void(std::size_t, std::size_t, double, double, double)>;

/// Trains f on loss(S0, π*), then each g(k) on loss(S(k), π*) with rankings
/// from the frozen prefix. g1 starts from a fresh initialisation and every
/// later g(k) from the weights of g(k-1). Each stage keeps the parameters of
/// its lowest validation loss epoch. Throws std::runtime_error on a
/// non-finite loss.
template <typename T>
ChainModel<T> train_chain(const std::vector<InstanceTriplet>& train,
                          const std::vector<InstanceTriplet>& val,
                          const ChainTrainConfig& cfg, const TrainObserver& observer = {});

enum class StopMetric { proj_nce, faq_nce };
enum class PostProcess { proj, faq };

std::string to_string(StopMetric m);
std::string to_string(PostProcess p);
StopMetric parse_stop_metric(const std::string& s);
PostProcess parse_post_process(const std::string& s);

struct InferConfig {
  /// Upper bound on applications of g networks (chain plus loops).
  std::size_t loop_cap = 100;
  StopMetric stop_metric = StopMetric::proj_nce;
  PostProcess post = PostProcess::proj;
  /// Continue with g(L) after the chain while the stop metric improves.
  bool looping = true;
  FwConfig faq = FwConfig::faq_defaults();

  void validate(std::size_t depth) const;
};

enum class StepKind { initial, chain, loop };
std::string to_string(StepKind k);

struct InferStep {
  StepKind kind = StepKind::initial;
  /// 0 for f, l for g(l).
  std::size_t network = 0;
  std::size_t proj_nce = 0;
  std::size_t faq_nce = 0;
  /// Direction steps of the FAQ extraction.
  std::size_t faq_iterations = 0;
  /// False only for the final rejected loop step.
  bool accepted = true;
};

struct InferResult {
  Permutation permutation;
  /// Similarity that produced `permutation`.
  DenseMatrix similarity;
  std::vector<InferStep> trace;
  /// Accepted loop steps beyond the chain.
  std::size_t loop_count = 0;
  /// FAQ report of the final extraction; iterations = 0 for proj.
  FwReport post_report;
};

template <typename T>
InferResult infer_chain(const Graph& a, const Graph& b, const ChainModel<T>& m,
                        const InferConfig& cfg = {});

/// Similarity after the first `stages` networks with no looping (S(stages)).
template <typename T>
DenseMatrix chain_similarity(const Graph& a, const Graph& b, const ChainModel<T>& m,
                             std::size_t stages);

struct ExtremeStep {
  Permutation proj;
  std::size_t proj_nce = 0;
  Permutation faq;
  std::size_t faq_nce = 0;
  std::size_t faq_iterations = 0;
};

struct ExtremeResult {
  /// FAQ extraction of the last step.
  Permutation permutation;
  /// n_max_loops + 1 entries; entry 0 is f alone.
  std::vector<ExtremeStep> trace;
};

/// Applies g1 n_max_loops times after f with no stopping rule.
template <typename T>
ExtremeResult extreme_loop(const Graph& a, const Graph& b, const FgnnParams<T>& f,
                           const FgnnParams<T>& g1, std::size_t n_max_loops,
                           const FwConfig& faq_cfg = FwConfig::faq_defaults());

}  // namespace graphchain::chaining
