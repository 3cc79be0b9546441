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

#include "graphchain/chaining.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "graphchain/rng.hpp"

namespace graphchain::chaining {

namespace {

void require_square(const DenseMatrix& s, std::size_t n, const char* what) {
  if (s.rows() != static_cast<Eigen::Index>(n) || s.cols() != s.rows()) {
    throw std::invalid_argument(std::string(what) + ": similarity is " +
                                std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                                ", expected " + std::to_string(n) + "x" + std::to_string(n));
  }
}

std::vector<std::size_t> targets_of(const Permutation& p) {
  return {p.mapping().begin(), p.mapping().end()};
}

}  // namespace

double loss(const DenseMatrix& s, const Permutation& p_star) {
  require_square(s, p_star.size(), "loss");
  double total = 0.0;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    const double top = s.row(i).maxCoeff();
    const double z = (s.row(i).array() - top).exp().sum();
    total += top + std::log(z) - s(i, static_cast<Eigen::Index>(p_star[static_cast<std::size_t>(i)]));
  }
  return total;
}

template <typename T>
tensor::Var loss(tensor::Tape<T>& t, tensor::Var s, const Permutation& p_star) {
  const auto& v = t.value(s);
  if (v.rank() != 2 || v.dim(0) != p_star.size() || v.dim(1) != p_star.size()) {
    throw std::invalid_argument("loss: similarity shape " + tensor::shape_string(v.shape()) +
                                " does not match permutation of size " +
                                std::to_string(p_star.size()));
  }
  return tensor::cross_entropy(t, s, targets_of(p_star));
}

RankingPair rank_step(const Graph& a, const Graph& b, const Permutation& p) {
  const auto scores = node_scores(a, b, p);
  return ranking_from_scores(scores, p);
}

RankingPair rank_step(const Graph& a, const Graph& b, const DenseMatrix& s) {
  if (a.size() != b.size()) throw std::invalid_argument("rank_step: graphs differ in size");
  require_square(s, a.size(), "rank_step");
  return rank_step(a, b, proj(s));
}

template <typename T>
void ChainModel<T>::validate() const {
  if (f.config.use_ranks) throw std::invalid_argument("f must not use rank encodings");
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto& c = g[k].config;
    if (!c.use_ranks) throw std::invalid_argument("g" + std::to_string(k + 1) + " lacks rank encodings");
    if (c.feature_dim != f.config.feature_dim) {
      throw std::invalid_argument("g" + std::to_string(k + 1) + " feature_dim differs from f");
    }
    if (c != g.front().config) throw std::invalid_argument("g networks have different shapes");
  }
}

template <typename T>
template <typename U>
ChainModel<U> ChainModel<T>::cast() const {
  ChainModel<U> out;
  out.f = f.template cast<U>();
  for (const auto& gk : g) out.g.push_back(gk.template cast<U>());
  out.meta = meta;
  out.curves = curves;
  return out;
}

void ChainTrainConfig::validate() const {
  hp.validate();
  arch.validate();
  if (arch.use_ranks) throw std::invalid_argument("arch describes f and must not use ranks");
}

namespace {

template <typename T>
DenseMatrix similarity_of(const Graph& a, const Graph& b, const FgnnParams<T>& net,
                          const RankingPair* ranks) {
  if (ranks == nullptr) return fgnn::compute_similarity(a, nullptr, b, nullptr, net);
  return fgnn::compute_similarity(a, &ranks->a, b, &ranks->b, net);
}

/// S after f and the given g networks, without looping.
template <typename T>
DenseMatrix prefix_similarity(const Graph& a, const Graph& b, const FgnnParams<T>& f,
                              const std::vector<FgnnParams<T>>& g, std::size_t count) {
  DenseMatrix s = similarity_of(a, b, f, nullptr);
  for (std::size_t k = 0; k < count; ++k) {
    const RankingPair ranks = rank_step(a, b, s);
    s = similarity_of(a, b, g[k], &ranks);
  }
  return s;
}

template <typename T>
double instance_loss_and_grad(const InstanceTriplet& inst, const RankingPair* ranks,
                              FgnnParams<T>& net, T weight) {
  tensor::Tape<T> t;
  const Graph& a = inst.graph_a;
  const Graph& b = inst.graph_b_permuted;
  tensor::Var fa = fgnn::forward(t, a, ranks ? &ranks->a : nullptr, net);
  tensor::Var fb = fgnn::forward(t, b, ranks ? &ranks->b : nullptr, net);
  tensor::Var l = loss(t, fgnn::similarity(t, fa, fb), inst.planted);
  const double value = static_cast<double>(t.value(l)[0]);
  if (!std::isfinite(value)) return value;
  t.backward(tensor::scale(t, l, weight));
  net.for_each([&](const std::string&, tensor::Parameter<T>& p) { t.accumulate_grad(p); });
  return value;
}

struct Evaluation {
  double loss = 0.0;
  double acc = 0.0;
};

template <typename T>
Evaluation evaluate(const std::vector<InstanceTriplet>& data,
                    const std::vector<RankingPair>& ranks, const FgnnParams<T>& net) {
  Evaluation e;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& inst = data[i];
    const DenseMatrix s = similarity_of(inst.graph_a, inst.graph_b_permuted, net,
                                        ranks.empty() ? nullptr : &ranks[i]);
    e.loss += loss(s, inst.planted);
    e.acc += acc(proj(s), inst.planted);
  }
  e.loss /= static_cast<double>(data.size());
  e.acc /= static_cast<double>(data.size());
  return e;
}

template <typename T>
std::vector<RankingPair> stage_rankings(const std::vector<InstanceTriplet>& data,
                                        const FgnnParams<T>& f,
                                        const std::vector<FgnnParams<T>>& g) {
  std::vector<RankingPair> out;
  out.reserve(data.size());
  for (const auto& inst : data) {
    const DenseMatrix s = prefix_similarity(inst.graph_a, inst.graph_b_permuted, f, g, g.size());
    out.push_back(rank_step(inst.graph_a, inst.graph_b_permuted, s));
  }
  return out;
}

template <typename T>
StageCurve train_stage(std::size_t stage, FgnnParams<T>& net,
                       const std::vector<InstanceTriplet>& train,
                       const std::vector<InstanceTriplet>& val,
                       const std::vector<RankingPair>& train_ranks,
                       const std::vector<RankingPair>& val_ranks, const TrainConfig& hp,
                       const TrainObserver& observer) {
  StageCurve curve;
  tensor::Adam adam({hp.learning_rate, 0.9, 0.999, 1e-8});
  tensor::ReduceOnPlateau scheduler(hp.learning_rate, hp.scheduler_patience,
                                    hp.scheduler_factor);
  Rng order_rng = Rng::derive(hp.seed, 1000 + stage);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  FgnnParams<T> best = net;
  double best_val = std::numeric_limits<double>::infinity();
  const std::size_t epochs = hp.epochs_for_stage(stage);

  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    order_rng.shuffle(order.begin(), order.end());
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += hp.batch_size) {
      const std::size_t stop = std::min(order.size(), start + hp.batch_size);
      net.zero_grad();
      const T weight = static_cast<T>(1.0 / static_cast<double>(stop - start));
      for (std::size_t k = start; k < stop; ++k) {
        const std::size_t idx = order[k];
        const double l = instance_loss_and_grad(
            train[idx], train_ranks.empty() ? nullptr : &train_ranks[idx], net, weight);
        if (!std::isfinite(l)) {
          std::ostringstream msg;
          msg << "non-finite training loss at stage " << stage << ", epoch " << epoch
              << ", instance " << idx << ", learning rate " << adam.learning_rate();
          throw std::runtime_error(msg.str());
        }
        epoch_loss += l;
      }
      adam.begin_step();
      net.for_each([&](const std::string&, tensor::Parameter<T>& p) { adam.update(p); });
    }
    epoch_loss /= static_cast<double>(train.size());

    const Evaluation v = evaluate(val, val_ranks, net);
    if (!std::isfinite(v.loss)) {
      std::ostringstream msg;
      msg << "non-finite validation loss at stage " << stage << ", epoch " << epoch;
      throw std::runtime_error(msg.str());
    }
    curve.train_loss.push_back(epoch_loss);
    curve.val_loss.push_back(v.loss);
    curve.val_acc.push_back(v.acc);
    curve.learning_rate.push_back(adam.learning_rate());
    if (v.loss < best_val) {
      best_val = v.loss;
      best = net;
      curve.best_epoch = epoch;
    }
    adam.set_learning_rate(scheduler.step(v.loss));
    if (observer) observer(stage, epoch, epoch_loss, v.loss, v.acc);
  }
  net = std::move(best);
  return curve;
}

double mean_degree(const std::vector<InstanceTriplet>& data) {
  double total = 0.0;
  for (const auto& inst : data) {
    total += 2.0 * static_cast<double>(inst.graph_a.edge_count()) /
             static_cast<double>(inst.graph_a.size());
  }
  return total / static_cast<double>(data.size());
}

}  // namespace

template <typename T>
ChainModel<T> train_chain(const std::vector<InstanceTriplet>& train,
                          const std::vector<InstanceTriplet>& val, const ChainTrainConfig& cfg,
                          const TrainObserver& observer) {
  cfg.validate();
  if (train.empty() || val.empty()) {
    throw std::invalid_argument("training needs nonempty train and validation sets");
  }
  std::size_t largest = 0;
  for (const auto* set : {&train, &val}) {
    for (const auto& inst : *set) largest = std::max(largest, inst.graph_a.size());
  }
  const std::size_t n_max = cfg.n_max == 0 ? largest : cfg.n_max;
  if (cfg.depth > 0 && largest > n_max) {
    throw std::invalid_argument("dataset has graphs with " + std::to_string(largest) +
                                " nodes but n_max is " + std::to_string(n_max));
  }

  ChainModel<T> m;
  m.meta.family = train.front().params.family;
  m.meta.noise = train.front().params.p_noise;
  m.meta.mean_degree = mean_degree(train);
  m.meta.train_count = train.size();
  m.meta.val_count = val.size();
  m.meta.hp = cfg.hp;

  Rng f_rng = Rng::derive(cfg.hp.seed, 0);
  m.f = FgnnParams<T>::init(cfg.arch, f_rng);
  m.curves.push_back(train_stage<T>(0, m.f, train, val, {}, {}, cfg.hp, observer));

  FgnnConfig g_arch = cfg.arch;
  g_arch.use_ranks = true;
  g_arch.n_max = n_max;
  g_arch.rank_injection = cfg.rank_injection;
  for (std::size_t k = 1; k <= cfg.depth; ++k) {
    const auto train_ranks = stage_rankings(train, m.f, m.g);
    const auto val_ranks = stage_rankings(val, m.f, m.g);
    FgnnParams<T> net;
    if (k == 1) {
      Rng g_rng = Rng::derive(cfg.hp.seed, 1);
      net = FgnnParams<T>::init(g_arch, g_rng);
    } else {
      net = m.g.back();
    }
    m.curves.push_back(
        train_stage<T>(k, net, train, val, train_ranks, val_ranks, cfg.hp, observer));
    m.g.push_back(std::move(net));
  }
  return m;
}

std::string to_string(StopMetric m) { return m == StopMetric::proj_nce ? "proj_nce" : "faq_nce"; }
std::string to_string(PostProcess p) { return p == PostProcess::proj ? "proj" : "faq"; }

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::initial: return "initial";
    case StepKind::chain: return "chain";
    case StepKind::loop: return "loop";
  }
  return "unknown";
}

StopMetric parse_stop_metric(const std::string& s) {
  if (s == "proj_nce") return StopMetric::proj_nce;
  if (s == "faq_nce") return StopMetric::faq_nce;
  throw std::invalid_argument("stop metric must be proj_nce or faq_nce, got '" + s + "'");
}

PostProcess parse_post_process(const std::string& s) {
  if (s == "proj") return PostProcess::proj;
  if (s == "faq") return PostProcess::faq;
  throw std::invalid_argument("post-processing must be proj or faq, got '" + s + "'");
}

void InferConfig::validate(std::size_t depth) const {
  faq.validate();
  if (loop_cap < depth + 1) {
    throw std::invalid_argument("loop_cap " + std::to_string(loop_cap) +
                                " must be at least depth + 1 = " + std::to_string(depth + 1));
  }
}

namespace {

struct Scored {
  DenseMatrix s;
  InferStep step;
  Permutation proj_p;
};

Scored score(DenseMatrix s, const Graph& a, const Graph& b, StepKind kind, std::size_t network,
             const FwConfig& faq_cfg) {
  Scored out;
  out.proj_p = proj(s);
  out.step.kind = kind;
  out.step.network = network;
  out.step.proj_nce = nce(a, b, out.proj_p);
  const FaqResult f = faq(a, b, out.proj_p, faq_cfg);
  out.step.faq_nce = nce(a, b, f.permutation);
  out.step.faq_iterations = f.report.iterations;
  out.s = std::move(s);
  return out;
}

std::size_t metric(const InferStep& step, StopMetric m) {
  return m == StopMetric::proj_nce ? step.proj_nce : step.faq_nce;
}

void require_fits(const Graph& a, const Graph& b, std::size_t n_max) {
  if (a.size() != b.size()) throw std::invalid_argument("graphs differ in size");
  if (n_max != 0 && a.size() > n_max) {
    throw std::invalid_argument("graph with " + std::to_string(a.size()) +
                                " nodes exceeds the model's n_max of " + std::to_string(n_max));
  }
}

}  // namespace

template <typename T>
DenseMatrix chain_similarity(const Graph& a, const Graph& b, const ChainModel<T>& m,
                             std::size_t stages) {
  require_fits(a, b, m.n_max());
  if (stages > m.depth()) throw std::invalid_argument("requested more stages than the chain has");
  return prefix_similarity(a, b, m.f, m.g, stages);
}

template <typename T>
InferResult infer_chain(const Graph& a, const Graph& b, const ChainModel<T>& m,
                        const InferConfig& cfg) {
  cfg.validate(m.depth());
  require_fits(a, b, m.n_max());

  InferResult r;
  Scored current = score(similarity_of(a, b, m.f, nullptr), a, b, StepKind::initial, 0, cfg.faq);
  r.trace.push_back(current.step);
  std::size_t applications = 0;
  for (std::size_t k = 0; k < m.depth(); ++k) {
    const RankingPair ranks = rank_step(a, b, current.proj_p);
    current = score(similarity_of(a, b, m.g[k], &ranks), a, b, StepKind::chain, k + 1, cfg.faq);
    r.trace.push_back(current.step);
    ++applications;
  }
  if (m.depth() > 0 && cfg.looping) {
    const auto& last = m.g.back();
    while (applications < cfg.loop_cap) {
      const RankingPair ranks = rank_step(a, b, current.proj_p);
      Scored next =
          score(similarity_of(a, b, last, &ranks), a, b, StepKind::loop, m.depth(), cfg.faq);
      ++applications;
      if (metric(next.step, cfg.stop_metric) > metric(current.step, cfg.stop_metric)) {
        r.trace.push_back(next.step);
        ++r.loop_count;
        current = std::move(next);
      } else {
        next.step.accepted = false;
        r.trace.push_back(next.step);
        break;
      }
    }
  }

  if (cfg.post == PostProcess::proj) {
    r.permutation = current.proj_p;
  } else {
    FaqResult f = faq_from_similarity(a, b, current.s, cfg.faq);
    r.permutation = std::move(f.permutation);
    r.post_report = std::move(f.report);
  }
  r.similarity = std::move(current.s);
  return r;
}

template <typename T>
ExtremeResult extreme_loop(const Graph& a, const Graph& b, const FgnnParams<T>& f,
                           const FgnnParams<T>& g1, std::size_t n_max_loops,
                           const FwConfig& faq_cfg) {
  faq_cfg.validate();
  require_fits(a, b, g1.config.n_max);
  if (f.config.use_ranks || !g1.config.use_ranks) {
    throw std::invalid_argument("extreme_loop needs f without and g1 with rank encodings");
  }
  ExtremeResult r;
  DenseMatrix s = similarity_of(a, b, f, nullptr);
  for (std::size_t step = 0;; ++step) {
    ExtremeStep e;
    e.proj = proj(s);
    e.proj_nce = nce(a, b, e.proj);
    FaqResult fr = faq(a, b, e.proj, faq_cfg);
    e.faq = std::move(fr.permutation);
    e.faq_nce = nce(a, b, e.faq);
    e.faq_iterations = fr.report.iterations;
    const RankingPair ranks = rank_step(a, b, e.proj);
    r.trace.push_back(std::move(e));
    if (step == n_max_loops) break;
    s = similarity_of(a, b, g1, &ranks);
  }
  r.permutation = r.trace.back().faq;
  return r;
}

#define GRAPHCHAIN_INSTANTIATE_CHAIN(T)                                                      \
  template tensor::Var loss<T>(tensor::Tape<T>&, tensor::Var, const Permutation&);           \
  template struct ChainModel<T>;                                                            \
  template ChainModel<T> train_chain<T>(const std::vector<InstanceTriplet>&,                \
                                        const std::vector<InstanceTriplet>&,                \
                                        const ChainTrainConfig&, const TrainObserver&);     \
  template InferResult infer_chain<T>(const Graph&, const Graph&, const ChainModel<T>&,     \
                                      const InferConfig&);                                  \
  template DenseMatrix chain_similarity<T>(const Graph&, const Graph&, const ChainModel<T>&, \
                                           std::size_t);                                    \
  template ExtremeResult extreme_loop<T>(const Graph&, const Graph&, const FgnnParams<T>&,  \
                                         const FgnnParams<T>&, std::size_t, const FwConfig&);

GRAPHCHAIN_INSTANTIATE_CHAIN(float)
GRAPHCHAIN_INSTANTIATE_CHAIN(double)

template ChainModel<float> ChainModel<double>::cast<float>() const;
template ChainModel<double> ChainModel<float>::cast<double>() const;
template ChainModel<double> ChainModel<double>::cast<double>() const;
template ChainModel<float> ChainModel<float>::cast<float>() const;

#undef GRAPHCHAIN_INSTANTIATE_CHAIN

}  // namespace graphchain::chaining
