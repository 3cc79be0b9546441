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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "graphchain/assignment.hpp"
#include "graphchain/chaining.hpp"
#include "graphchain/generators.hpp"
#include "graphchain/metrics.hpp"
#include "graphchain/relaxations.hpp"
#include "graphchain/rng.hpp"
#include "test_support.hpp"

namespace graphchain::chaining {
namespace {

using graphchain::testing::four_node_instance;
using graphchain::testing::random_graph;
using graphchain::testing::random_matrix;
using graphchain::testing::random_permutation;

std::vector<InstanceTriplet> make_set(double noise, std::size_t n, std::uint64_t first,
                                      std::uint64_t count, std::uint64_t seed = 3) {
  GenParams p;
  p.n = n;
  p.d = 3;
  p.p_noise = noise;
  p.seed = seed;
  std::vector<InstanceTriplet> out;
  for (std::uint64_t i = first; i < first + count; ++i) out.push_back(generate_instance(p, i));
  return out;
}

ChainTrainConfig tiny_config(std::size_t depth, std::size_t epochs) {
  ChainTrainConfig c;
  c.arch.feature_dim = 8;
  c.arch.mlp_hidden = 16;
  c.hp.learning_rate = 1e-3;
  c.hp.epochs = epochs;
  c.hp.seed = 7;
  c.depth = depth;
  return c;
}

class TrainedChain : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    train_ = new std::vector<InstanceTriplet>(make_set(0.1, 12, 0, 10));
    val_ = new std::vector<InstanceTriplet>(make_set(0.1, 12, 10, 3));
    test_ = new std::vector<InstanceTriplet>(make_set(0.1, 12, 13, 6));
    model_ = new ChainModel<double>(train_chain<double>(*train_, *val_, tiny_config(2, 3)));
  }
  static void TearDownTestSuite() {
    delete train_;
    delete val_;
    delete test_;
    delete model_;
  }
  static std::vector<InstanceTriplet>* train_;
  static std::vector<InstanceTriplet>* val_;
  static std::vector<InstanceTriplet>* test_;
  static ChainModel<double>* model_;
};

std::vector<InstanceTriplet>* TrainedChain::train_ = nullptr;
std::vector<InstanceTriplet>* TrainedChain::val_ = nullptr;
std::vector<InstanceTriplet>* TrainedChain::test_ = nullptr;
ChainModel<double>* TrainedChain::model_ = nullptr;

TEST(Loss, ConstantSimilarity) {
  EXPECT_NEAR(loss(DenseMatrix::Constant(4, 4, 0.7), Permutation::identity(4)), 4 * std::log(4.0),
              1e-12);
}

TEST(Loss, SharpSimilarityApproachesZero) {
  Rng rng(1);
  const Permutation p = random_permutation(6, rng);
  double previous = INFINITY;
  for (double m : {1.0, 5.0, 20.0, 50.0}) {
    const double l = loss(m * p.matrix(), p);
    EXPECT_LT(l, previous);
    previous = l;
  }
  EXPECT_LT(previous, 1e-18);
}

TEST(Loss, NonNegativeAndTapeAgrees) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix s = random_matrix(5, rng, -3, 3);
    const Permutation p = random_permutation(5, rng);
    const double l = loss(s, p);
    EXPECT_GE(l, 0.0);
    tensor::Tape<double> t;
    tensor::Tensor<double> st({5, 5});
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        st.at(i, j) = s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
    EXPECT_NEAR(t.value(loss(t, t.constant(st), p))[0], l, 1e-12);
  }
  EXPECT_THROW(loss(DenseMatrix::Zero(3, 3), Permutation::identity(4)), std::invalid_argument);
}

TEST(Loss, GradientMatchesFiniteDifferences) {
  Rng rng(3);
  const Permutation p = random_permutation(5, rng);
  tensor::Parameter<double> s(tensor::Tensor<double>({5, 5}));
  for (auto& v : s.value.storage()) v = rng.uniform(-2, 2);
  tensor::Tape<double> t;
  t.backward(loss(t, t.parameter(s), p));
  s.zero_grad();
  t.accumulate_grad(s);
  auto as_matrix = [&] {
    DenseMatrix m(5, 5);
    for (Eigen::Index i = 0; i < 5; ++i) {
      for (Eigen::Index j = 0; j < 5; ++j) {
        m(i, j) = s.value.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }
    }
    return m;
  };
  for (std::size_t k = 0; k < 25; ++k) {
    const double keep = s.value[k], h = 1e-6;
    s.value[k] = keep + h;
    const double up = loss(as_matrix(), p);
    s.value[k] = keep - h;
    const double down = loss(as_matrix(), p);
    s.value[k] = keep;
    const double numeric = (up - down) / (2 * h);
    EXPECT_LE(std::abs(numeric - s.grad[k]) / std::max(1.0, std::abs(numeric)), 1e-6);
  }
}

TEST(RankStep, FourNodeFromSimilarity) {
  const auto ex = four_node_instance();
  const auto r = rank_step(ex.a, ex.b, DenseMatrix(10.0 * ex.pi.matrix()));
  EXPECT_EQ(r.a, Ranking({0, 1, 2, 3}));
  EXPECT_EQ(r.b, Ranking({2, 0, 1, 3}));
}

TEST(RankStep, SharpPlantedSortsByDegree) {
  for (const auto& inst : make_set(0.0, 30, 0, 5)) {
    const auto r = rank_step(inst.graph_a, inst.graph_b_permuted, DenseMatrix(5.0 * inst.planted.matrix()));
    std::vector<std::size_t> expected(30);
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    const auto deg = inst.graph_a.degrees();
    std::stable_sort(expected.begin(), expected.end(),
                     [&](std::size_t x, std::size_t y) { return deg[x] > deg[y]; });
    EXPECT_EQ(r.a, Ranking(expected));
  }
}

TEST(RankStep, RandomSimilarityGivesConsistentRankings) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.below(15);
    const Graph a = random_graph(n, 0.3, rng), b = random_graph(n, 0.3, rng);
    const DenseMatrix s = random_matrix(n, rng);
    const auto r = rank_step(a, b, s);
    const Permutation p = proj(s);
    EXPECT_TRUE(is_bijection(r.a.order()));
    EXPECT_TRUE(is_bijection(r.b.order()));
    for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(r.b[k], p[r.a[k]]);
  }
  EXPECT_THROW(rank_step(Graph(3), Graph(3), DenseMatrix::Zero(4, 4)), std::invalid_argument);
}

TEST(Config, Validation) {
  InferConfig c;
  EXPECT_EQ(c.loop_cap, 100u);
  EXPECT_EQ(c.stop_metric, StopMetric::proj_nce);
  c.loop_cap = 2;
  EXPECT_THROW(c.validate(2), std::invalid_argument);
  EXPECT_NO_THROW(c.validate(1));
  EXPECT_EQ(parse_post_process("faq"), PostProcess::faq);
  EXPECT_THROW(parse_stop_metric("acc"), std::invalid_argument);
  ChainTrainConfig t;
  t.arch.use_ranks = true;
  t.arch.n_max = 4;
  EXPECT_THROW(t.validate(), std::invalid_argument);
}

TEST(Train, TinySmokeLossDecreases) {
  const auto train = make_set(0.0, 12, 0, 5);
  const auto val = make_set(0.0, 12, 5, 2);
  const auto m = train_chain<double>(train, val, tiny_config(0, 20));
  ASSERT_EQ(m.curves.size(), 1u);
  const auto& loss = m.curves[0].train_loss;
  ASSERT_EQ(loss.size(), 20u);
  for (std::size_t e = 1; e < loss.size(); ++e) EXPECT_LT(loss[e], loss[e - 1]) << "epoch " << e;
}

TEST(Train, ObserverSeesEveryEpoch) {
  const auto train = make_set(0.1, 10, 0, 3);
  const auto val = make_set(0.1, 10, 3, 2);
  auto cfg = tiny_config(2, 4);
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  const auto m = train_chain<double>(train, val, cfg, [&](std::size_t s, std::size_t e, double, double, double) {
    seen.emplace_back(s, e);
  });
  // Stages 0 and 1 run the full epochs, stage 2 half.
  EXPECT_EQ(seen.size(), 4u + 4u + 2u);
  ASSERT_EQ(m.curves.size(), 3u);
  EXPECT_EQ(m.curves[2].train_loss.size(), 2u);
  for (const auto& c : m.curves) {
    EXPECT_EQ(c.val_loss[c.best_epoch], *std::min_element(c.val_loss.begin(), c.val_loss.end()));
  }
  EXPECT_EQ(m.depth(), 2u);
  EXPECT_EQ(m.n_max(), 10u);
  EXPECT_NO_THROW(m.validate());
  EXPECT_EQ(m.meta.train_count, 3u);
}

TEST(Train, Errors) {
  const auto train = make_set(0.0, 10, 0, 2);
  EXPECT_THROW(train_chain<double>(train, {}, tiny_config(0, 1)), std::invalid_argument);
  auto cfg = tiny_config(1, 1);
  cfg.n_max = 5;
  EXPECT_THROW(train_chain<double>(train, train, cfg), std::invalid_argument);
  auto wild = tiny_config(0, 3);
  wild.hp.learning_rate = 1e200;
  EXPECT_THROW(train_chain<double>(train, train, wild), std::runtime_error);
}

TEST(Train, Deterministic) {
  const auto train = make_set(0.1, 10, 0, 3);
  const auto val = make_set(0.1, 10, 3, 2);
  const auto a = train_chain<double>(train, val, tiny_config(1, 2));
  const auto b = train_chain<double>(train, val, tiny_config(1, 2));
  EXPECT_EQ(a.curves[1].train_loss, b.curves[1].train_loss);
  EXPECT_EQ(a.g[0].rank_embedding.value, b.g[0].rank_embedding.value);
  EXPECT_EQ(a.f.layers[1].m1.linears[2].weight.value, b.f.layers[1].m1.linears[2].weight.value);
}

TEST_F(TrainedChain, DepthZeroIsPlainFgnn) {
  ChainModel<double> plain;
  plain.f = model_->f;
  for (const auto& inst : *test_) {
    InferConfig cfg;
    const auto r = infer_chain(inst.graph_a, inst.graph_b_permuted, plain, cfg);
    ASSERT_EQ(r.trace.size(), 1u);
    EXPECT_EQ(r.loop_count, 0u);
    const auto s0 = fgnn::compute_similarity(inst.graph_a, nullptr, inst.graph_b_permuted, nullptr, plain.f);
    EXPECT_EQ(r.permutation, proj(s0));
    EXPECT_EQ(r.similarity, s0);
  }
}

TEST_F(TrainedChain, TraceStructureAndMonotonicity) {
  for (StopMetric metric : {StopMetric::proj_nce, StopMetric::faq_nce}) {
    for (std::size_t cap : {3u, 4u, 100u}) {
      InferConfig cfg;
      cfg.stop_metric = metric;
      cfg.loop_cap = cap;
      for (const auto& inst : *test_) {
        const auto r = infer_chain(inst.graph_a, inst.graph_b_permuted, *model_, cfg);
        ASSERT_GE(r.trace.size(), 3u);
        EXPECT_EQ(r.trace[0].kind, StepKind::initial);
        EXPECT_EQ(r.trace[1].network, 1u);
        EXPECT_EQ(r.trace[2].network, 2u);
        std::size_t applications = 0, accepted_loops = 0;
        for (std::size_t k = 1; k < r.trace.size(); ++k) {
          ++applications;
          const auto& st = r.trace[k];
          if (st.kind != StepKind::loop) continue;
          const auto prev = metric == StopMetric::proj_nce ? r.trace[k - 1].proj_nce : r.trace[k - 1].faq_nce;
          const auto cur = metric == StopMetric::proj_nce ? st.proj_nce : st.faq_nce;
          if (st.accepted) {
            EXPECT_GT(cur, prev);
            ++accepted_loops;
          } else {
            EXPECT_LE(cur, prev);
            EXPECT_EQ(k + 1, r.trace.size());
          }
        }
        EXPECT_LE(applications, cap);
        EXPECT_EQ(accepted_loops, r.loop_count);
        if (r.trace.back().accepted) EXPECT_EQ(applications, std::max<std::size_t>(cap, 2));
      }
    }
  }
}

TEST_F(TrainedChain, NoLoopingStopsAfterChain) {
  InferConfig cfg;
  cfg.looping = false;
  const auto& inst = test_->front();
  const auto r = infer_chain(inst.graph_a, inst.graph_b_permuted, *model_, cfg);
  EXPECT_EQ(r.trace.size(), 3u);
  EXPECT_EQ(r.similarity, chain_similarity(inst.graph_a, inst.graph_b_permuted, *model_, 2));
  EXPECT_THROW(chain_similarity(inst.graph_a, inst.graph_b_permuted, *model_, 3), std::invalid_argument);
}

TEST_F(TrainedChain, FaqPostProcessing) {
  InferConfig cfg;
  cfg.post = PostProcess::faq;
  for (const auto& inst : *test_) {
    const auto r = infer_chain(inst.graph_a, inst.graph_b_permuted, *model_, cfg);
    const auto f = faq_from_similarity(inst.graph_a, inst.graph_b_permuted, r.similarity, cfg.faq);
    EXPECT_EQ(r.permutation, f.permutation);
    EXPECT_EQ(r.post_report.iterations, f.report.iterations);
  }
}

TEST_F(TrainedChain, RejectsOversizeGraph) {
  const auto big = make_set(0.0, 13, 0, 1).front();
  EXPECT_THROW(infer_chain(big.graph_a, big.graph_b_permuted, *model_), std::invalid_argument);
}

TEST_F(TrainedChain, ExtremeLoop) {
  const auto& inst = test_->front();
  for (std::size_t loops : {0u, 1u, 4u}) {
    const auto r = extreme_loop(inst.graph_a, inst.graph_b_permuted, model_->f, model_->g[0], loops);
    ASSERT_EQ(r.trace.size(), loops + 1);
    EXPECT_EQ(r.permutation, r.trace.back().faq);
    for (const auto& st : r.trace) {
      EXPECT_EQ(st.proj_nce, nce(inst.graph_a, inst.graph_b_permuted, st.proj));
      EXPECT_EQ(st.faq_nce, nce(inst.graph_a, inst.graph_b_permuted, st.faq));
    }
  }
  const auto zero = extreme_loop(inst.graph_a, inst.graph_b_permuted, model_->f, model_->g[0], 0);
  const auto s0 = fgnn::compute_similarity(inst.graph_a, nullptr, inst.graph_b_permuted, nullptr, model_->f);
  EXPECT_EQ(zero.trace[0].proj, proj(s0));
  EXPECT_THROW(extreme_loop(inst.graph_a, inst.graph_b_permuted, model_->g[0], model_->g[0], 1),
               std::invalid_argument);
}

TEST_F(TrainedChain, InferenceIsDeterministicAndPrecisionCastable) {
  const auto& inst = test_->back();
  const auto x = infer_chain(inst.graph_a, inst.graph_b_permuted, *model_);
  const auto y = infer_chain(inst.graph_a, inst.graph_b_permuted, *model_);
  EXPECT_EQ(x.permutation, y.permutation);
  EXPECT_EQ(x.similarity, y.similarity);
  const auto f32 = model_->cast<float>();
  EXPECT_EQ(f32.depth(), 2u);
  EXPECT_NO_THROW(infer_chain(inst.graph_a, inst.graph_b_permuted, f32));
}

}  // namespace
}  // namespace graphchain::chaining
