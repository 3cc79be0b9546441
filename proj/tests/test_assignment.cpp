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

#include <cmath>
#include <limits>
#include <stdexcept>

#include "graphchain/assignment.hpp"
#include "graphchain/rng.hpp"
#include "test_support.hpp"

namespace graphchain {
namespace {

using testing::lap_oracle;
using testing::random_matrix;
using testing::random_permutation;

TEST(LapMax, IdentityMatrix) {
  const auto r = lap_max(DenseMatrix::Identity(6, 6));
  EXPECT_EQ(r.permutation, Permutation::identity(6));
  EXPECT_EQ(r.total, 6.0);
}

TEST(LapMax, PermutationMatrixIsRecovered) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(30);
    const Permutation q = random_permutation(n, rng);
    const auto r = lap_max(q.matrix());
    EXPECT_EQ(r.permutation, q);
    EXPECT_EQ(r.total, static_cast<double>(n));
  }
}

TEST(LapMax, MatchesExhaustiveSearch) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(6);
    const DenseMatrix w = random_matrix(n, rng, -5.0, 5.0);
    const auto r = lap_max(w);
    EXPECT_EQ(r.total, assignment_total(w, r.permutation));
    EXPECT_NEAR(r.total, lap_oracle(w), 1e-12);
  }
}

TEST(LapMax, IntegerWeightsExact) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    DenseMatrix w(7, 7);
    for (Eigen::Index i = 0; i < 7; ++i) {
      for (Eigen::Index j = 0; j < 7; ++j) w(i, j) = static_cast<double>(rng.below(20));
    }
    EXPECT_EQ(lap_max(w).total, lap_oracle(w));
  }
}

TEST(LapMin, NegationWrapper) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const DenseMatrix c = random_matrix(6, rng);
    EXPECT_NEAR(lap_min(c).total, -lap_oracle(-c), 1e-12);
  }
}

TEST(LapMax, Errors) {
  EXPECT_THROW(lap_max(DenseMatrix(2, 3)), std::invalid_argument);
  DenseMatrix w = DenseMatrix::Zero(3, 3);
  w(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(lap_max(w), std::invalid_argument);
  w(1, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(lap_max(w), std::invalid_argument);
}

TEST(LapMax, EmptyMatrix) {
  const auto r = lap_max(DenseMatrix(0, 0));
  EXPECT_EQ(r.permutation.size(), 0u);
  EXPECT_EQ(r.total, 0.0);
}

TEST(Proj, EqualsLapPermutation) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const DenseMatrix s = random_matrix(6, rng);
    const auto p = proj(s);
    EXPECT_EQ(p, lap_max(s).permutation);
    EXPECT_NEAR(assignment_total(s, p), lap_oracle(s), 1e-12);
  }
}

TEST(Proj, SharpenedPermutation) {
  Rng rng(6);
  const Permutation q = random_permutation(20, rng);
  const DenseMatrix s = 50.0 * q.matrix() + random_matrix(20, rng, 0.0, 1.0);
  EXPECT_EQ(proj(s), q);
}

TEST(Proj, BarycenterIsDeterministic) {
  const DenseMatrix j = DenseMatrix::Constant(8, 8, 1.0 / 8.0);
  const auto p = proj(j);
  EXPECT_EQ(p, proj(j));
  EXPECT_TRUE(is_bijection(p.mapping()));
}

TEST(Proj, ScaleShiftInvariance) {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(12);
    const DenseMatrix s = random_matrix(n, rng);
    const double alpha = rng.uniform(0.1, 10.0);
    const double beta = rng.uniform(-5.0, 5.0);
    const DenseMatrix t = (alpha * s).array() + beta;
    // Ties have probability zero for continuous weights.
    EXPECT_EQ(proj(t), proj(s));
  }
}

TEST(DoublyStochastic, Check) {
  EXPECT_TRUE(is_doubly_stochastic(DenseMatrix::Constant(5, 5, 0.2)));
  EXPECT_TRUE(is_doubly_stochastic(Permutation({1, 0, 2}).matrix()));
  DenseMatrix m = DenseMatrix::Identity(3, 3);
  m(0, 0) = 0.9;
  EXPECT_FALSE(is_doubly_stochastic(m));
  m = DenseMatrix::Identity(2, 2);
  m(0, 0) = 1.5;
  m(0, 1) = -0.5;
  m(1, 0) = -0.5;
  m(1, 1) = 1.5;
  EXPECT_FALSE(is_doubly_stochastic(m));
}

}  // namespace
}  // namespace graphchain
