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
#include <limits>
#include <span>
#include <string>

#include "graphchain/tensor.hpp"

namespace graphchain::tensor {

enum class Precision { f32, f64 };
std::string to_string(Precision p);
Precision parse_precision(const std::string& s);

struct TrainConfig {
  double learning_rate = 1e-4;
  std::size_t scheduler_patience = 3;
  double scheduler_factor = 0.1;
  /// Epochs for f and g1; later stages use half unless later_epochs is set.
  std::size_t epochs = 20;
  std::size_t later_epochs = 0;
  /// Instances per optimiser step.
  std::size_t batch_size = 1;
  std::uint64_t seed = 0;
  Precision precision = Precision::f64;

  void validate() const;
  std::size_t epochs_for_stage(std::size_t stage) const;
};

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Standard Adam with bias correction. The step counter is shared by every
/// parameter passed to step().
class Adam {
 public:
  explicit Adam(AdamConfig cfg = {}) : cfg_(cfg) {}

  void set_learning_rate(double lr) { cfg_.learning_rate = lr; }
  double learning_rate() const { return cfg_.learning_rate; }
  std::uint64_t steps() const { return steps_; }

  /// Call once per optimiser step before update().
  void begin_step() { ++steps_; }
  template <typename T>
  void update(Parameter<T>& p) const;

 private:
  AdamConfig cfg_;
  std::uint64_t steps_ = 0;
};

/// Multiplies the learning rate by `factor` once `patience` consecutive
/// epochs pass without a strictly lower loss, then resets the count.
class ReduceOnPlateau {
 public:
  ReduceOnPlateau(double learning_rate, std::size_t patience, double factor)
      : lr_(learning_rate), patience_(patience), factor_(factor) {}

  /// Returns the learning rate to use for the next epoch.
  double step(double loss);
  double learning_rate() const { return lr_; }
  std::size_t reductions() const { return reductions_; }

 private:
  double lr_;
  std::size_t patience_;
  double factor_;
  double best_ = std::numeric_limits<double>::infinity();
  std::size_t bad_epochs_ = 0;
  std::size_t reductions_ = 0;
};

}  // namespace graphchain::tensor
