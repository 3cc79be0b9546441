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

#include "graphchain/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace graphchain::tensor {

std::string to_string(Precision p) { return p == Precision::f32 ? "f32" : "f64"; }

Precision parse_precision(const std::string& s) {
  if (s == "f32") return Precision::f32;
  if (s == "f64") return Precision::f64;
  throw std::invalid_argument("precision must be f32 or f64, got '" + s + "'");
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
  if (!(scheduler_factor > 0.0 && scheduler_factor < 1.0)) {
    throw std::invalid_argument("scheduler_factor must be in (0, 1)");
  }
  if (epochs == 0) throw std::invalid_argument("epochs must be >= 1");
  if (batch_size == 0) throw std::invalid_argument("batch_size must be >= 1");
}

std::size_t TrainConfig::epochs_for_stage(std::size_t stage) const {
  if (stage <= 1) return epochs;
  if (later_epochs > 0) return later_epochs;
  return std::max<std::size_t>(1, epochs / 2);
}

template <typename T>
void Adam::update(Parameter<T>& p) const {
  const double b1 = cfg_.beta1, b2 = cfg_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
  for (std::size_t i = 0; i < p.value.size(); ++i) {
    const double g = p.grad[i];
    const double m = b1 * p.first_moment[i] + (1.0 - b1) * g;
    const double v = b2 * p.second_moment[i] + (1.0 - b2) * g * g;
    p.first_moment[i] = static_cast<T>(m);
    p.second_moment[i] = static_cast<T>(v);
    const double step = cfg_.learning_rate * (m / c1) / (std::sqrt(v / c2) + cfg_.eps);
    p.value[i] = static_cast<T>(p.value[i] - step);
  }
}

template void Adam::update<float>(Parameter<float>&) const;
template void Adam::update<double>(Parameter<double>&) const;

double ReduceOnPlateau::step(double loss) {
  if (!std::isfinite(loss)) throw std::invalid_argument("scheduler received a non-finite loss");
  if (loss < best_) {
    best_ = loss;
    bad_epochs_ = 0;
  } else if (++bad_epochs_ >= patience_) {
    lr_ *= factor_;
    ++reductions_;
    bad_epochs_ = 0;
  }
  return lr_;
}

}  // namespace graphchain::tensor
