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

#include "graphchain/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace graphchain::tensor {

std::size_t shape_size(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

std::string shape_string(const Shape& shape) {
  std::string out = "[";
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (k) out += ", ";
    out += std::to_string(shape[k]);
  }
  return out + "]";
}

template <typename T>
Tensor<T>::Tensor(Shape shape, T fill)
    : shape_(std::move(shape)), data_(shape_size(shape_), fill) {}

template <typename T>
Tensor<T>::Tensor(Shape shape, std::vector<T> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != shape_size(shape_)) {
    throw std::invalid_argument("tensor data length does not match shape " +
                                shape_string(shape_));
  }
}

template <typename T>
typename Tensor<T>::MatrixMap Tensor<T>::matrix() {
  if (rank() == 1) return MatrixMap(data_.data(), 1, static_cast<Eigen::Index>(shape_[0]));
  if (rank() != 2) throw std::invalid_argument("matrix view needs rank <= 2");
  return MatrixMap(data_.data(), static_cast<Eigen::Index>(shape_[0]),
                   static_cast<Eigen::Index>(shape_[1]));
}

template <typename T>
typename Tensor<T>::ConstMatrixMap Tensor<T>::matrix() const {
  if (rank() == 1) return ConstMatrixMap(data_.data(), 1, static_cast<Eigen::Index>(shape_[0]));
  if (rank() != 2) throw std::invalid_argument("matrix view needs rank <= 2");
  return ConstMatrixMap(data_.data(), static_cast<Eigen::Index>(shape_[0]),
                        static_cast<Eigen::Index>(shape_[1]));
}

template <typename T>
Tensor<T> Tensor<T>::reshaped(Shape shape) const {
  if (shape_size(shape) != size()) {
    throw std::invalid_argument("cannot reshape " + shape_string(shape_) + " to " +
                                shape_string(shape));
  }
  return Tensor(std::move(shape), data_);
}

template <typename T>
void Tensor<T>::fill(T value) {
  std::fill(data_.begin(), data_.end(), value);
}

template <typename T>
bool Tensor<T>::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](T x) { return std::isfinite(x); });
}

template <typename T>
Parameter<T>::Parameter(Tensor<T> v)
    : value(std::move(v)),
      grad(value.shape()),
      first_moment(value.shape()),
      second_moment(value.shape()) {}

template <typename T>
void Parameter<T>::zero_grad() {
  grad.fill(T{0});
}

template class Tensor<float>;
template class Tensor<double>;
template struct Parameter<float>;
template struct Parameter<double>;

}  // namespace graphchain::tensor
