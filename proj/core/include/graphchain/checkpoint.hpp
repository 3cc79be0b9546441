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
#include <filesystem>
#include <optional>
#include <string>

#include "graphchain/chaining.hpp"

namespace graphchain {

inline constexpr const char* kCheckpointFormat = "graphchain-checkpoint";
inline constexpr int kCheckpointVersion = 1;

/// Loaded model. Tensors are held in double; an f32 model converts back to
/// float without loss.
struct Checkpoint {
  chaining::ChainModel<double> model;
  tensor::Precision precision = tensor::Precision::f64;
};

/// JSON with every parameter tensor, architecture, training metadata and
/// per-stage curves.
template <typename T>
std::string checkpoint_to_string(const chaining::ChainModel<T>& model);

/// Throws std::runtime_error on malformed input, a foreign format or version,
/// or when `expected_n_max` is given and differs from the stored rank table size.
Checkpoint checkpoint_from_string(const std::string& text,
                                  std::optional<std::size_t> expected_n_max = std::nullopt);

template <typename T>
void save_checkpoint(const std::filesystem::path& path, const chaining::ChainModel<T>& model);

Checkpoint load_checkpoint(const std::filesystem::path& path,
                           std::optional<std::size_t> expected_n_max = std::nullopt);

}  // namespace graphchain
