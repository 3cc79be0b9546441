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
#include <iosfwd>
#include <string>
#include <vector>

#include "graphchain/generators.hpp"

namespace graphchain {

inline constexpr const char* kDatasetMagic = "graphchain-dataset";
inline constexpr int kDatasetVersion = 1;

struct Dataset {
  GenParams params;
  std::vector<InstanceTriplet> instances;
};

/// Instances 0..count-1 of `params`, each from its own derived stream.
Dataset generate_dataset(const GenParams& params, std::size_t count, std::size_t threads = 1);

/// Line-oriented text:
///
///   graphchain-dataset 1
///   family erdos_renyi
///   n 50 / d 4 / p_noise 0.15 / rho 1 / alpha 0.1 / seed 7   (one key per line)
///   count 3
///   instance 0
///   a <edge count>        followed by "u v" lines
///   b <edge count>        followed by "u v" lines
///   planted p(0) ... p(n-1)
///   shared <common edges under planted>
///   end
///
/// Blank lines and lines starting with '#' are ignored on read.
void write_dataset(std::ostream& out, const Dataset& data);
Dataset read_dataset(std::istream& in);
void save_dataset(const std::filesystem::path& path, const Dataset& data);
Dataset load_dataset(const std::filesystem::path& path);

struct DatasetStats {
  double mean_edges_a = 0.0;
  double mean_edges_b = 0.0;
  double mean_shared = 0.0;
  double stddev_shared = 0.0;
};

DatasetStats compute_stats(const Dataset& data);

/// Shortest text that parses back to the same double.
std::string format_double(double v);

}  // namespace graphchain
