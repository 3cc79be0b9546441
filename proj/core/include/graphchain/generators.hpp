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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "graphchain/graph.hpp"

namespace graphchain {

class Rng;

enum class Family { bernoulli, erdos_renyi, regular };

std::string_view to_string(Family f);
/// Accepts "bernoulli", "erdos_renyi" (or "er"), "regular".
Family parse_family(std::string_view s);

struct GenParams {
  Family family = Family::erdos_renyi;
  std::size_t n = 50;
  /// Mean degree for ER, exact degree for regular. Unused by bernoulli.
  double d = 4.0;
  double p_noise = 0.0;
  /// Correlation for the bernoulli family.
  double rho = 1.0;
  /// Λ entries are drawn uniformly from [alpha, 1 - alpha].
  double alpha = 0.1;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

/// Correlated pair (A, B') with B' = B relabelled by `planted`.
struct InstanceTriplet {
  Graph graph_a;
  Graph graph_b_permuted;
  Permutation planted;
  GenParams params;
};

/// Aligned, not yet permuted pair.
struct CorrelatedPair {
  Graph a;
  Graph b;
};

CorrelatedPair sample_bernoulli_pair(const GenParams& params, Rng& rng);
CorrelatedPair sample_er_pair(const GenParams& params, Rng& rng);
CorrelatedPair sample_regular_pair(const GenParams& params, Rng& rng);

/// Configuration-model sampler with incremental rejection of self-loops and
/// multi-edges. Throws std::runtime_error after 1000 failed restarts.
Graph gen_uniform_regular(std::size_t n, std::size_t d, Rng& rng);
Graph gen_uniform_regular(std::size_t n, std::size_t d, std::uint64_t seed);

/// Degree-preserving edge swaps: the edge list is shuffled once, consecutive
/// edges are paired and each pair is rewired with probability p_noise.
Graph edge_swap(const Graph& g, double p_noise, Rng& rng);

/// Relabels b by a uniformly random permutation drawn from `rng`, or by
/// `fixed` when given.
InstanceTriplet plant_permutation(CorrelatedPair pair, const GenParams& params,
                                  Rng& rng,
                                  std::optional<Permutation> fixed = std::nullopt);

InstanceTriplet gen_bernoulli_pair(const GenParams& params);
InstanceTriplet gen_er_pair(const GenParams& params);
InstanceTriplet gen_regular_pair(const GenParams& params);

/// Dispatches on params.family. Instance `index` of a dataset uses the
/// stream derived from (params.seed, index).
InstanceTriplet generate_instance(const GenParams& params, std::uint64_t index = 0);

}  // namespace graphchain
