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

#include "graphchain/generators.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphchain/metrics.hpp"
#include "graphchain/rng.hpp"

namespace graphchain {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::bernoulli: return "bernoulli";
    case Family::erdos_renyi: return "erdos_renyi";
    case Family::regular: return "regular";
  }
  return "unknown";
}

Family parse_family(std::string_view s) {
  if (s == "bernoulli") return Family::bernoulli;
  if (s == "erdos_renyi" || s == "er") return Family::erdos_renyi;
  if (s == "regular") return Family::regular;
  throw std::invalid_argument("unknown graph family '" + std::string(s) + "'");
}

void GenParams::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (n == 0 || n > Graph::kMaxNodes) fail("n must be in [1, 4096]");
  if (!(p_noise >= 0.0 && p_noise <= 1.0)) fail("p_noise must be in [0, 1]");
  switch (family) {
    case Family::bernoulli:
      if (!(rho >= 0.0 && rho <= 1.0)) fail("rho must be in [0, 1]");
      if (!(alpha >= 0.0 && alpha <= 0.5)) fail("alpha must be in [0, 0.5]");
      break;
    case Family::erdos_renyi: {
      if (!(d >= 0.0) || d >= static_cast<double>(n)) fail("d must be in [0, n)");
      const double lambda = d / static_cast<double>(n);
      if (lambda * (1.0 + p_noise) > 1.0) fail("(d/n)(1 + p_noise) must not exceed 1");
      break;
    }
    case Family::regular: {
      if (d < 0.0 || d != std::floor(d)) fail("regular degree must be a non-negative integer");
      const auto k = static_cast<std::size_t>(d);
      if (k >= n) fail("regular degree must be < n");
      if ((n * k) % 2 != 0) fail("n * d must be even for a regular graph");
      break;
    }
  }
}

CorrelatedPair sample_bernoulli_pair(const GenParams& params, Rng& rng) {
  const std::size_t n = params.n;
  CorrelatedPair out{Graph(n), Graph(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double lambda = rng.uniform(params.alpha, 1.0 - params.alpha);
      const bool b = rng.bernoulli(lambda);
      const double pa = params.rho * (b ? 1.0 : 0.0) + (1.0 - params.rho) * lambda;
      const bool a = rng.bernoulli(pa);
      if (b) out.b.add_edge(i, j);
      if (a) out.a.add_edge(i, j);
    }
  }
  return out;
}

CorrelatedPair sample_er_pair(const GenParams& params, Rng& rng) {
  const std::size_t n = params.n;
  const double lambda = params.d / static_cast<double>(n);
  const double keep = 1.0 - params.p_noise;
  const double spawn = lambda < 1.0 ? lambda * params.p_noise / (1.0 - lambda) : 0.0;
  CorrelatedPair out{Graph(n), Graph(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool b = rng.bernoulli(lambda);
      const bool a = rng.bernoulli(b ? keep : spawn);
      if (b) out.b.add_edge(i, j);
      if (a) out.a.add_edge(i, j);
    }
  }
  return out;
}

Graph gen_uniform_regular(std::size_t n, std::size_t d, Rng& rng) {
  if ((n * d) % 2 != 0) throw std::invalid_argument("n * d must be even");
  if (d >= n && n > 0) throw std::invalid_argument("degree must be < n");
  constexpr int kMaxRestarts = 1000;
  for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
    Graph g(n);
    std::vector<std::size_t> stubs;
    stubs.reserve(n * d);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t k = 0; k < d; ++k) stubs.push_back(v);
    }
    bool stuck = false;
    while (!stubs.empty()) {
      rng.shuffle(stubs.begin(), stubs.end());
      std::map<std::size_t, std::size_t> leftover;
      for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
        const std::size_t u = stubs[k];
        const std::size_t v = stubs[k + 1];
        if (u != v && !g.has_edge(u, v)) {
          g.add_edge(u, v);
        } else {
          ++leftover[u];
          ++leftover[v];
        }
      }
      // Stuck when no two distinct leftover nodes can still be joined.
      bool suitable = leftover.empty();
      for (auto it = leftover.begin(); it != leftover.end() && !suitable; ++it) {
        for (auto jt = std::next(it); jt != leftover.end(); ++jt) {
          if (!g.has_edge(it->first, jt->first)) {
            suitable = true;
            break;
          }
        }
      }
      if (!suitable) {
        stuck = true;
        break;
      }
      stubs.clear();
      for (const auto& [node, count] : leftover) {
        for (std::size_t k = 0; k < count; ++k) stubs.push_back(node);
      }
    }
    if (!stuck) return g;
  }
  throw std::runtime_error("regular graph sampler exhausted its restart budget");
}

Graph gen_uniform_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return gen_uniform_regular(n, d, rng);
}

Graph edge_swap(const Graph& g, double p_noise, Rng& rng) {
  Graph out = g;
  std::vector<Edge> edges = g.edges();
  rng.shuffle(edges.begin(), edges.end());
  for (std::size_t k = 0; k + 1 < edges.size(); k += 2) {
    // Both coins are drawn for every pair so the stream does not depend on
    // earlier accept/reject outcomes.
    const bool swap = rng.bernoulli(p_noise);
    const bool cross = rng.bernoulli(0.5);
    if (!swap) continue;
    const Edge e1 = edges[k];
    Edge e2 = edges[k + 1];
    if (cross) std::swap(e2.u, e2.v);
    // {i,j}, {k,l} -> {i,l}, {k,j}
    const std::size_t i = e1.u, j = e1.v, kk = e2.u, l = e2.v;
    if (i == l || kk == j) continue;
    if (out.has_edge(i, l) || out.has_edge(kk, j)) continue;
    if (!out.has_edge(i, j) || !out.has_edge(kk, l)) continue;
    out.remove_edge(i, j);
    out.remove_edge(kk, l);
    out.add_edge(i, l);
    out.add_edge(kk, j);
  }
  return out;
}

CorrelatedPair sample_regular_pair(const GenParams& params, Rng& rng) {
  Graph a = gen_uniform_regular(params.n, static_cast<std::size_t>(params.d), rng);
  Graph b = edge_swap(a, params.p_noise, rng);
  return {std::move(a), std::move(b)};
}

InstanceTriplet plant_permutation(CorrelatedPair pair, const GenParams& params,
                                  Rng& rng, std::optional<Permutation> fixed) {
  Permutation planted = fixed ? std::move(*fixed) : Permutation::random(pair.b.size(), rng);
  Graph b_permuted = apply_permutation(pair.b, planted);
  return {std::move(pair.a), std::move(b_permuted), std::move(planted), params};
}

namespace {

InstanceTriplet generate_with(const GenParams& params, Family expected,
                              std::uint64_t index) {
  if (params.family != expected) {
    throw std::invalid_argument("generator called with a different family");
  }
  return generate_instance(params, index);
}

}  // namespace

InstanceTriplet gen_bernoulli_pair(const GenParams& params) {
  return generate_with(params, Family::bernoulli, 0);
}

InstanceTriplet gen_er_pair(const GenParams& params) {
  return generate_with(params, Family::erdos_renyi, 0);
}

InstanceTriplet gen_regular_pair(const GenParams& params) {
  return generate_with(params, Family::regular, 0);
}

InstanceTriplet generate_instance(const GenParams& params, std::uint64_t index) {
  params.validate();
  Rng rng = Rng::derive(params.seed, index);
  CorrelatedPair pair;
  switch (params.family) {
    case Family::bernoulli: pair = sample_bernoulli_pair(params, rng); break;
    case Family::erdos_renyi: pair = sample_er_pair(params, rng); break;
    case Family::regular: pair = sample_regular_pair(params, rng); break;
  }
  return plant_permutation(std::move(pair), params, rng);
}

}  // namespace graphchain
