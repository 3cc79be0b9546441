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

#include "graphchain/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "graphchain/metrics.hpp"
#include "graphchain/parallel.hpp"

namespace graphchain {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Dataset generate_dataset(const GenParams& params, std::size_t count, std::size_t threads) {
  params.validate();
  Dataset data;
  data.params = params;
  data.instances.resize(count);
  parallel_for(count, threads, [&](std::size_t i) {
    data.instances[i] = generate_instance(params, i);
  });
  return data;
}

namespace {

void write_edges(std::ostream& out, const char* tag, const Graph& g) {
  const auto edges = g.edges();
  out << tag << ' ' << edges.size() << '\n';
  for (const auto& e : edges) out << e.u << ' ' << e.v << '\n';
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-blank, non-comment line split into tokens.
  std::vector<std::string> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (!tokens.empty()) return tokens;
    }
    fail("unexpected end of file");
  }

  std::vector<std::string> expect(const std::string& key, std::size_t values) {
    auto tokens = next();
    if (tokens[0] != key || tokens.size() != values + 1) {
      fail("expected '" + key + "' with " + std::to_string(values) + " value(s)");
    }
    return tokens;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("dataset line " + std::to_string(line_no_) + ": " + what);
  }

  std::size_t to_size(const std::string& s) const {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) fail("bad integer '" + s + "'");
    return v;
  }

  double to_double(const std::string& s) const {
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) fail("bad number '" + s + "'");
    return v;
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

Graph read_edges(LineReader& r, const std::string& tag, std::size_t n) {
  const auto header = r.expect(tag, 1);
  const std::size_t m = r.to_size(header[1]);
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto t = r.next();
    if (t.size() != 2) r.fail("expected an edge 'u v'");
    edges.push_back({r.to_size(t[0]), r.to_size(t[1])});
  }
  try {
    return Graph::from_edges(n, edges);
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
}

}  // namespace

void write_dataset(std::ostream& out, const Dataset& data) {
  const GenParams& p = data.params;
  out << kDatasetMagic << ' ' << kDatasetVersion << '\n';
  out << "family " << to_string(p.family) << '\n';
  out << "n " << p.n << '\n';
  out << "d " << format_double(p.d) << '\n';
  out << "p_noise " << format_double(p.p_noise) << '\n';
  out << "rho " << format_double(p.rho) << '\n';
  out << "alpha " << format_double(p.alpha) << '\n';
  out << "seed " << p.seed << '\n';
  out << "count " << data.instances.size() << '\n';
  for (std::size_t i = 0; i < data.instances.size(); ++i) {
    const auto& inst = data.instances[i];
    out << "instance " << i << '\n';
    write_edges(out, "a", inst.graph_a);
    write_edges(out, "b", inst.graph_b_permuted);
    out << "planted";
    for (std::size_t v : inst.planted.mapping()) out << ' ' << v;
    out << '\n';
    out << "shared " << nce(inst.graph_a, inst.graph_b_permuted, inst.planted) << '\n';
    out << "end\n";
  }
}

Dataset read_dataset(std::istream& in) {
  LineReader r(in);
  const auto magic = r.next();
  if (magic.size() != 2 || magic[0] != kDatasetMagic) r.fail("not a graphchain dataset");
  if (r.to_size(magic[1]) != static_cast<std::size_t>(kDatasetVersion)) {
    r.fail("unsupported dataset version " + magic[1]);
  }
  Dataset data;
  GenParams& p = data.params;
  try {
    p.family = parse_family(r.expect("family", 1)[1]);
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
  p.n = r.to_size(r.expect("n", 1)[1]);
  p.d = r.to_double(r.expect("d", 1)[1]);
  p.p_noise = r.to_double(r.expect("p_noise", 1)[1]);
  p.rho = r.to_double(r.expect("rho", 1)[1]);
  p.alpha = r.to_double(r.expect("alpha", 1)[1]);
  p.seed = r.to_size(r.expect("seed", 1)[1]);
  const std::size_t count = r.to_size(r.expect("count", 1)[1]);
  p.validate();
  data.instances.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (r.to_size(r.expect("instance", 1)[1]) != i) r.fail("instances out of order");
    InstanceTriplet inst;
    inst.params = p;
    inst.graph_a = read_edges(r, "a", p.n);
    inst.graph_b_permuted = read_edges(r, "b", p.n);
    const auto planted = r.expect("planted", p.n);
    std::vector<std::size_t> mapping;
    mapping.reserve(p.n);
    for (std::size_t k = 1; k < planted.size(); ++k) mapping.push_back(r.to_size(planted[k]));
    if (!is_bijection(mapping)) r.fail("planted mapping is not a permutation");
    inst.planted = Permutation(std::move(mapping));
    const std::size_t shared = r.to_size(r.expect("shared", 1)[1]);
    if (shared != nce(inst.graph_a, inst.graph_b_permuted, inst.planted)) {
      r.fail("recorded shared-edge count does not match the graphs");
    }
    r.expect("end", 0);
    data.instances.push_back(std::move(inst));
  }
  return data;
}

void save_dataset(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write dataset " + path.string());
  write_dataset(out, data);
  if (!out) throw std::runtime_error("error while writing " + path.string());
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset " + path.string());
  return read_dataset(in);
}

DatasetStats compute_stats(const Dataset& data) {
  DatasetStats s;
  const auto count = static_cast<double>(data.instances.size());
  if (data.instances.empty()) return s;
  double sq = 0.0;
  for (const auto& inst : data.instances) {
    const auto shared =
        static_cast<double>(nce(inst.graph_a, inst.graph_b_permuted, inst.planted));
    s.mean_edges_a += static_cast<double>(inst.graph_a.edge_count());
    s.mean_edges_b += static_cast<double>(inst.graph_b_permuted.edge_count());
    s.mean_shared += shared;
    sq += shared * shared;
  }
  s.mean_edges_a /= count;
  s.mean_edges_b /= count;
  s.mean_shared /= count;
  s.stddev_shared = std::sqrt(std::max(0.0, sq / count - s.mean_shared * s.mean_shared));
  return s;
}

}  // namespace graphchain
