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

#include "graphchain/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <stdexcept>

namespace graphchain {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* kind) {
  throw std::invalid_argument("config key '" + key + "': '" + value + "' is not " + kind);
}

template <typename I>
I parse_integer(const std::string& key, const std::string& value) {
  I v{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    bad_value(key, value, "a non-negative integer");
  }
  return v;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& origin) {
  KeyValueConfig c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) + ": empty key");
    }
    c.values_[key] = trim(line.substr(eq + 1));
  }
  return c;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return parse(in, path.string());
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  double v = 0.0;
  const auto& s = it->second;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) bad_value(key, s, "a number");
  return v;
}

std::size_t KeyValueConfig::get_size(const std::string& key, std::size_t fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_integer<std::size_t>(key, it->second);
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_integer<std::uint64_t>(key, it->second);
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const auto& s = it->second;
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  bad_value(key, s, "a boolean");
}

std::vector<std::string> KeyValueConfig::get_list(const std::string& key,
                                                  const std::vector<std::string>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<std::string> out;
  std::string item;
  for (char ch : it->second + ",") {
    if (ch == ',') {
      item = trim(item);
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += ch;
    }
  }
  return out;
}

void KeyValueConfig::require_known(const std::set<std::string>& known) const {
  for (const auto& [key, value] : values_) {
    if (known.count(key) == 0) throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

std::string KeyValueConfig::canonical() const {
  std::string out;
  for (const auto& [key, value] : values_) out += key + "=" + value + "\n";
  return out;
}

const char* version() { return GRAPHCHAIN_VERSION; }

std::string config_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const std::vector<std::pair<std::string, std::string>>& config_schema() {
  static const std::vector<std::pair<std::string, std::string>> schema = {
      {"family", "bernoulli | erdos_renyi | regular (default erdos_renyi)"},
      {"n", "node count (default 50)"},
      {"d", "mean degree (ER) or degree (regular) (default 4)"},
      {"p_noise", "noise level (default 0)"},
      {"rho", "bernoulli correlation (default 1)"},
      {"alpha", "bernoulli edge probability margin (default 0.1)"},
      {"seed", "base seed for generation and training (default 0)"},
      {"count", "instances to generate (default 20)"},
      {"dataset", "dataset file for train, infer, solve, bench, oracle"},
      {"val_dataset", "separate validation dataset for train"},
      {"val_fraction", "share of the dataset held out for validation when no val_dataset (default 0.2)"},
      {"model", "checkpoint path for learned solvers"},
      {"out", "output path"},
      {"depth", "number of chained networks L (default 0)"},
      {"feature_dim", "FGNN feature width (default 32)"},
      {"num_layers", "FGNN pair layers (default 2)"},
      {"mlp_hidden", "MLP hidden width (default 64)"},
      {"mlp_hidden_layers", "MLP hidden layers (default 2)"},
      {"rank_injection", "readout | readout_and_input (default readout)"},
      {"n_max", "rank table size, 0 = largest n in the data (default 0)"},
      {"learning_rate", "Adam learning rate (default 1e-3)"},
      {"epochs", "epochs for f and g1 (default 15)"},
      {"later_epochs", "epochs for g2 and later, 0 = half (default 0)"},
      {"scheduler_patience", "epochs without improvement before decay (default 3)"},
      {"scheduler_factor", "learning rate decay factor (default 0.1)"},
      {"batch_size", "instances per optimiser step (default 1)"},
      {"precision", "f32 | f64 (default f32)"},
      {"solvers", "comma list of bench solvers"},
      {"loop_cap", "maximum g applications at inference (default 100)"},
      {"looping", "reuse the last network while nce improves (default true)"},
      {"stop_metric", "proj_nce | faq_nce (default proj_nce)"},
      {"post", "proj | faq (default proj)"},
      {"faq_max_iters", "FAQ iteration cap (default 30)"},
      {"faq_rel_tol", "FAQ relative tolerance (default 1e-6)"},
      {"convex_max_iters", "convex relaxation iteration cap (default 100)"},
      {"convex_rel_tol", "convex relaxation relative tolerance (default 1e-6)"},
      {"threads", "worker threads (default 1)"},
      {"timing", "record wall_ms in results (default false)"},
      {"instance", "instance index for solve (default 0)"},
      {"noise_list", "comma list of noise levels; bench generates one dataset per level when no dataset is given"},
  };
  return schema;
}

std::set<std::string> config_keys() {
  std::set<std::string> keys;
  for (const auto& [key, doc] : config_schema()) keys.insert(key);
  return keys;
}

GenParams gen_params_from_config(const KeyValueConfig& c) {
  GenParams p;
  p.family = parse_family(c.get_string("family", "erdos_renyi"));
  p.n = c.get_size("n", p.n);
  p.d = c.get_double("d", p.d);
  p.p_noise = c.get_double("p_noise", p.p_noise);
  p.rho = c.get_double("rho", p.rho);
  p.alpha = c.get_double("alpha", p.alpha);
  p.seed = c.get_u64("seed", p.seed);
  p.validate();
  return p;
}

chaining::ChainTrainConfig train_config_from_config(const KeyValueConfig& c) {
  chaining::ChainTrainConfig t;
  t.arch.feature_dim = c.get_size("feature_dim", 32);
  t.arch.num_layers = c.get_size("num_layers", 2);
  t.arch.mlp_hidden = c.get_size("mlp_hidden", 64);
  t.arch.mlp_hidden_layers = c.get_size("mlp_hidden_layers", 2);
  t.depth = c.get_size("depth", 0);
  t.n_max = c.get_size("n_max", 0);
  t.rank_injection = fgnn::parse_rank_injection(c.get_string("rank_injection", "readout"));
  auto& hp = t.hp;
  hp.learning_rate = c.get_double("learning_rate", 1e-3);
  hp.epochs = c.get_size("epochs", 15);
  hp.later_epochs = c.get_size("later_epochs", 0);
  hp.scheduler_patience = c.get_size("scheduler_patience", hp.scheduler_patience);
  hp.scheduler_factor = c.get_double("scheduler_factor", hp.scheduler_factor);
  hp.batch_size = c.get_size("batch_size", hp.batch_size);
  hp.seed = c.get_u64("seed", 0);
  hp.precision = tensor::parse_precision(c.get_string("precision", "f32"));
  t.validate();
  return t;
}

chaining::InferConfig infer_config_from_config(const KeyValueConfig& c) {
  chaining::InferConfig i;
  i.loop_cap = c.get_size("loop_cap", i.loop_cap);
  i.looping = c.get_bool("looping", i.looping);
  i.stop_metric = chaining::parse_stop_metric(c.get_string("stop_metric", "proj_nce"));
  i.post = chaining::parse_post_process(c.get_string("post", "proj"));
  i.faq.max_iters = c.get_size("faq_max_iters", i.faq.max_iters);
  i.faq.rel_tol = c.get_double("faq_rel_tol", i.faq.rel_tol);
  i.faq.validate();
  return i;
}

}  // namespace graphchain
