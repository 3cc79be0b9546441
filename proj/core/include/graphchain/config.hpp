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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "graphchain/chaining.hpp"
#include "graphchain/generators.hpp"

namespace graphchain {

/// Flat `key = value` settings. '#' starts a comment; later keys override
/// earlier ones.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in, const std::string& origin = "config");
  static KeyValueConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated list; empty entries are dropped.
  std::vector<std::string> get_list(const std::string& key,
                                    const std::vector<std::string>& fallback) const;

  /// Throws std::invalid_argument naming the first key not in `known`.
  void require_known(const std::set<std::string>& known) const;

  /// Sorted `key=value` lines, the input of config_hash().
  std::string canonical() const;

 private:
  std::map<std::string, std::string> values_;
};

/// Library version, e.g. "0.1.0".
const char* version();

/// FNV-1a 64 of `text` as 16 hex digits.
std::string config_hash(const std::string& text);

/// Every key the CLI understands, with its meaning, for --help output and
/// require_known().
const std::vector<std::pair<std::string, std::string>>& config_schema();
std::set<std::string> config_keys();

GenParams gen_params_from_config(const KeyValueConfig& c);
chaining::ChainTrainConfig train_config_from_config(const KeyValueConfig& c);
chaining::InferConfig infer_config_from_config(const KeyValueConfig& c);

}  // namespace graphchain
