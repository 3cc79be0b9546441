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

#include "graphchain/checkpoint.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "graphchain/rng.hpp"
#include "json.hpp"

namespace graphchain {

using chaining::ChainModel;
using chaining::StageCurve;
using fgnn::FgnnConfig;
using fgnn::FgnnParams;
using json = nlohmann::json;

namespace {

json config_to_json(const FgnnConfig& c) {
  return {{"feature_dim", c.feature_dim},
          {"num_layers", c.num_layers},
          {"mlp_hidden", c.mlp_hidden},
          {"mlp_hidden_layers", c.mlp_hidden_layers},
          {"n_max", c.n_max},
          {"use_ranks", c.use_ranks},
          {"rank_injection", fgnn::to_string(c.rank_injection)},
          {"norm_eps", c.norm_eps}};
}

FgnnConfig config_from_json(const json& j) {
  FgnnConfig c;
  c.feature_dim = j.at("feature_dim").get<std::size_t>();
  c.num_layers = j.at("num_layers").get<std::size_t>();
  c.mlp_hidden = j.at("mlp_hidden").get<std::size_t>();
  c.mlp_hidden_layers = j.at("mlp_hidden_layers").get<std::size_t>();
  c.n_max = j.at("n_max").get<std::size_t>();
  c.use_ranks = j.at("use_ranks").get<bool>();
  c.rank_injection = fgnn::parse_rank_injection(j.at("rank_injection").get<std::string>());
  c.norm_eps = j.at("norm_eps").get<double>();
  c.validate();
  return c;
}

template <typename T>
json params_to_json(const FgnnParams<T>& p) {
  json tensors = json::object();
  p.for_each([&](const std::string& name, const tensor::Parameter<T>& param) {
    std::vector<double> data(param.value.data().begin(), param.value.data().end());
    tensors[name] = {{"shape", param.value.shape()}, {"data", data}};
  });
  return {{"config", config_to_json(p.config)}, {"tensors", tensors}};
}

FgnnParams<double> params_from_json(const json& j, const std::string& label) {
  const FgnnConfig config = config_from_json(j.at("config"));
  // Build the expected layout, then overwrite every tensor from the file.
  Rng rng(0);
  auto p = FgnnParams<double>::init(config, rng);
  const json& tensors = j.at("tensors");
  std::size_t seen = 0;
  p.for_each([&](const std::string& name, tensor::Parameter<double>& param) {
    if (!tensors.contains(name)) {
      throw std::runtime_error("checkpoint network " + label + " lacks tensor " + name);
    }
    const auto shape = tensors[name].at("shape").get<tensor::Shape>();
    auto data = tensors[name].at("data").get<std::vector<double>>();
    if (shape != param.value.shape() || data.size() != param.value.size()) {
      throw std::runtime_error("checkpoint tensor " + label + "." + name + " has shape " +
                               tensor::shape_string(shape) + ", expected " +
                               tensor::shape_string(param.value.shape()));
    }
    param = tensor::Parameter<double>(tensor::Tensor<double>(shape, std::move(data)));
    ++seen;
  });
  if (seen != tensors.size()) {
    throw std::runtime_error("checkpoint network " + label + " has unexpected tensors");
  }
  return p;
}

json curve_to_json(const StageCurve& c) {
  return {{"train_loss", c.train_loss},       {"val_loss", c.val_loss},
          {"val_acc", c.val_acc},             {"learning_rate", c.learning_rate},
          {"best_epoch", c.best_epoch}};
}

StageCurve curve_from_json(const json& j) {
  StageCurve c;
  c.train_loss = j.at("train_loss").get<std::vector<double>>();
  c.val_loss = j.at("val_loss").get<std::vector<double>>();
  c.val_acc = j.at("val_acc").get<std::vector<double>>();
  c.learning_rate = j.at("learning_rate").get<std::vector<double>>();
  c.best_epoch = j.at("best_epoch").get<std::size_t>();
  return c;
}

json meta_to_json(const chaining::TrainMeta& m) {
  const auto& hp = m.hp;
  return {{"family", std::string(to_string(m.family))},
          {"noise", m.noise},
          {"mean_degree", m.mean_degree},
          {"train_count", m.train_count},
          {"val_count", m.val_count},
          {"learning_rate", hp.learning_rate},
          {"scheduler_patience", hp.scheduler_patience},
          {"scheduler_factor", hp.scheduler_factor},
          {"epochs", hp.epochs},
          {"later_epochs", hp.later_epochs},
          {"batch_size", hp.batch_size},
          {"seed", hp.seed},
          {"precision", tensor::to_string(hp.precision)}};
}

chaining::TrainMeta meta_from_json(const json& j) {
  chaining::TrainMeta m;
  m.family = parse_family(j.at("family").get<std::string>());
  m.noise = j.at("noise").get<double>();
  m.mean_degree = j.at("mean_degree").get<double>();
  m.train_count = j.at("train_count").get<std::size_t>();
  m.val_count = j.at("val_count").get<std::size_t>();
  auto& hp = m.hp;
  hp.learning_rate = j.at("learning_rate").get<double>();
  hp.scheduler_patience = j.at("scheduler_patience").get<std::size_t>();
  hp.scheduler_factor = j.at("scheduler_factor").get<double>();
  hp.epochs = j.at("epochs").get<std::size_t>();
  hp.later_epochs = j.at("later_epochs").get<std::size_t>();
  hp.batch_size = j.at("batch_size").get<std::size_t>();
  hp.seed = j.at("seed").get<std::uint64_t>();
  hp.precision = tensor::parse_precision(j.at("precision").get<std::string>());
  return m;
}

}  // namespace

template <typename T>
std::string checkpoint_to_string(const ChainModel<T>& model) {
  model.validate();
  json g = json::array();
  for (const auto& net : model.g) g.push_back(params_to_json(net));
  json curves = json::array();
  for (const auto& c : model.curves) curves.push_back(curve_to_json(c));
  const auto precision = std::is_same_v<T, float> ? tensor::Precision::f32 : tensor::Precision::f64;
  json root = {{"format", kCheckpointFormat},
               {"version", kCheckpointVersion},
               {"precision", tensor::to_string(precision)},
               {"init_scheme", fgnn::kInitScheme},
               {"depth", model.depth()},
               {"n_max", model.n_max()},
               {"meta", meta_to_json(model.meta)},
               {"curves", curves},
               {"f", params_to_json(model.f)},
               {"g", g}};
  return root.dump(1) + "\n";
}

Checkpoint checkpoint_from_string(const std::string& text,
                                  std::optional<std::size_t> expected_n_max) {
  Checkpoint out;
  try {
    const json root = json::parse(text);
    if (root.at("format").get<std::string>() != kCheckpointFormat) {
      throw std::runtime_error("not a graphchain checkpoint");
    }
    const int version = root.at("version").get<int>();
    if (version != kCheckpointVersion) {
      throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
    }
    out.precision = tensor::parse_precision(root.at("precision").get<std::string>());
    auto& m = out.model;
    m.meta = meta_from_json(root.at("meta"));
    for (const auto& c : root.at("curves")) m.curves.push_back(curve_from_json(c));
    m.f = params_from_json(root.at("f"), "f");
    std::size_t k = 1;
    for (const auto& g : root.at("g")) m.g.push_back(params_from_json(g, "g" + std::to_string(k++)));
    if (m.depth() != root.at("depth").get<std::size_t>()) {
      throw std::runtime_error("checkpoint depth does not match its networks");
    }
    m.validate();
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed checkpoint: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid checkpoint: ") + e.what());
  }
  if (expected_n_max && out.model.depth() > 0 && *expected_n_max != out.model.n_max()) {
    throw std::runtime_error("checkpoint was trained with n_max " +
                             std::to_string(out.model.n_max()) + " but " +
                             std::to_string(*expected_n_max) + " was requested");
  }
  return out;
}

template <typename T>
void save_checkpoint(const std::filesystem::path& path, const ChainModel<T>& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  out << checkpoint_to_string(model);
  if (!out) throw std::runtime_error("error while writing " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path,
                           std::optional<std::size_t> expected_n_max) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return checkpoint_from_string(ss.str(), expected_n_max);
}

template std::string checkpoint_to_string<float>(const ChainModel<float>&);
template std::string checkpoint_to_string<double>(const ChainModel<double>&);
template void save_checkpoint<float>(const std::filesystem::path&, const ChainModel<float>&);
template void save_checkpoint<double>(const std::filesystem::path&, const ChainModel<double>&);

}  // namespace graphchain
