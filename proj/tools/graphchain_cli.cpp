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

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "graphchain/chaining.hpp"
#include "graphchain/checkpoint.hpp"
#include "graphchain/config.hpp"
#include "graphchain/dataset_io.hpp"
#include "graphchain/harness.hpp"
#include "graphchain/plot.hpp"

namespace gc = graphchain;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string solvers;
  std::string precision;
  std::optional<std::size_t> threads;
  std::string dataset;
  std::string model;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "key = value settings file");
  cmd->add_option("--seed", f.seed, "base seed");
  cmd->add_option("--out", f.out, "output path");
  cmd->add_option("--solvers", f.solvers, "comma list of solvers");
  cmd->add_option("--precision", f.precision, "f32 or f64");
  cmd->add_option("--threads", f.threads, "worker threads");
  cmd->add_option("--dataset", f.dataset, "dataset file");
  cmd->add_option("--model", f.model, "model checkpoint");
  cmd->add_option("--set", f.overrides, "extra key=value setting (repeatable)");
}

/// Config file, then --set overrides, then dedicated flags.
gc::KeyValueConfig merged_config(const CommonFlags& f) {
  gc::KeyValueConfig c = f.config.empty() ? gc::KeyValueConfig{} : gc::KeyValueConfig::load(f.config);
  for (const auto& kv : f.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    c.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (f.seed) c.set("seed", std::to_string(*f.seed));
  if (!f.out.empty()) c.set("out", f.out);
  if (!f.solvers.empty()) c.set("solvers", f.solvers);
  if (!f.precision.empty()) c.set("precision", f.precision);
  if (f.threads) c.set("threads", std::to_string(*f.threads));
  if (!f.dataset.empty()) c.set("dataset", f.dataset);
  if (!f.model.empty()) c.set("model", f.model);
  c.require_known(gc::config_keys());
  return c;
}

std::string require(const gc::KeyValueConfig& c, const std::string& key) {
  const std::string v = c.get_string(key, "");
  if (v.empty()) throw std::invalid_argument("missing required setting '" + key + "'");
  return v;
}

/// The output path and thread count do not change results, so they are left
/// out of the hash.
gc::ResultHeader header_for(const gc::KeyValueConfig& c) {
  gc::KeyValueConfig hashed;
  for (const auto& [key, value] : c.values()) {
    if (key != "out" && key != "threads") hashed.set(key, value);
  }
  return {gc::config_hash(hashed.canonical()), gc::version()};
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix;
}

int cmd_generate(const gc::KeyValueConfig& c) {
  const gc::GenParams params = gc::gen_params_from_config(c);
  const std::size_t count = c.get_size("count", 20);
  const std::string out = require(c, "out");
  const gc::Dataset data = gc::generate_dataset(params, count, c.get_size("threads", 1));
  gc::save_dataset(out, data);
  const auto stats = gc::compute_stats(data);
  std::cerr << "wrote " << count << " instances to " << out << " (mean edges a "
            << stats.mean_edges_a << ", b " << stats.mean_edges_b << ", shared "
            << stats.mean_shared << ")\n";
  return 0;
}

template <typename T>
gc::chaining::ChainModel<T> train_in(const std::vector<gc::InstanceTriplet>& train,
                                     const std::vector<gc::InstanceTriplet>& val,
                                     const gc::chaining::ChainTrainConfig& cfg) {
  return gc::chaining::train_chain<T>(
      train, val, cfg,
      [](std::size_t stage, std::size_t epoch, double tl, double vl, double va) {
        std::cerr << "stage " << stage << " epoch " << epoch << " train_loss " << tl
                  << " val_loss " << vl << " val_acc " << va << '\n';
      });
}

int cmd_train(const gc::KeyValueConfig& c) {
  const auto cfg = gc::train_config_from_config(c);
  const gc::Dataset data = gc::load_dataset(require(c, "dataset"));
  std::vector<gc::InstanceTriplet> train = data.instances, val;
  if (c.has("val_dataset")) {
    val = gc::load_dataset(c.get_string("val_dataset", "")).instances;
  } else {
    const double fraction = c.get_double("val_fraction", 0.2);
    if (!(fraction > 0.0 && fraction < 1.0)) throw std::invalid_argument("val_fraction must be in (0, 1)");
    const auto held = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(train.size())));
    if (held == 0 || held >= train.size()) {
      throw std::invalid_argument("dataset too small to hold out a validation split");
    }
    val.assign(train.end() - static_cast<std::ptrdiff_t>(held), train.end());
    train.resize(train.size() - held);
  }
  const std::string out = require(c, "out");
  std::vector<gc::chaining::StageCurve> curves;
  if (cfg.hp.precision == gc::tensor::Precision::f32) {
    const auto m = train_in<float>(train, val, cfg);
    gc::save_checkpoint(out, m);
    curves = m.curves;
  } else {
    const auto m = train_in<double>(train, val, cfg);
    gc::save_checkpoint(out, m);
    curves = m.curves;
  }
  auto curve_file = open_out(with_suffix(out, ".curves.csv"));
  gc::write_curves_csv(curve_file, curves);
  std::cerr << "wrote checkpoint " << out << '\n';
  return 0;
}

int cmd_infer(const gc::KeyValueConfig& c) {
  const gc::Dataset data = gc::load_dataset(require(c, "dataset"));
  const gc::Checkpoint model = gc::load_checkpoint(require(c, "model"));
  const auto cfg = gc::infer_config_from_config(c);
  const auto result = gc::run_infer(data, model, cfg, c.get_size("threads", 1));
  auto out = open_out(require(c, "out"));
  gc::write_trace_csv(out, result.trace, header_for(c));
  double acc = 0.0;
  for (std::size_t i = 0; i < data.instances.size(); ++i) {
    acc += gc::acc(result.results[i].permutation, data.instances[i].planted);
  }
  std::cerr << "mean acc " << acc / static_cast<double>(data.instances.size()) << " (post "
            << gc::chaining::to_string(cfg.post) << ")\n";
  return 0;
}

std::vector<gc::Solver> solvers_of(const gc::KeyValueConfig& c) {
  return gc::parse_solvers(c.get_list("solvers", {"proj_dcx", "faq_dcx", "faq_planted"}));
}

gc::BenchOptions bench_options(const gc::KeyValueConfig& c) {
  gc::BenchOptions o;
  o.solvers = solvers_of(c);
  o.infer = gc::infer_config_from_config(c);
  o.convex.max_iters = c.get_size("convex_max_iters", o.convex.max_iters);
  o.convex.rel_tol = c.get_double("convex_rel_tol", o.convex.rel_tol);
  o.convex.validate();
  o.threads = c.get_size("threads", 1);
  o.timing = c.get_bool("timing", false);
  return o;
}

std::optional<gc::Checkpoint> model_if_needed(const gc::KeyValueConfig& c,
                                              const std::vector<gc::Solver>& solvers) {
  for (auto s : solvers) {
    if (gc::needs_model(s)) return gc::load_checkpoint(require(c, "model"));
  }
  return std::nullopt;
}

int cmd_solve(const gc::KeyValueConfig& c) {
  gc::Dataset data = gc::load_dataset(require(c, "dataset"));
  const std::size_t index = c.get_size("instance", 0);
  if (index >= data.instances.size()) throw std::invalid_argument("instance index out of range");
  gc::Dataset one{data.params, {data.instances[index]}};
  const auto options = bench_options(c);
  const auto model = model_if_needed(c, options.solvers);
  const auto rows = gc::run_bench(one, model ? &*model : nullptr, options);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (c.has("out")) {
    file = open_out(c.get_string("out", ""));
    out = &file;
  }
  *out << "solver,acc,nce,fw_iterations,loop_count,permutation\n";
  for (const auto& r : rows) {
    *out << gc::to_string(r.solver) << ',' << gc::format_double(r.acc) << ',' << r.nce << ','
         << r.fw_iterations << ',' << r.loop_count << ',';
    for (std::size_t i = 0; i < r.permutation.size(); ++i) *out << (i ? " " : "") << r.permutation[i];
    *out << '\n';
  }
  return 0;
}

int cmd_bench(const gc::KeyValueConfig& c) {
  const auto options = bench_options(c);
  const auto model = model_if_needed(c, options.solvers);
  std::vector<gc::Dataset> sets;
  if (c.has("dataset")) {
    sets.push_back(gc::load_dataset(c.get_string("dataset", "")));
  } else {
    gc::GenParams params = gc::gen_params_from_config(c);
    const auto noises = c.get_list("noise_list", {gc::format_double(params.p_noise)});
    for (const auto& level : noises) {
      gc::KeyValueConfig one = c;
      one.set("p_noise", level);
      params = gc::gen_params_from_config(one);
      sets.push_back(gc::generate_dataset(params, c.get_size("count", 20), options.threads));
    }
  }
  std::vector<gc::ResultRow> rows;
  for (const auto& data : sets) {
    auto part = gc::run_bench(data, model ? &*model : nullptr, options);
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  const std::string out = require(c, "out");
  const auto header = header_for(c);
  auto csv = open_out(out);
  gc::write_results_csv(csv, rows, header);
  auto json = open_out(with_suffix(out, ".summary.json"));
  gc::write_summary_json(json, gc::summarize(rows), header);
  std::cerr << "wrote " << rows.size() << " rows to " << out << '\n';
  return 0;
}

int cmd_oracle(const gc::KeyValueConfig& c) {
  const gc::Dataset data = gc::load_dataset(require(c, "dataset"));
  const auto rows = gc::run_oracle(data, c.get_size("threads", 1));
  auto out = open_out(require(c, "out"));
  gc::write_oracle_csv(out, rows, header_for(c));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph alignment with chained folklore GNNs and Frank-Wolfe baselines"};
  app.set_version_flag("--version", std::string(gc::version()));
  app.require_subcommand(1);

  CommonFlags flags;
  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const gc::KeyValueConfig&);
  };
  const Sub subs[] = {
      {"generate", "sample a dataset of correlated graph pairs", cmd_generate},
      {"train", "train f and the chained networks g1..gL", cmd_train},
      {"infer", "run chained inference and write per-step traces", cmd_infer},
      {"solve", "run solvers on one dataset instance", cmd_solve},
      {"bench", "run solvers over datasets and write results CSV and JSON summary", cmd_bench},
      {"oracle", "exhaustive optimum for datasets with n <= 10", cmd_oracle},
  };
  std::vector<std::pair<CLI::App*, const Sub*>> registered;
  for (const auto& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, flags);
    registered.emplace_back(cmd, &s);
  }

  gc::PlotSpec plot_spec;
  std::string plot_in, plot_out;
  CLI::App* plot = app.add_subcommand("plot", "render a CSV column as an SVG line chart");
  plot->add_option("--in", plot_in, "input CSV")->required();
  plot->add_option("--out", plot_out, "output SVG")->required();
  plot->add_option("--x", plot_spec.x, "x column")->required();
  plot->add_option("--y", plot_spec.y, "y column")->required();
  plot->add_option("--series", plot_spec.series, "column that splits lines");
  plot->add_option("--title", plot_spec.title, "chart title");

  std::string schema_help;
  for (const auto& [key, doc] : gc::config_schema()) schema_help += "  " + key + ": " + doc + "\n";
  app.footer("Config keys (for --config files and --set):\n" + schema_help);

  CLI11_PARSE(app, argc, argv);
  try {
    if (plot->parsed()) {
      std::ifstream in(plot_in);
      if (!in) throw std::runtime_error("cannot open " + plot_in);
      const auto series = gc::series_from_csv(in, plot_spec);
      auto out = open_out(plot_out);
      out << gc::render_svg(series, plot_spec);
      return 0;
    }
    for (const auto& [cmd, sub] : registered) {
      if (cmd->parsed()) return sub->run(merged_config(flags));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
