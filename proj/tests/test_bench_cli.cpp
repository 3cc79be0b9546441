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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include "json.hpp"
#include <sstream>
#include <stdexcept>
#include <string>

#include "graphchain/checkpoint.hpp"
#include "graphchain/config.hpp"
#include "graphchain/dataset_io.hpp"
#include "graphchain/harness.hpp"
#include "graphchain/metrics.hpp"
#include "graphchain/plot.hpp"
#include "graphchain/relaxations.hpp"
#include "test_support.hpp"

namespace graphchain {
namespace {

namespace fs = std::filesystem;

GenParams er_params(std::size_t n, double noise, std::uint64_t seed) {
  GenParams p;
  p.n = n;
  p.d = 3;
  p.p_noise = noise;
  p.seed = seed;
  return p;
}

std::string dataset_text(const Dataset& d) {
  std::ostringstream out;
  write_dataset(out, d);
  return out.str();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

chaining::ChainModel<double> tiny_model(std::size_t depth, std::size_t n) {
  const auto data = generate_dataset(er_params(n, 0.1, 2), 5);
  std::vector<InstanceTriplet> train(data.instances.begin(), data.instances.begin() + 3);
  std::vector<InstanceTriplet> val(data.instances.begin() + 3, data.instances.end());
  chaining::ChainTrainConfig cfg;
  cfg.arch.feature_dim = 4;
  cfg.arch.mlp_hidden = 8;
  cfg.hp.epochs = 2;
  cfg.hp.learning_rate = 1e-3;
  cfg.depth = depth;
  return chaining::train_chain<double>(train, val, cfg);
}

TEST(Dataset, RoundTripIsByteIdentical) {
  for (Family fam : {Family::erdos_renyi, Family::regular, Family::bernoulli}) {
    GenParams p = er_params(20, 0.2, 7);
    p.family = fam;
    p.rho = 0.6;
    const Dataset d = generate_dataset(p, 3);
    const std::string text = dataset_text(d);
    std::istringstream in(text);
    const Dataset back = read_dataset(in);
    EXPECT_EQ(dataset_text(back), text);
    ASSERT_EQ(back.instances.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(back.instances[i].graph_a, d.instances[i].graph_a);
      EXPECT_EQ(back.instances[i].graph_b_permuted, d.instances[i].graph_b_permuted);
      EXPECT_EQ(back.instances[i].planted, d.instances[i].planted);
    }
    EXPECT_EQ(dataset_text(generate_dataset(p, 3)), text);
  }
}

TEST(Dataset, ThreadCountDoesNotChangeContent) {
  const GenParams p = er_params(30, 0.1, 3);
  EXPECT_EQ(dataset_text(generate_dataset(p, 6, 1)), dataset_text(generate_dataset(p, 6, 3)));
}

TEST(Dataset, HeaderAndComments) {
  const std::string text = dataset_text(generate_dataset(er_params(5, 0.0, 1), 1));
  EXPECT_EQ(text.rfind("graphchain-dataset 1\n", 0), 0u);
  std::istringstream in("# leading comment\n\n" + text);
  EXPECT_EQ(dataset_text(read_dataset(in)), text);
}

TEST(Dataset, RejectsCorruption) {
  const std::string text = dataset_text(generate_dataset(er_params(6, 0.0, 1), 1));
  std::string bad = text;
  bad.replace(bad.find("shared "), 8, "shared 9");
  std::istringstream in1(bad);
  EXPECT_THROW(read_dataset(in1), std::runtime_error);
  std::istringstream in2("graphchain-dataset 2\n");
  EXPECT_THROW(read_dataset(in2), std::runtime_error);
}

TEST(Dataset, StatsMatchRecount) {
  const Dataset d = generate_dataset(er_params(60, 0.2, 4), 8);
  const auto st = compute_stats(d);
  double shared = 0.0, ea = 0.0;
  for (const auto& inst : d.instances) {
    shared += static_cast<double>(nce(inst.graph_a, inst.graph_b_permuted, inst.planted));
    ea += static_cast<double>(inst.graph_a.edge_count());
  }
  EXPECT_DOUBLE_EQ(st.mean_shared, shared / 8);
  EXPECT_DOUBLE_EQ(st.mean_edges_a, ea / 8);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.15), "0.15");
  EXPECT_EQ(format_double(4.0), "4");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Checkpoint, RoundTripGivesIdenticalInference) {
  const auto m = tiny_model(2, 10);
  const std::string text = checkpoint_to_string(m);
  const Checkpoint back = checkpoint_from_string(text);
  EXPECT_EQ(back.precision, tensor::Precision::f64);
  EXPECT_EQ(checkpoint_to_string(back.model), text);
  EXPECT_EQ(back.model.curves[1].val_loss, m.curves[1].val_loss);
  EXPECT_EQ(back.model.meta.train_count, 3u);
  const auto inst = generate_instance(er_params(10, 0.1, 99));
  const auto x = chaining::infer_chain(inst.graph_a, inst.graph_b_permuted, m);
  const auto y = chaining::infer_chain(inst.graph_a, inst.graph_b_permuted, back.model);
  EXPECT_EQ(x.similarity, y.similarity);
  EXPECT_EQ(x.permutation, y.permutation);
}

TEST(Checkpoint, Float32RoundTrip) {
  const auto m = tiny_model(1, 8).cast<float>();
  const Checkpoint back = checkpoint_from_string(checkpoint_to_string(m));
  EXPECT_EQ(back.precision, tensor::Precision::f32);
  EXPECT_EQ(checkpoint_to_string(back.model.cast<float>()), checkpoint_to_string(m));
}

TEST(Checkpoint, Errors) {
  const std::string text = checkpoint_to_string(tiny_model(1, 8));
  EXPECT_NO_THROW(checkpoint_from_string(text, 8));
  try {
    checkpoint_from_string(text, 12);
    FAIL() << "expected an n_max mismatch";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("n_max"), std::string::npos);
  }
  EXPECT_THROW(checkpoint_from_string("{}"), std::runtime_error);
  EXPECT_THROW(checkpoint_from_string("not json"), std::runtime_error);
  auto j = nlohmann::json::parse(text);
  j["version"] = 99;
  EXPECT_THROW(checkpoint_from_string(j.dump()), std::runtime_error);
  EXPECT_THROW(load_checkpoint("/nonexistent/model.json"), std::runtime_error);
}

TEST(Config, ParseAndTypedGetters) {
  std::istringstream in("# comment\nn = 12\nnoise_list = 0, 0.1 ,\nlooping = no\nfamily=regular # tail\n");
  const auto c = KeyValueConfig::parse(in);
  EXPECT_EQ(c.get_size("n", 0), 12u);
  EXPECT_EQ(c.get_list("noise_list", {}), (std::vector<std::string>{"0", "0.1"}));
  EXPECT_FALSE(c.get_bool("looping", true));
  EXPECT_EQ(c.get_string("family", ""), "regular");
  EXPECT_EQ(c.get_double("d", 4.5), 4.5);
  EXPECT_THROW(c.get_double("family", 0), std::invalid_argument);
  EXPECT_NO_THROW(c.require_known(config_keys()));
  std::istringstream bad("bogus = 1\n");
  EXPECT_THROW(KeyValueConfig::parse(bad).require_known(config_keys()), std::invalid_argument);
  std::istringstream malformed("just words\n");
  EXPECT_THROW(KeyValueConfig::parse(malformed), std::invalid_argument);
}

TEST(Config, Builders) {
  KeyValueConfig c;
  c.set("family", "regular");
  c.set("n", "20");
  c.set("d", "3");
  c.set("depth", "2");
  c.set("rank_injection", "readout_and_input");
  c.set("precision", "f64");
  c.set("post", "faq");
  c.set("loop_cap", "7");
  const auto g = gen_params_from_config(c);
  EXPECT_EQ(g.family, Family::regular);
  EXPECT_EQ(g.n, 20u);
  const auto t = train_config_from_config(c);
  EXPECT_EQ(t.depth, 2u);
  EXPECT_EQ(t.rank_injection, fgnn::RankInjection::readout_and_input);
  EXPECT_EQ(t.hp.precision, tensor::Precision::f64);
  const auto i = infer_config_from_config(c);
  EXPECT_EQ(i.post, chaining::PostProcess::faq);
  EXPECT_EQ(i.loop_cap, 7u);
  EXPECT_EQ(train_config_from_config(KeyValueConfig{}).rank_injection, fgnn::RankInjection::readout);
  c.set("d", "3.5");
  EXPECT_THROW(gen_params_from_config(c), std::invalid_argument);
}

TEST(Config, HashIsStable) {
  EXPECT_EQ(config_hash(""), "cbf29ce484222325");
  EXPECT_NE(config_hash("n=1\n"), config_hash("n=2\n"));
  EXPECT_EQ(config_hash("n=1\n").size(), 16u);
}

TEST(Solvers, Names) {
  for (Solver s : all_solvers()) EXPECT_EQ(parse_solver(to_string(s)), s);
  EXPECT_THROW(parse_solver("spectral"), std::invalid_argument);
  EXPECT_TRUE(needs_model(Solver::chfgnn_faq));
  EXPECT_FALSE(needs_model(Solver::faq_dcx));
}

TEST(Bench, CsvColumnsAndHeader) {
  const Dataset d = generate_dataset(er_params(12, 0.0, 5), 2);
  BenchOptions o;
  o.solvers = {Solver::proj_dcx, Solver::faq_planted};
  const auto rows = run_bench(d, nullptr, o);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].instance, 0u);
  EXPECT_EQ(rows[1].solver, Solver::faq_planted);
  std::ostringstream out;
  write_results_csv(out, rows, {"abc", "9.9"});
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# graphchain 9.9 config abc");
  std::getline(in, line);
  EXPECT_EQ(line,
            "instance,family,n,d,noise,solver,acc,nce,ratio_vs_reference,reference,fw_iterations,"
            "loop_count,wall_ms");
  std::getline(in, line);
  EXPECT_EQ(line.back(), ',');  // wall time off by default
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), 12);
}

TEST(Bench, PlantedSolverHasUnitRatioAtZeroNoise) {
  const Dataset d = generate_dataset(er_params(30, 0.0, 6), 4);
  BenchOptions o;
  o.solvers = {Solver::faq_planted};
  for (const auto& r : run_bench(d, nullptr, o)) {
    EXPECT_EQ(r.ratio_vs_reference, 1.0);
    EXPECT_EQ(r.reference, "proxy");
    EXPECT_EQ(r.acc >= 0.0 && r.acc <= 1.0, true);
  }
}

TEST(Bench, BruteforceBoundsEverySolver) {
  const Dataset d = generate_dataset(er_params(7, 0.2, 8), 10);
  const auto model = tiny_model(1, 7);
  const Checkpoint ck{model, tensor::Precision::f64};
  BenchOptions o;
  o.solvers = all_solvers();
  const auto rows = run_bench(d, &ck, o);
  ASSERT_EQ(rows.size(), 10 * all_solvers().size());
  for (std::size_t i = 0; i < rows.size(); i += all_solvers().size()) {
    std::size_t best = 0;
    for (std::size_t k = 0; k < all_solvers().size(); ++k) {
      if (rows[i + k].solver == Solver::bruteforce) best = rows[i + k].nce;
    }
    for (std::size_t k = 0; k < all_solvers().size(); ++k) {
      EXPECT_LE(rows[i + k].nce, best);
      EXPECT_EQ(rows[i + k].reference, "bruteforce");
      EXPECT_LE(rows[i + k].ratio_vs_reference, 1.0);
    }
  }
}

TEST(Bench, Errors) {
  const Dataset d = generate_dataset(er_params(12, 0.0, 5), 1);
  BenchOptions o;
  o.solvers = {Solver::bruteforce};
  EXPECT_THROW(run_bench(d, nullptr, o), std::invalid_argument);
  o.solvers = {Solver::chfgnn_proj};
  EXPECT_THROW(run_bench(d, nullptr, o), std::invalid_argument);
}

TEST(Bench, SummaryAggregates) {
  const Dataset d = generate_dataset(er_params(10, 0.1, 5), 3);
  BenchOptions o;
  o.solvers = {Solver::proj_dcx, Solver::faq_dcx};
  const auto rows = run_bench(d, nullptr, o);
  const auto cells = summarize(rows);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells[0].count, 3u);
  double mean = 0.0;
  for (const auto& r : rows) {
    if (r.solver == Solver::proj_dcx) mean += r.acc / 3.0;
  }
  EXPECT_NEAR(cells[0].mean_acc, mean, 1e-12);
  std::ostringstream out;
  write_summary_json(out, cells, {"h", "v"});
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["config_hash"], "h");
  EXPECT_EQ(j["cells"].size(), 2u);
}

TEST(Oracle, HandCases) {
  Dataset d;
  d.params = er_params(3, 0.0, 0);
  const Graph k3 = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
  const Graph path = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
  d.instances.push_back({k3, k3, Permutation::identity(3), d.params});
  d.instances.push_back({k3, path, Permutation::identity(3), d.params});
  const auto rows = run_oracle(d);
  EXPECT_EQ(rows[0].opt_nce, 3u);
  EXPECT_EQ(rows[1].opt_nce, 2u);
  const Dataset big = generate_dataset(er_params(11, 0.0, 0), 1);
  EXPECT_THROW(run_oracle(big), std::invalid_argument);
}

TEST(Oracle, CrossChecksRelaxationsOnN6) {
  const Dataset d = generate_dataset(er_params(6, 0.3, 12), 10);
  const auto rows = run_oracle(d, 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& inst = d.instances[i];
    EXPECT_EQ(rows[i].opt_nce, testing::gap_oracle(inst.graph_a, inst.graph_b_permuted));
    EXPECT_GE(rows[i].opt_nce, rows[i].planted_nce);
    const auto f = faq_barycenter(inst.graph_a, inst.graph_b_permuted);
    EXPECT_LE(nce(inst.graph_a, inst.graph_b_permuted, f.permutation), rows[i].opt_nce);
  }
}

TEST(Infer, TraceCsv) {
  const auto model = tiny_model(1, 8);
  const Checkpoint ck{model, tensor::Precision::f64};
  const Dataset d = generate_dataset(er_params(8, 0.1, 9), 2);
  const auto out = run_infer(d, ck, {}, 2);
  ASSERT_EQ(out.results.size(), 2u);
  std::ostringstream csv;
  write_trace_csv(csv, out.trace, {"h", "v"});
  EXPECT_NE(csv.str().find("instance,step,kind,network,proj_nce,faq_nce,faq_iterations,accepted"),
            std::string::npos);
  std::ostringstream curves;
  write_curves_csv(curves, model.curves);
  EXPECT_EQ(curves.str().rfind("stage,epoch,train_loss,val_loss,val_acc,learning_rate\n", 0), 0u);
}

TEST(Plot, SeriesAndSvg) {
  std::istringstream csv("# header\nx,y,s\n1,2,a\n1,4,a\n2,3,a\n1,1,b\n");
  const PlotSpec spec{"x", "y", "s", "t<1>"};
  const auto series = series_from_csv(csv, spec);
  ASSERT_EQ(series.size(), 2u);
  EXPECT_EQ(series[0].name, "a");
  EXPECT_EQ(series[0].points[0], (std::pair<double, double>{1.0, 3.0}));
  const std::string svg = render_svg(series, spec);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("t&lt;1&gt;"), std::string::npos);
  EXPECT_EQ(std::count(svg.begin(), svg.end(), '\n') > 5, true);
  std::istringstream missing("x,z\n1,2\n");
  EXPECT_THROW(series_from_csv(missing, spec), std::invalid_argument);
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("graphchain_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    const std::string cmd = std::string("\"") + GRAPHCHAIN_CLI + "\" " + args + " 2>>\"" +
                            (dir_ / "stderr.txt").string() + "\"";
    return std::system(cmd.c_str());
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, EndToEndPipelineIsReproducible) {
  {
    std::ofstream cfg(path("exp.cfg"));
    cfg << "family = erdos_renyi\nn = 8\nd = 3\np_noise = 0.1\ncount = 5\n"
        << "depth = 1\nfeature_dim = 4\nmlp_hidden = 8\nepochs = 2\nprecision = f64\n";
  }
  const std::string common = "--config " + path("exp.cfg") + " --seed 7";
  ASSERT_EQ(run("generate " + common + " --out " + path("data.txt")), 0);
  ASSERT_EQ(run("generate " + common + " --out " + path("data2.txt")), 0);
  EXPECT_EQ(read_file(path("data.txt")), read_file(path("data2.txt")));

  ASSERT_EQ(run("train " + common + " --dataset " + path("data.txt") + " --out " + path("model.json")), 0);
  EXPECT_TRUE(fs::exists(path("model.curves.csv")));
  const std::string bench = "bench " + common + " --dataset " + path("data.txt") + " --model " +
                            path("model.json") + " --solvers proj_dcx,faq_dcx,chfgnn_faq,bruteforce";
  ASSERT_EQ(run(bench + " --out " + path("r1.csv")), 0);
  ASSERT_EQ(run(bench + " --out " + path("r2.csv") + " --threads 2"), 0);
  EXPECT_EQ(read_file(path("r1.csv")), read_file(path("r2.csv")));
  EXPECT_TRUE(fs::exists(path("r1.summary.json")));

  ASSERT_EQ(run("infer " + common + " --dataset " + path("data.txt") + " --model " + path("model.json") +
                " --out " + path("trace.csv")),
            0);
  ASSERT_EQ(run("oracle " + common + " --dataset " + path("data.txt") + " --out " + path("opt.csv")), 0);
  ASSERT_EQ(run("solve " + common + " --dataset " + path("data.txt") + " --set instance=1 --out " +
                path("solve.csv")),
            0);
  ASSERT_EQ(run("plot --in " + path("r1.csv") + " --out " + path("plot.svg") +
                " --x instance --y nce --series solver"),
            0);
  EXPECT_EQ(read_file(path("plot.svg")).rfind("<svg", 0), 0u);
}

TEST_F(Cli, ReportsErrors) {
  EXPECT_NE(run("generate --set bogus=1 --out " + path("x.txt")), 0);
  EXPECT_NE(run("bench --set n=12 --set count=1 --solvers bruteforce --out " + path("x.csv")), 0);
  EXPECT_NE(run("train --dataset " + path("missing.txt") + " --out " + path("m.json")), 0);
  EXPECT_NE(run(""), 0);
}

}  // namespace
}  // namespace graphchain
