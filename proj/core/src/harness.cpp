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

#include "graphchain/harness.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "graphchain/metrics.hpp"
#include "graphchain/parallel.hpp"
#include "graphchain/relaxations.hpp"
#include "json.hpp"

namespace graphchain {

namespace {

struct SolverName {
  Solver solver;
  const char* name;
};

constexpr SolverName kSolverNames[] = {
    {Solver::proj_dcx, "proj_dcx"},       {Solver::faq_dcx, "faq_dcx"},
    {Solver::fgnn_proj, "fgnn_proj"},     {Solver::fgnn_faq, "fgnn_faq"},
    {Solver::chfgnn_proj, "chfgnn_proj"}, {Solver::chfgnn_faq, "chfgnn_faq"},
    {Solver::faq_planted, "faq_planted"}, {Solver::bruteforce, "bruteforce"},
};

}  // namespace

std::string to_string(Solver s) {
  for (const auto& entry : kSolverNames) {
    if (entry.solver == s) return entry.name;
  }
  return "unknown";
}

Solver parse_solver(const std::string& s) {
  for (const auto& entry : kSolverNames) {
    if (s == entry.name) return entry.solver;
  }
  throw std::invalid_argument("unknown solver '" + s + "'");
}

std::vector<Solver> parse_solvers(const std::vector<std::string>& names) {
  std::vector<Solver> out;
  for (const auto& name : names) out.push_back(parse_solver(name));
  return out;
}

bool needs_model(Solver s) {
  return s == Solver::fgnn_proj || s == Solver::fgnn_faq || s == Solver::chfgnn_proj ||
         s == Solver::chfgnn_faq;
}

const std::vector<Solver>& all_solvers() {
  static const std::vector<Solver> solvers = [] {
    std::vector<Solver> v;
    for (const auto& entry : kSolverNames) v.push_back(entry.solver);
    return v;
  }();
  return solvers;
}

namespace {

/// The model in the precision it was trained with.
struct ModelView {
  const chaining::ChainModel<double>* f64 = nullptr;
  std::optional<chaining::ChainModel<float>> f32;

  explicit ModelView(const Checkpoint& cp) {
    if (cp.precision == tensor::Precision::f32) {
      f32 = cp.model.cast<float>();
    } else {
      f64 = &cp.model;
    }
  }

  DenseMatrix similarity(const Graph& a, const Graph& b, std::size_t stages) const {
    return f32 ? chaining::chain_similarity(a, b, *f32, stages)
               : chaining::chain_similarity(a, b, *f64, stages);
  }

  chaining::InferResult infer(const Graph& a, const Graph& b,
                              const chaining::InferConfig& cfg) const {
    return f32 ? chaining::infer_chain(a, b, *f32, cfg) : chaining::infer_chain(a, b, *f64, cfg);
  }
};

double ratio(std::size_t value, std::size_t reference) {
  if (reference == 0) return value == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  return static_cast<double>(value) / static_cast<double>(reference);
}

std::vector<ResultRow> bench_instance(std::size_t index, const InstanceTriplet& inst,
                                      const ModelView* model, const BenchOptions& opt) {
  const Graph& a = inst.graph_a;
  const Graph& b = inst.graph_b_permuted;
  const std::size_t n = a.size();
  using Clock = std::chrono::steady_clock;

  std::optional<BruteForceResult> brute;
  if (n <= kBruteForceMaxNodes) brute = gap_bruteforce(a, b);
  const FaqResult planted_faq = faq(a, b, inst.planted, opt.infer.faq);
  const std::size_t reference = brute ? brute->opt_nce : nce(a, b, planted_faq.permutation);

  std::optional<ConvexResult> dcx;
  std::optional<DenseMatrix> s0;

  std::vector<ResultRow> rows;
  for (Solver solver : opt.solvers) {
    ResultRow row;
    row.instance = index;
    row.family = inst.params.family;
    row.n = n;
    row.d = inst.params.d;
    row.noise = inst.params.p_noise;
    row.solver = solver;
    row.reference = brute ? "bruteforce" : "proxy";
    const auto start = Clock::now();
    switch (solver) {
      case Solver::proj_dcx:
      case Solver::faq_dcx: {
        if (!dcx) dcx = convex_relax(a, b, opt.convex);
        if (solver == Solver::proj_dcx) {
          row.permutation = proj(dcx->d);
          row.fw_iterations = dcx->report.iterations;
        } else {
          FaqResult r = faq(a, b, dcx->d, opt.infer.faq);
          row.permutation = std::move(r.permutation);
          row.fw_iterations = r.report.iterations;
        }
        break;
      }
      case Solver::fgnn_proj:
      case Solver::fgnn_faq: {
        if (!s0) s0 = model->similarity(a, b, 0);
        if (solver == Solver::fgnn_proj) {
          row.permutation = proj(*s0);
        } else {
          FaqResult r = faq_from_similarity(a, b, *s0, opt.infer.faq);
          row.permutation = std::move(r.permutation);
          row.fw_iterations = r.report.iterations;
        }
        break;
      }
      case Solver::chfgnn_proj:
      case Solver::chfgnn_faq: {
        chaining::InferConfig cfg = opt.infer;
        cfg.post = solver == Solver::chfgnn_proj ? chaining::PostProcess::proj
                                                 : chaining::PostProcess::faq;
        chaining::InferResult r = model->infer(a, b, cfg);
        row.permutation = std::move(r.permutation);
        row.fw_iterations = r.post_report.iterations;
        row.loop_count = r.loop_count;
        break;
      }
      case Solver::faq_planted:
        row.permutation = planted_faq.permutation;
        row.fw_iterations = planted_faq.report.iterations;
        break;
      case Solver::bruteforce:
        if (!brute) {
          throw std::invalid_argument("bruteforce solver needs n <= 10, instance " +
                                      std::to_string(index) + " has n = " + std::to_string(n));
        }
        row.permutation = brute->permutation;
        break;
    }
    if (opt.timing) {
      row.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    }
    row.acc = acc(row.permutation, inst.planted);
    row.nce = nce(a, b, row.permutation);
    row.ratio_vs_reference = ratio(row.nce, reference);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> run_bench(const Dataset& data, const Checkpoint* model,
                                 const BenchOptions& options) {
  if (options.solvers.empty()) throw std::invalid_argument("no solvers requested");
  bool learned = false;
  for (Solver s : options.solvers) learned = learned || needs_model(s);
  std::optional<ModelView> view;
  if (learned) {
    if (model == nullptr) throw std::invalid_argument("learned solvers need a model checkpoint");
    view.emplace(*model);
    options.infer.validate(model->model.depth());
  }
  std::vector<std::vector<ResultRow>> per_instance(data.instances.size());
  parallel_for(data.instances.size(), options.threads, [&](std::size_t i) {
    per_instance[i] = bench_instance(i, data.instances[i], view ? &*view : nullptr, options);
  });
  std::vector<ResultRow> rows;
  for (auto& block : per_instance) {
    for (auto& row : block) rows.push_back(std::move(row));
  }
  return rows;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows,
                       const ResultHeader& header) {
  out << "# graphchain " << header.version << " config " << header.config_hash << '\n';
  out << kResultColumns << '\n';
  for (const auto& r : rows) {
    out << r.instance << ',' << to_string(r.family) << ',' << r.n << ',' << format_double(r.d)
        << ',' << format_double(r.noise) << ',' << to_string(r.solver) << ','
        << format_double(r.acc) << ',' << r.nce << ',' << format_double(r.ratio_vs_reference)
        << ',' << r.reference << ',' << r.fw_iterations << ',' << r.loop_count << ',';
    if (r.wall_ms) out << format_double(*r.wall_ms);
    out << '\n';
  }
}

namespace {

struct Moments {
  double sum = 0.0, sq = 0.0;
  void add(double v) {
    sum += v;
    sq += v * v;
  }
  std::pair<double, double> mean_stderr(std::size_t count) const {
    const double c = static_cast<double>(count);
    const double mean = sum / c;
    if (count < 2) return {mean, 0.0};
    const double var = std::max(0.0, (sq - c * mean * mean) / (c - 1.0));
    return {mean, std::sqrt(var / c)};
  }
};

}  // namespace

std::vector<SummaryCell> summarize(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<int, std::size_t, double, int>;
  std::map<Key, std::size_t> index;
  std::vector<SummaryCell> cells;
  std::vector<std::array<Moments, 5>> moments;
  for (const auto& r : rows) {
    const Key key{static_cast<int>(r.family), r.n, r.noise, static_cast<int>(r.solver)};
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, cells.size()).first;
      SummaryCell c;
      c.family = r.family;
      c.n = r.n;
      c.noise = r.noise;
      c.solver = r.solver;
      cells.push_back(c);
      moments.emplace_back();
    }
    auto& m = moments[it->second];
    ++cells[it->second].count;
    m[0].add(r.acc);
    m[1].add(static_cast<double>(r.nce));
    m[2].add(r.ratio_vs_reference);
    m[3].add(static_cast<double>(r.fw_iterations));
    m[4].add(static_cast<double>(r.loop_count));
  }
  for (std::size_t k = 0; k < cells.size(); ++k) {
    auto& c = cells[k];
    std::tie(c.mean_acc, c.stderr_acc) = moments[k][0].mean_stderr(c.count);
    std::tie(c.mean_nce, c.stderr_nce) = moments[k][1].mean_stderr(c.count);
    std::tie(c.mean_ratio, c.stderr_ratio) = moments[k][2].mean_stderr(c.count);
    std::tie(c.mean_fw_iterations, c.stderr_fw_iterations) = moments[k][3].mean_stderr(c.count);
    std::tie(c.mean_loop_count, c.stderr_loop_count) = moments[k][4].mean_stderr(c.count);
  }
  return cells;
}

void write_summary_json(std::ostream& out, const std::vector<SummaryCell>& cells,
                        const ResultHeader& header) {
  using nlohmann::ordered_json;
  ordered_json list = ordered_json::array();
  auto stat = [](double mean, double err) { return ordered_json{{"mean", mean}, {"stderr", err}}; };
  for (const auto& c : cells) {
    list.push_back({{"family", std::string(to_string(c.family))},
                    {"n", c.n},
                    {"noise", c.noise},
                    {"solver", to_string(c.solver)},
                    {"count", c.count},
                    {"acc", stat(c.mean_acc, c.stderr_acc)},
                    {"nce", stat(c.mean_nce, c.stderr_nce)},
                    {"ratio_vs_reference", stat(c.mean_ratio, c.stderr_ratio)},
                    {"fw_iterations", stat(c.mean_fw_iterations, c.stderr_fw_iterations)},
                    {"loop_count", stat(c.mean_loop_count, c.stderr_loop_count)}});
  }
  ordered_json root = {{"version", header.version},
                       {"config_hash", header.config_hash},
                       {"cells", list}};
  out << root.dump(2) << '\n';
}

std::vector<OracleRow> run_oracle(const Dataset& data, std::size_t threads) {
  if (data.params.n > kBruteForceMaxNodes) {
    throw std::invalid_argument("oracle needs n <= 10, dataset has n = " +
                                std::to_string(data.params.n));
  }
  std::vector<OracleRow> rows(data.instances.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const auto& inst = data.instances[i];
    BruteForceResult r = gap_bruteforce(inst.graph_a, inst.graph_b_permuted);
    rows[i] = {i, inst.graph_a.size(), inst.graph_a.edge_count(),
               nce(inst.graph_a, inst.graph_b_permuted, inst.planted), r.opt_nce,
               std::move(r.permutation)};
  });
  return rows;
}

namespace {

void write_mapping(std::ostream& out, const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
}

}  // namespace

void write_oracle_csv(std::ostream& out, const std::vector<OracleRow>& rows,
                      const ResultHeader& header) {
  out << "# graphchain " << header.version << " config " << header.config_hash << '\n';
  out << "instance,n,edges_a,planted_nce,opt_nce,optimum\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << r.n << ',' << r.edges_a << ',' << r.planted_nce << ','
        << r.opt_nce << ',';
    write_mapping(out, r.optimum);
    out << '\n';
  }
}

InferOutput run_infer(const Dataset& data, const Checkpoint& model,
                      const chaining::InferConfig& cfg, std::size_t threads) {
  const ModelView view(model);
  cfg.validate(model.model.depth());
  InferOutput out;
  out.results.resize(data.instances.size());
  parallel_for(data.instances.size(), threads, [&](std::size_t i) {
    const auto& inst = data.instances[i];
    out.results[i] = view.infer(inst.graph_a, inst.graph_b_permuted, cfg);
  });
  for (std::size_t i = 0; i < out.results.size(); ++i) {
    const auto& trace = out.results[i].trace;
    for (std::size_t k = 0; k < trace.size(); ++k) out.trace.push_back({i, k, trace[k]});
  }
  return out;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows,
                     const ResultHeader& header) {
  out << "# graphchain " << header.version << " config " << header.config_hash << '\n';
  out << "instance,step,kind,network,proj_nce,faq_nce,faq_iterations,accepted\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << r.step << ',' << chaining::to_string(r.info.kind) << ','
        << r.info.network << ',' << r.info.proj_nce << ',' << r.info.faq_nce << ','
        << r.info.faq_iterations << ',' << (r.info.accepted ? 1 : 0) << '\n';
  }
}

void write_curves_csv(std::ostream& out, const std::vector<chaining::StageCurve>& curves) {
  out << "stage,epoch,train_loss,val_loss,val_acc,learning_rate\n";
  for (std::size_t s = 0; s < curves.size(); ++s) {
    const auto& c = curves[s];
    for (std::size_t e = 0; e < c.train_loss.size(); ++e) {
      out << s << ',' << e << ',' << format_double(c.train_loss[e]) << ','
          << format_double(c.val_loss[e]) << ',' << format_double(c.val_acc[e]) << ','
          << format_double(c.learning_rate[e]) << '\n';
    }
  }
}

}  // namespace graphchain
