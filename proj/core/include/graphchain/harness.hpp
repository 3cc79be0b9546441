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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "graphchain/chaining.hpp"
#include "graphchain/checkpoint.hpp"
#include "graphchain/dataset_io.hpp"

namespace graphchain {

enum class Solver {
  proj_dcx,
  faq_dcx,
  fgnn_proj,
  fgnn_faq,
  chfgnn_proj,
  chfgnn_faq,
  faq_planted,
  bruteforce,
};

std::string to_string(Solver s);
Solver parse_solver(const std::string& s);
std::vector<Solver> parse_solvers(const std::vector<std::string>& names);
bool needs_model(Solver s);
const std::vector<Solver>& all_solvers();

struct ResultRow {
  std::size_t instance = 0;
  Family family = Family::erdos_renyi;
  std::size_t n = 0;
  double d = 0.0;
  double noise = 0.0;
  Solver solver = Solver::proj_dcx;
  double acc = 0.0;
  std::size_t nce = 0;
  double ratio_vs_reference = 0.0;
  /// "bruteforce" for n <= 10, otherwise "proxy" (nce of FAQ from the planted
  /// permutation).
  std::string reference;
  /// FAQ direction steps for FAQ-based solvers, convex steps for proj_dcx.
  std::size_t fw_iterations = 0;
  std::size_t loop_count = 0;
  std::optional<double> wall_ms;
  Permutation permutation;
};

struct BenchOptions {
  std::vector<Solver> solvers;
  chaining::InferConfig infer;
  FwConfig convex = FwConfig::convex_defaults();
  std::size_t threads = 1;
  /// Off by default so result files are byte-reproducible.
  bool timing = false;
};

/// One row per (instance, solver) in instance-major order. `model` is
/// required when any learned solver is requested.
std::vector<ResultRow> run_bench(const Dataset& data, const Checkpoint* model,
                                 const BenchOptions& options);

struct ResultHeader {
  std::string config_hash;
  std::string version;
};

inline constexpr const char* kResultColumns =
    "instance,family,n,d,noise,solver,acc,nce,ratio_vs_reference,reference,fw_iterations,"
    "loop_count,wall_ms";

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows,
                       const ResultHeader& header);

struct SummaryCell {
  Family family = Family::erdos_renyi;
  std::size_t n = 0;
  double noise = 0.0;
  Solver solver = Solver::proj_dcx;
  std::size_t count = 0;
  double mean_acc = 0.0, stderr_acc = 0.0;
  double mean_nce = 0.0, stderr_nce = 0.0;
  double mean_ratio = 0.0, stderr_ratio = 0.0;
  double mean_fw_iterations = 0.0, stderr_fw_iterations = 0.0;
  double mean_loop_count = 0.0, stderr_loop_count = 0.0;
};

/// Mean and standard error per (family, n, noise, solver), in first-seen order.
std::vector<SummaryCell> summarize(const std::vector<ResultRow>& rows);
void write_summary_json(std::ostream& out, const std::vector<SummaryCell>& cells,
                        const ResultHeader& header);

struct OracleRow {
  std::size_t instance = 0;
  std::size_t n = 0;
  std::size_t edges_a = 0;
  std::size_t planted_nce = 0;
  std::size_t opt_nce = 0;
  Permutation optimum;
};

/// Exhaustive optimum per instance. Throws std::invalid_argument for n > 10.
std::vector<OracleRow> run_oracle(const Dataset& data, std::size_t threads = 1);
void write_oracle_csv(std::ostream& out, const std::vector<OracleRow>& rows,
                      const ResultHeader& header);

struct TraceRow {
  std::size_t instance = 0;
  std::size_t step = 0;
  chaining::InferStep info;
};

struct InferOutput {
  std::vector<chaining::InferResult> results;
  std::vector<TraceRow> trace;
};

InferOutput run_infer(const Dataset& data, const Checkpoint& model,
                      const chaining::InferConfig& cfg, std::size_t threads = 1);
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows,
                     const ResultHeader& header);

/// Per-stage training curves as CSV: stage,epoch,train_loss,val_loss,val_acc,learning_rate.
void write_curves_csv(std::ostream& out, const std::vector<chaining::StageCurve>& curves);

}  // namespace graphchain
