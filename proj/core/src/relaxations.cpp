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

#include "graphchain/relaxations.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "graphchain/metrics.hpp"

namespace graphchain {
namespace {

std::atomic<std::uint64_t> g_audit_runs{0};
std::atomic<std::uint64_t> g_audit_violations{0};

void audit(const FwReport& report, bool maximize) {
  g_audit_runs.fetch_add(1, std::memory_order_relaxed);
  if (!report.monotone(maximize)) {
    g_audit_violations.fetch_add(1, std::memory_order_relaxed);
  }
}

using Neighbors = std::vector<std::vector<std::size_t>>;

// Row i of A*D is the sum of the rows of D indexed by N_A(i), added in
// ascending neighbour order. Keeping the order fixed makes A(J/n) and (J/n)B
// bit-identical for equal-degree regular graphs.
DenseMatrix left_mul(const Neighbors& na, const DenseMatrix& d) {
  DenseMatrix out = DenseMatrix::Zero(d.rows(), d.cols());
  for (std::size_t i = 0; i < na.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    for (std::size_t k : na[i]) out.row(row) += d.row(static_cast<Eigen::Index>(k));
  }
  return out;
}

DenseMatrix right_mul(const DenseMatrix& d, const Neighbors& nb) {
  DenseMatrix out = DenseMatrix::Zero(d.rows(), d.cols());
  for (std::size_t j = 0; j < nb.size(); ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    for (std::size_t k : nb[j]) out.col(col) += d.col(static_cast<Eigen::Index>(k));
  }
  return out;
}

void require_same_size(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) throw std::invalid_argument("graphs differ in size");
}

bool stalled(double before, double after, double rel_tol) {
  const double scale = std::max(std::abs(before), std::numeric_limits<double>::min());
  return std::abs(after - before) <= rel_tol * scale;
}

ConvexResult run_convex(const Graph& a, const Graph& b, DenseMatrix d,
                        const FwConfig& cfg) {
  cfg.validate();
  const Neighbors na = a.neighbors();
  const Neighbors nb = b.neighbors();
  DenseMatrix r = left_mul(na, d) - right_mul(d, nb);
  double f = r.squaredNorm();

  FwReport report;
  report.initial_objective = f;
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    const DenseMatrix grad = 2.0 * (left_mul(na, r) - right_mul(r, nb));
    const DenseMatrix q = lap_max(-grad).permutation.matrix();
    const DenseMatrix delta = q - d;
    const DenseMatrix e = left_mul(na, delta) - right_mul(delta, nb);
    const double ee = e.squaredNorm();
    const double re = r.cwiseProduct(e).sum();
    double alpha = ee > 0.0 ? std::clamp(-re / ee, 0.0, 1.0) : 0.0;

    double f_new = f;
    if (alpha > 0.0) {
      DenseMatrix d_new = d + alpha * delta;
      DenseMatrix r_new = left_mul(na, d_new) - right_mul(d_new, nb);
      f_new = r_new.squaredNorm();
      if (f_new <= f) {
        d = std::move(d_new);
        r = std::move(r_new);
      } else {
        // Rounding made the exact minimiser look worse; keep the iterate.
        f_new = f;
      }
    }
    report.objective_trace.push_back(f_new);
    ++report.iterations;
    const bool done = f_new == 0.0 || stalled(f, f_new, cfg.rel_tol);
    f = f_new;
    if (done) {
      report.converged = true;
      break;
    }
  }
  audit(report, /*maximize=*/false);
  return {std::move(d), std::move(report)};
}

}  // namespace

void FwConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
}

bool FwReport::monotone(bool maximize) const {
  double prev = initial_objective;
  for (double f : objective_trace) {
    if (maximize ? f < prev : f > prev) return false;
    prev = f;
  }
  return true;
}

FwAuditCounts fw_audit() {
  return {g_audit_runs.load(), g_audit_violations.load()};
}

void reset_fw_audit() {
  g_audit_runs = 0;
  g_audit_violations = 0;
}

DenseMatrix barycenter(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  return DenseMatrix::Constant(m, m, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
}

double convex_objective(const Graph& a, const Graph& b, const DenseMatrix& d) {
  require_same_size(a, b);
  return (left_mul(a.neighbors(), d) - right_mul(d, b.neighbors())).squaredNorm();
}

double indefinite_objective(const Graph& a, const Graph& b, const DenseMatrix& d) {
  require_same_size(a, b);
  return left_mul(a.neighbors(), d).cwiseProduct(right_mul(d, b.neighbors())).sum();
}

ConvexResult convex_relax(const Graph& a, const Graph& b, const FwConfig& cfg) {
  require_same_size(a, b);
  return run_convex(a, b, barycenter(a.size()), cfg);
}

ConvexResult convex_relax(const Graph& a, const Graph& b, const DenseMatrix& init,
                          const FwConfig& cfg) {
  require_same_size(a, b);
  if (init.rows() != static_cast<Eigen::Index>(a.size()) || !is_doubly_stochastic(init, 1e-6)) {
    throw std::invalid_argument("convex_relax init must be doubly stochastic of size n");
  }
  return run_convex(a, b, init, cfg);
}

FaqResult faq(const Graph& a, const Graph& b, const DenseMatrix& init, const FwConfig& cfg) {
  require_same_size(a, b);
  cfg.validate();
  if (init.rows() != static_cast<Eigen::Index>(a.size()) || !is_doubly_stochastic(init, 1e-6)) {
    throw std::invalid_argument("faq init must be doubly stochastic of size n");
  }
  const Neighbors na = a.neighbors();
  const Neighbors nb = b.neighbors();
  DenseMatrix d = init;
  DenseMatrix ad = left_mul(na, d);
  DenseMatrix db = right_mul(d, nb);
  double f = ad.cwiseProduct(db).sum();

  FwReport report;
  report.initial_objective = f;
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    const DenseMatrix grad = 2.0 * right_mul(ad, nb);
    const DenseMatrix q = lap_max(grad).permutation.matrix();
    const DenseMatrix a_delta = left_mul(na, q) - ad;
    const DenseMatrix delta_b = right_mul(q, nb) - db;
    const double lin = a_delta.cwiseProduct(db).sum() + ad.cwiseProduct(delta_b).sum();
    const double quad = a_delta.cwiseProduct(delta_b).sum();
    double alpha;
    if (quad < 0.0) {
      alpha = std::clamp(-lin / (2.0 * quad), 0.0, 1.0);
    } else {
      alpha = lin + quad > 0.0 ? 1.0 : 0.0;
    }

    double f_new = f;
    if (alpha > 0.0) {
      DenseMatrix d_new = d + alpha * (q - d);
      DenseMatrix ad_new = left_mul(na, d_new);
      DenseMatrix db_new = right_mul(d_new, nb);
      f_new = ad_new.cwiseProduct(db_new).sum();
      if (f_new >= f) {
        d = std::move(d_new);
        ad = std::move(ad_new);
        db = std::move(db_new);
      } else {
        f_new = f;
      }
    }
    report.objective_trace.push_back(f_new);
    ++report.iterations;
    const bool done = stalled(f, f_new, cfg.rel_tol);
    f = f_new;
    if (done) {
      report.converged = true;
      break;
    }
  }
  audit(report, /*maximize=*/true);
  Permutation p = proj(d);
  return {std::move(p), std::move(d), std::move(report)};
}

FaqResult faq(const Graph& a, const Graph& b, const Permutation& init, const FwConfig& cfg) {
  if (init.size() != a.size()) throw std::invalid_argument("faq init has wrong size");
  return faq(a, b, init.matrix(), cfg);
}

FaqResult faq_barycenter(const Graph& a, const Graph& b, const FwConfig& cfg) {
  return faq(a, b, barycenter(a.size()), cfg);
}

DenseMatrix sinkhorn_from_similarity(const DenseMatrix& s, int rounds) {
  DenseMatrix m(s.rows(), s.cols());
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    const double top = s.row(i).maxCoeff();
    m.row(i) = (s.row(i).array() - top).exp().matrix();
    m.row(i) /= m.row(i).sum();
  }
  m = m.array().max(1e-12).matrix();
  for (int k = 0; k < rounds; ++k) {
    m.array().colwise() /= m.rowwise().sum().array();
    m.array().rowwise() /= m.colwise().sum().array();
  }
  return m;
}

FaqResult faq_from_similarity(const Graph& a, const Graph& b, const DenseMatrix& s,
                              const FwConfig& cfg, SimilarityInit init) {
  require_same_size(a, b);
  if (s.rows() != static_cast<Eigen::Index>(a.size()) || s.cols() != s.rows()) {
    throw std::invalid_argument("similarity matrix has wrong shape");
  }
  if (init == SimilarityInit::projection) return faq(a, b, proj(s), cfg);
  // Rescaling only approaches double stochasticity; finish with the exact
  // tolerance check inside faq.
  DenseMatrix m = sinkhorn_from_similarity(s, 10);
  for (int extra = 0; extra < 1000 && !is_doubly_stochastic(m, 1e-7); ++extra) {
    m.array().colwise() /= m.rowwise().sum().array();
    m.array().rowwise() /= m.colwise().sum().array();
  }
  return faq(a, b, m, cfg);
}

BruteForceResult gap_bruteforce(const Graph& a, const Graph& b) {
  require_same_size(a, b);
  const std::size_t n = a.size();
  if (n > kBruteForceMaxNodes) {
    throw std::invalid_argument("gap_bruteforce is limited to n <= 10");
  }
  const auto edges = a.edges();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<std::size_t> best = p;
  std::size_t best_count = 0;
  bool first = true;
  do {
    std::size_t count = 0;
    for (const Edge& e : edges) count += b(p[e.u], p[e.v]);
    if (first || count > best_count) {
      best_count = count;
      best = p;
      first = false;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return {Permutation(std::move(best)), best_count};
}

}  // namespace graphchain
