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

#include "graphchain/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace graphchain::tensor {
namespace {

[[noreturn]] void shape_error(const char* op, const Shape& a, const Shape& b) {
  throw std::invalid_argument(std::string(op) + ": incompatible shapes " + shape_string(a) +
                              " and " + shape_string(b));
}

void require_rank(const char* op, const Shape& s, std::size_t rank) {
  if (s.size() != rank) {
    throw std::invalid_argument(std::string(op) + ": expected rank " + std::to_string(rank) +
                                ", got " + shape_string(s));
  }
}

}  // namespace

template <typename T>
Var Tape<T>::constant(Tensor<T> value) {
  Node node;
  node.value = std::move(value);
  nodes_.push_back(std::move(node));
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

template <typename T>
Var Tape<T>::parameter(const Parameter<T>& p) {
  Node node;
  node.value = p.value;
  node.needs_grad = grad_enabled_;
  node.param = grad_enabled_ ? &p : nullptr;
  nodes_.push_back(std::move(node));
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

template <typename T>
void Tape<T>::accumulate_grad(Parameter<T>& p) const {
  for (const Node& node : nodes_) {
    if (node.param != &p || node.grad.empty()) continue;
    if (p.grad.shape() != p.value.shape()) p.grad = Tensor<T>(p.value.shape());
    for (std::size_t i = 0; i < p.grad.size(); ++i) p.grad[i] += node.grad[i];
  }
}

template <typename T>
Var Tape<T>::record(Tensor<T> value, std::initializer_list<Var> inputs, Backward backward) {
  Node node;
  node.value = std::move(value);
  if (grad_enabled_) {
    for (Var v : inputs) node.needs_grad = node.needs_grad || nodes_[v.id].needs_grad;
  }
  if (node.needs_grad) node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

template <typename T>
Tensor<T>& Tape<T>::grad(Var v) {
  Node& node = nodes_[v.id];
  if (node.grad.size() != node.value.size() || node.grad.shape() != node.value.shape()) {
    node.grad = Tensor<T>(node.value.shape());
  }
  return node.grad;
}

template <typename T>
void Tape<T>::backward(Var out) {
  if (nodes_[out.id].value.size() != 1) {
    throw std::invalid_argument("backward needs a single-element output");
  }
  grad(out).fill(T{1});
  for (std::size_t k = out.id + 1; k-- > 0;) {
    Node& node = nodes_[k];
    if (!node.needs_grad || node.grad.empty()) continue;
    if (node.backward) node.backward(*this);
  }
}

template <typename T>
Var matmul(Tape<T>& t, Var a, Var b) {
  const auto& av = t.value(a);
  const auto& bv = t.value(b);
  require_rank("matmul", av.shape(), 2);
  require_rank("matmul", bv.shape(), 2);
  if (av.dim(1) != bv.dim(0)) shape_error("matmul", av.shape(), bv.shape());
  Tensor<T> out({av.dim(0), bv.dim(1)});
  out.matrix().noalias() = av.matrix() * bv.matrix();
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {a, b}, [a, b, o](Tape<T>& tp) {
    const auto g = tp.grad(o).matrix();
    if (tp.needs_grad(a)) tp.grad(a).matrix().noalias() += g * tp.value(b).matrix().transpose();
    if (tp.needs_grad(b)) tp.grad(b).matrix().noalias() += tp.value(a).matrix().transpose() * g;
  });
}

template <typename T>
Var matmul_nt(Tape<T>& t, Var a, Var b) {
  const auto& av = t.value(a);
  const auto& bv = t.value(b);
  require_rank("matmul_nt", av.shape(), 2);
  require_rank("matmul_nt", bv.shape(), 2);
  if (av.dim(1) != bv.dim(1)) shape_error("matmul_nt", av.shape(), bv.shape());
  Tensor<T> out({av.dim(0), bv.dim(0)});
  out.matrix().noalias() = av.matrix() * bv.matrix().transpose();
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {a, b}, [a, b, o](Tape<T>& tp) {
    const auto g = tp.grad(o).matrix();
    if (tp.needs_grad(a)) tp.grad(a).matrix().noalias() += g * tp.value(b).matrix();
    if (tp.needs_grad(b)) tp.grad(b).matrix().noalias() += g.transpose() * tp.value(a).matrix();
  });
}

template <typename T>
Var add(Tape<T>& t, Var a, Var b) {
  const auto& av = t.value(a);
  const auto& bv = t.value(b);
  if (av.shape() != bv.shape()) shape_error("add", av.shape(), bv.shape());
  Tensor<T> out = av;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += bv[i];
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {a, b}, [a, b, o](Tape<T>& tp) {
    const auto& g = tp.grad(o);
    for (Var v : {a, b}) {
      if (!tp.needs_grad(v)) continue;
      auto& gv = tp.grad(v);
      for (std::size_t i = 0; i < g.size(); ++i) gv[i] += g[i];
    }
  });
}

template <typename T>
Var mul(Tape<T>& t, Var a, Var b) {
  const auto& av = t.value(a);
  const auto& bv = t.value(b);
  if (av.shape() != bv.shape()) shape_error("mul", av.shape(), bv.shape());
  Tensor<T> out = av;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= bv[i];
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {a, b}, [a, b, o](Tape<T>& tp) {
    const auto& g = tp.grad(o);
    if (tp.needs_grad(a)) {
      auto& ga = tp.grad(a);
      const auto& bv2 = tp.value(b);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * bv2[i];
    }
    if (tp.needs_grad(b)) {
      auto& gb = tp.grad(b);
      const auto& av2 = tp.value(a);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * av2[i];
    }
  });
}

template <typename T>
Var add_row(Tape<T>& t, Var x, Var bias) {
  const auto& xv = t.value(x);
  const auto& bv = t.value(bias);
  require_rank("add_row", xv.shape(), 2);
  if (bv.size() != xv.dim(1)) shape_error("add_row", xv.shape(), bv.shape());
  Tensor<T> out = xv;
  const std::size_t rows = xv.dim(0), cols = xv.dim(1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out[r * cols + c] += bv[c];
  }
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {x, bias}, [x, bias, o, rows, cols](Tape<T>& tp) {
    const auto& g = tp.grad(o);
    if (tp.needs_grad(x)) {
      auto& gx = tp.grad(x);
      for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i];
    }
    if (tp.needs_grad(bias)) {
      auto& gb = tp.grad(bias);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) gb[c] += g[r * cols + c];
      }
    }
  });
}

template <typename T>
Var scale(Tape<T>& t, Var x, T factor) {
  Tensor<T> out = t.value(x);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= factor;
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {x}, [x, o, factor](Tape<T>& tp) {
    const auto& g = tp.grad(o);
    auto& gx = tp.grad(x);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += factor * g[i];
  });
}

template <typename T>
Var concat_last(Tape<T>& t, Var a, Var b) {
  const auto& av = t.value(a);
  const auto& bv = t.value(b);
  require_rank("concat_last", av.shape(), 2);
  require_rank("concat_last", bv.shape(), 2);
  if (av.dim(0) != bv.dim(0)) shape_error("concat_last", av.shape(), bv.shape());
  const std::size_t rows = av.dim(0), ca = av.dim(1), cb = bv.dim(1);
  Tensor<T> out({rows, ca + cb});
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy_n(&av[r * ca], ca, &out[r * (ca + cb)]);
    std::copy_n(&bv[r * cb], cb, &out[r * (ca + cb) + ca]);
  }
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {a, b}, [a, b, o, rows, ca, cb](Tape<T>& tp) {
    const auto& g = tp.grad(o);
    if (tp.needs_grad(a)) {
      auto& ga = tp.grad(a);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < ca; ++c) ga[r * ca + c] += g[r * (ca + cb) + c];
      }
    }
    if (tp.needs_grad(b)) {
      auto& gb = tp.grad(b);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cb; ++c) gb[r * cb + c] += g[r * (ca + cb) + ca + c];
      }
    }
  });
}

template <typename T>
Var relu(Tape<T>& t, Var x) {
  Tensor<T> out = t.value(x);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] > T{0} ? out[i] : T{0};
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {x}, [x, o](Tape<T>& tp) {
    const auto& g = tp.grad(o);
    const auto& xv = tp.value(x);
    auto& gx = tp.grad(x);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (xv[i] > T{0}) gx[i] += g[i];
    }
  });
}

template <typename T>
Var embedding(Tape<T>& t, Var table, std::vector<std::size_t> indices) {
  const auto& tv = t.value(table);
  require_rank("embedding", tv.shape(), 2);
  const std::size_t rows = tv.dim(0), d = tv.dim(1);
  Tensor<T> out({indices.size(), d});
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] >= rows) throw std::out_of_range("embedding index out of range");
    std::copy_n(&tv[indices[r] * d], d, &out[r * d]);
  }
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {table},
                  [table, o, d, idx = std::move(indices)](Tape<T>& tp) {
                    const auto& g = tp.grad(o);
                    auto& gt = tp.grad(table);
                    for (std::size_t r = 0; r < idx.size(); ++r) {
                      for (std::size_t c = 0; c < d; ++c) gt[idx[r] * d + c] += g[r * d + c];
                    }
                  });
}

template <typename T>
Var max_over_axis(Tape<T>& t, Var x, std::size_t axis) {
  const auto& xv = t.value(x);
  if (axis >= xv.rank()) throw std::invalid_argument("max_over_axis: axis out of range");
  std::size_t outer = 1, inner = 1;
  for (std::size_t k = 0; k < axis; ++k) outer *= xv.dim(k);
  for (std::size_t k = axis + 1; k < xv.rank(); ++k) inner *= xv.dim(k);
  const std::size_t len = xv.dim(axis);
  if (len == 0) throw std::invalid_argument("max_over_axis: empty axis");
  Shape out_shape;
  for (std::size_t k = 0; k < xv.rank(); ++k) {
    if (k != axis) out_shape.push_back(xv.dim(k));
  }
  Tensor<T> out(out_shape);
  std::vector<std::size_t> arg(outer * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < inner; ++i) {
      std::size_t best = o * len * inner + i;
      for (std::size_t k = 1; k < len; ++k) {
        const std::size_t idx = (o * len + k) * inner + i;
        if (xv[idx] > xv[best]) best = idx;
      }
      out[o * inner + i] = xv[best];
      arg[o * inner + i] = best;
    }
  }
  Var ov{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {x}, [x, ov, arg = std::move(arg)](Tape<T>& tp) {
    const auto& g = tp.grad(ov);
    auto& gx = tp.grad(x);
    for (std::size_t k = 0; k < arg.size(); ++k) gx[arg[k]] += g[k];
  });
}

template <typename T>
Var reshape(Tape<T>& t, Var x, Shape shape) {
  Tensor<T> out = t.value(x).reshaped(std::move(shape));
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {x}, [x, o](Tape<T>& tp) {
    const auto& g = tp.grad(o);
    auto& gx = tp.grad(x);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i];
  });
}

template <typename T>
Var row_softmax(Tape<T>& t, Var x) {
  const auto& xv = t.value(x);
  require_rank("row_softmax", xv.shape(), 2);
  const std::size_t rows = xv.dim(0), cols = xv.dim(1);
  Tensor<T> out(xv.shape());
  for (std::size_t r = 0; r < rows; ++r) {
    const T* row = &xv[r * cols];
    const T top = *std::max_element(row, row + cols);
    T z{0};
    for (std::size_t c = 0; c < cols; ++c) {
      out[r * cols + c] = std::exp(row[c] - top);
      z += out[r * cols + c];
    }
    for (std::size_t c = 0; c < cols; ++c) out[r * cols + c] /= z;
  }
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {x}, [x, o, rows, cols](Tape<T>& tp) {
    const auto& g = tp.grad(o);
    const auto& y = tp.value(o);
    auto& gx = tp.grad(x);
    for (std::size_t r = 0; r < rows; ++r) {
      T dot{0};
      for (std::size_t c = 0; c < cols; ++c) dot += g[r * cols + c] * y[r * cols + c];
      for (std::size_t c = 0; c < cols; ++c) {
        gx[r * cols + c] += y[r * cols + c] * (g[r * cols + c] - dot);
      }
    }
  });
}

template <typename T>
Var graph_norm(Tape<T>& t, Var x, Var gamma, Var beta, T eps) {
  const auto& xv = t.value(x);
  require_rank("graph_norm", xv.shape(), 2);
  const std::size_t rows = xv.dim(0), cols = xv.dim(1);
  if (t.value(gamma).size() != cols || t.value(beta).size() != cols) {
    shape_error("graph_norm", xv.shape(), t.value(gamma).shape());
  }
  if (rows == 0) throw std::invalid_argument("graph_norm: no rows");
  std::vector<T> mean(cols, T{0}), var(cols, T{0});
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) mean[c] += xv[r * cols + c];
  }
  for (auto& m : mean) m /= static_cast<T>(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const T dlt = xv[r * cols + c] - mean[c];
      var[c] += dlt * dlt;
    }
  }
  std::vector<T> inv_std(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    inv_std[c] = T{1} / std::sqrt(var[c] / static_cast<T>(rows) + eps);
  }
  Tensor<T> x_hat(xv.shape());
  Tensor<T> out(xv.shape());
  const auto& gv = t.value(gamma);
  const auto& bv = t.value(beta);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t k = r * cols + c;
      x_hat[k] = (xv[k] - mean[c]) * inv_std[c];
      out[k] = gv[c] * x_hat[k] + bv[c];
    }
  }
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(
      std::move(out), {x, gamma, beta},
      [x, gamma, beta, o, rows, cols, x_hat = std::move(x_hat),
       inv_std = std::move(inv_std)](Tape<T>& tp) {
        const auto& g = tp.grad(o);
        if (tp.needs_grad(gamma) || tp.needs_grad(beta)) {
          std::vector<T> dg(cols, T{0}), db(cols, T{0});
          for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
              dg[c] += g[r * cols + c] * x_hat[r * cols + c];
              db[c] += g[r * cols + c];
            }
          }
          if (tp.needs_grad(gamma)) {
            auto& gg = tp.grad(gamma);
            for (std::size_t c = 0; c < cols; ++c) gg[c] += dg[c];
          }
          if (tp.needs_grad(beta)) {
            auto& gb = tp.grad(beta);
            for (std::size_t c = 0; c < cols; ++c) gb[c] += db[c];
          }
        }
        if (tp.needs_grad(x)) {
          const auto& gv2 = tp.value(gamma);
          std::vector<T> mean_dxh(cols, T{0}), mean_dxh_xh(cols, T{0});
          for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
              const std::size_t k = r * cols + c;
              const T dxh = g[k] * gv2[c];
              mean_dxh[c] += dxh;
              mean_dxh_xh[c] += dxh * x_hat[k];
            }
          }
          const T inv_rows = T{1} / static_cast<T>(rows);
          auto& gx = tp.grad(x);
          for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
              const std::size_t k = r * cols + c;
              const T dxh = g[k] * gv2[c];
              gx[k] += inv_std[c] * (dxh - mean_dxh[c] * inv_rows -
                                     x_hat[k] * mean_dxh_xh[c] * inv_rows);
            }
          }
        }
      });
}

template <typename T>
Var pair_matmul(Tape<T>& t, Var x, Var y, std::size_t n) {
  const auto& xv = t.value(x);
  const auto& yv = t.value(y);
  require_rank("pair_matmul", xv.shape(), 2);
  if (xv.shape() != yv.shape() || xv.dim(0) != n * n) {
    shape_error("pair_matmul", xv.shape(), yv.shape());
  }
  const std::size_t c = xv.dim(1);
  const std::size_t row = n * c;  // stride of index i in (i, j, c)
  Tensor<T> out(xv.shape());
  for (std::size_t i = 0; i < n; ++i) {
    T* out_i = &out[i * row];
    for (std::size_t l = 0; l < n; ++l) {
      const T* x_il = &xv[i * row + l * c];
      const T* y_l = &yv[l * row];
      for (std::size_t j = 0; j < n; ++j) {
        T* o = out_i + j * c;
        const T* yy = y_l + j * c;
        for (std::size_t k = 0; k < c; ++k) o[k] += x_il[k] * yy[k];
      }
    }
  }
  Var ov{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {x, y}, [x, y, ov, n, c, row](Tape<T>& tp) {
    const auto& g = tp.grad(ov);
    const auto& xv2 = tp.value(x);
    const auto& yv2 = tp.value(y);
    if (tp.needs_grad(x)) {
      // gx[i,l] = Σ_j g[i,j] * y[l,j]
      auto& gx = tp.grad(x);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < n; ++l) {
          T* gx_il = &gx[i * row + l * c];
          for (std::size_t j = 0; j < n; ++j) {
            const T* gg = &g[i * row + j * c];
            const T* yy = &yv2[l * row + j * c];
            for (std::size_t k = 0; k < c; ++k) gx_il[k] += gg[k] * yy[k];
          }
        }
      }
    }
    if (tp.needs_grad(y)) {
      // gy[l,j] = Σ_i x[i,l] * g[i,j]
      auto& gy = tp.grad(y);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < n; ++l) {
          const T* x_il = &xv2[i * row + l * c];
          T* gy_l = &gy[l * row];
          const T* g_i = &g[i * row];
          for (std::size_t j = 0; j < n; ++j) {
            T* o = gy_l + j * c;
            const T* gg = g_i + j * c;
            for (std::size_t k = 0; k < c; ++k) o[k] += x_il[k] * gg[k];
          }
        }
      }
    }
  });
}

template <typename T>
Var cross_entropy(Tape<T>& t, Var logits, std::vector<std::size_t> targets) {
  const auto& lv = t.value(logits);
  require_rank("cross_entropy", lv.shape(), 2);
  const std::size_t rows = lv.dim(0), cols = lv.dim(1);
  if (targets.size() != rows) throw std::invalid_argument("cross_entropy: target count mismatch");
  Tensor<T> probs(lv.shape());
  T total{0};
  for (std::size_t r = 0; r < rows; ++r) {
    if (targets[r] >= cols) throw std::out_of_range("cross_entropy: target out of range");
    const T* row = &lv[r * cols];
    const T top = *std::max_element(row, row + cols);
    T z{0};
    for (std::size_t c = 0; c < cols; ++c) {
      probs[r * cols + c] = std::exp(row[c] - top);
      z += probs[r * cols + c];
    }
    for (std::size_t c = 0; c < cols; ++c) probs[r * cols + c] /= z;
    total += top + std::log(z) - row[targets[r]];
  }
  Tensor<T> out({1}, std::vector<T>{total});
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {logits},
                  [logits, o, rows, cols, probs = std::move(probs),
                   tg = std::move(targets)](Tape<T>& tp) {
                    const T g = tp.grad(o)[0];
                    auto& gl = tp.grad(logits);
                    for (std::size_t r = 0; r < rows; ++r) {
                      for (std::size_t c = 0; c < cols; ++c) {
                        gl[r * cols + c] += g * probs[r * cols + c];
                      }
                      gl[r * cols + tg[r]] -= g;
                    }
                  });
}

template <typename T>
Var scatter_diagonal(Tape<T>& t, Var rows) {
  const auto& rv = t.value(rows);
  require_rank("scatter_diagonal", rv.shape(), 2);
  const std::size_t n = rv.dim(0), d = rv.dim(1);
  Tensor<T> out({n * n, d});
  for (std::size_t i = 0; i < n; ++i) std::copy_n(&rv[i * d], d, &out[(i * n + i) * d]);
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {rows}, [rows, o, n, d](Tape<T>& tp) {
    const auto& g = tp.grad(o);
    auto& gr = tp.grad(rows);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < d; ++c) gr[i * d + c] += g[(i * n + i) * d + c];
    }
  });
}

template <typename T>
Var sum(Tape<T>& t, Var x) {
  const auto& xv = t.value(x);
  T total{0};
  for (std::size_t i = 0; i < xv.size(); ++i) total += xv[i];
  Tensor<T> out({1}, std::vector<T>{total});
  Var o{static_cast<std::uint32_t>(t.size())};
  return t.record(std::move(out), {x}, [x, o](Tape<T>& tp) {
    const T g = tp.grad(o)[0];
    auto& gx = tp.grad(x);
    for (std::size_t i = 0; i < gx.size(); ++i) gx[i] += g;
  });
}

#define GRAPHCHAIN_INSTANTIATE_OPS(T)                                              \
  template class Tape<T>;                                                          \
  template Var matmul<T>(Tape<T>&, Var, Var);                                      \
  template Var matmul_nt<T>(Tape<T>&, Var, Var);                                   \
  template Var add<T>(Tape<T>&, Var, Var);                                         \
  template Var mul<T>(Tape<T>&, Var, Var);                                         \
  template Var add_row<T>(Tape<T>&, Var, Var);                                     \
  template Var scale<T>(Tape<T>&, Var, T);                                         \
  template Var concat_last<T>(Tape<T>&, Var, Var);                                 \
  template Var relu<T>(Tape<T>&, Var);                                             \
  template Var embedding<T>(Tape<T>&, Var, std::vector<std::size_t>);              \
  template Var max_over_axis<T>(Tape<T>&, Var, std::size_t);                       \
  template Var reshape<T>(Tape<T>&, Var, Shape);                                   \
  template Var row_softmax<T>(Tape<T>&, Var);                                      \
  template Var graph_norm<T>(Tape<T>&, Var, Var, Var, T);                          \
  template Var pair_matmul<T>(Tape<T>&, Var, Var, std::size_t);                    \
  template Var cross_entropy<T>(Tape<T>&, Var, std::vector<std::size_t>);          \
  template Var scatter_diagonal<T>(Tape<T>&, Var);                                 \
  template Var sum<T>(Tape<T>&, Var);

GRAPHCHAIN_INSTANTIATE_OPS(float)
GRAPHCHAIN_INSTANTIATE_OPS(double)

#undef GRAPHCHAIN_INSTANTIATE_OPS

}  // namespace graphchain::tensor
