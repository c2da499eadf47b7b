// Copyright 2026 The SRK Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "srk/nn/tape.hpp"

#include <cmath>
#include <utility>

#include "srk/common/error.hpp"

namespace srk::nn {

namespace {
constexpr double kLnEps = 1e-5;        // layer norm variance floor
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
}  // namespace

NodeRef Tape::push(Mat value, bool needs_grad, std::function<void(Tape&, Node&)> back) {
  Node node;
  node.value = std::move(value);
  node.needs_grad = needs_grad;
  if (needs_grad) {
    node.grad = Mat::Zero(node.value.rows(), node.value.cols());
    node.back = std::move(back);
  }
  nodes_.push_back(std::move(node));
  return NodeRef{static_cast<int>(nodes_.size()) - 1};
}

NodeRef Tape::input(Mat value, bool requires_grad) {
  return push(std::move(value), requires_grad, nullptr);
}

NodeRef Tape::param(Parameter& p) {
  NodeRef r = push(p.value, p.trainable, nullptr);
  nodes_[r.idx].parameter = p.trainable ? &p : nullptr;
  return r;
}

NodeRef Tape::matmul(NodeRef a, NodeRef b) {
  const Mat& av = value(a);
  const Mat& bv = value(b);
  if (av.cols() != bv.rows()) throw ValidationError("matmul: inner dimensions do not match");
  return push(av * bv, needs(a) || needs(b), [a, b](Tape& t, Node& n) {
    if (t.needs(a)) t.grad_ref(a).noalias() += n.grad * t.value(b).transpose();
    if (t.needs(b)) t.grad_ref(b).noalias() += t.value(a).transpose() * n.grad;
  });
}

NodeRef Tape::matmul_nt(NodeRef a, NodeRef b) {
  const Mat& av = value(a);
  const Mat& bv = value(b);
  if (av.cols() != bv.cols()) throw ValidationError("matmul_nt: inner dimensions do not match");
  return push(av * bv.transpose(), needs(a) || needs(b), [a, b](Tape& t, Node& n) {
    if (t.needs(a)) t.grad_ref(a).noalias() += n.grad * t.value(b);
    if (t.needs(b)) t.grad_ref(b).noalias() += n.grad.transpose() * t.value(a);
  });
}

NodeRef Tape::add(NodeRef a, NodeRef b) {
  const Mat& av = value(a);
  const Mat& bv = value(b);
  if (av.rows() != bv.rows() || av.cols() != bv.cols())
    throw ValidationError("add: shapes do not match");
  return push(av + bv, needs(a) || needs(b), [a, b](Tape& t, Node& n) {
    if (t.needs(a)) t.grad_ref(a) += n.grad;
    if (t.needs(b)) t.grad_ref(b) += n.grad;
  });
}

NodeRef Tape::add_rowvec(NodeRef a, NodeRef row) {
  const Mat& av = value(a);
  const Mat& rv = value(row);
  if (rv.rows() != 1 || rv.cols() != av.cols())
    throw ValidationError("add_rowvec: bias must be 1 x cols");
  Mat out = av;
  out.rowwise() += rv.row(0);
  return push(std::move(out), needs(a) || needs(row), [a, row](Tape& t, Node& n) {
    if (t.needs(a)) t.grad_ref(a) += n.grad;
    if (t.needs(row)) t.grad_ref(row) += n.grad.colwise().sum();
  });
}

NodeRef Tape::scale(NodeRef a, double s) {
  return push(value(a) * s, needs(a), [a, s](Tape& t, Node& n) {
    if (t.needs(a)) t.grad_ref(a) += n.grad * s;
  });
}

NodeRef Tape::add_const(NodeRef a, Mat c) {
  const Mat& av = value(a);
  if (av.rows() != c.rows() || av.cols() != c.cols())
    throw ValidationError("add_const: shapes do not match");
  return push(av + c, needs(a), [a](Tape& t, Node& n) {
    if (t.needs(a)) t.grad_ref(a) += n.grad;
  });
}

NodeRef Tape::gelu(NodeRef a) {
  const Mat& x = value(a);
  Mat out = x.unaryExpr([](double v) { return 0.5 * v * (1.0 + std::erf(v * kInvSqrt2)); });
  return push(std::move(out), needs(a), [a](Tape& t, Node& n) {
    if (!t.needs(a)) return;
    const Mat& x = t.value(a);
    Mat dgelu = x.unaryExpr([](double v) {
      const double cdf = 0.5 * (1.0 + std::erf(v * kInvSqrt2));
      const double pdf = kInvSqrt2Pi * std::exp(-0.5 * v * v);
      return cdf + v * pdf;
    });
    t.grad_ref(a) += n.grad.cwiseProduct(dgelu);
  });
}

NodeRef Tape::layer_norm(NodeRef x, NodeRef gain, NodeRef offset) {
  const Mat& xv = value(x);
  const Mat& g = value(gain);
  const Mat& b = value(offset);
  const int cols = static_cast<int>(xv.cols());
  if (g.rows() != 1 || g.cols() != cols || b.rows() != 1 || b.cols() != cols)
    throw ValidationError("layer_norm: gain/offset must be 1 x cols");
  Mat normalized(xv.rows(), cols);
  Eigen::VectorXd inv_std(xv.rows());
  for (int r = 0; r < xv.rows(); ++r) {
    const double mean = xv.row(r).mean();
    const double var = (xv.row(r).array() - mean).square().mean();
    inv_std(r) = 1.0 / std::sqrt(var + kLnEps);
    normalized.row(r) = (xv.row(r).array() - mean) * inv_std(r);
  }
  Mat out = (normalized.array().rowwise() * g.row(0).array()).rowwise() + b.row(0).array();
  // The backward re-derives mean/inv_std from the saved input; normalized is
  // captured by value to avoid recomputing it per row.
  return push(std::move(out), needs(x) || needs(gain) || needs(offset),
              [x, gain, offset, normalized, inv_std](Tape& t, Node& n) {
                if (t.needs(gain))
                  t.grad_ref(gain) += n.grad.cwiseProduct(normalized).colwise().sum();
                if (t.needs(offset)) t.grad_ref(offset) += n.grad.colwise().sum();
                if (!t.needs(x)) return;
                const Mat& g = t.value(gain);
                Mat& gx = t.grad_ref(x);
                const int cols = static_cast<int>(normalized.cols());
                for (int r = 0; r < normalized.rows(); ++r) {
                  const Eigen::RowVectorXd dy = n.grad.row(r).cwiseProduct(g.row(0));
                  const double mean_dy = dy.mean();
                  const double mean_dy_xhat = dy.cwiseProduct(normalized.row(r)).mean();
                  for (int c = 0; c < cols; ++c) {
                    gx(r, c) += inv_std(r) *
                                (dy(c) - mean_dy - normalized(r, c) * mean_dy_xhat);
                  }
                }
              });
}

NodeRef Tape::softmax_rows(NodeRef a) {
  const Mat& x = value(a);
  Mat out(x.rows(), x.cols());
  for (int r = 0; r < x.rows(); ++r) {
    const double m = x.row(r).maxCoeff();
    Eigen::RowVectorXd e = (x.row(r).array() - m).exp();
    out.row(r) = e / e.sum();
  }
  return push(std::move(out), needs(a), [a](Tape& t, Node& n) {
    if (!t.needs(a)) return;
    Mat& gx = t.grad_ref(a);
    const Mat& y = n.value;
    for (int r = 0; r < y.rows(); ++r) {
      const double dot = n.grad.row(r).dot(y.row(r));
      gx.row(r) += (n.grad.row(r).array() - dot).matrix().cwiseProduct(y.row(r));
    }
  });
}

NodeRef Tape::slice_cols(NodeRef a, int first, int count) {
  const Mat& x = value(a);
  if (first < 0 || count <= 0 || first + count > x.cols())
    throw ValidationError("slice_cols: range out of bounds");
  return push(x.middleCols(first, count), needs(a), [a, first, count](Tape& t, Node& n) {
    if (t.needs(a)) t.grad_ref(a).middleCols(first, count) += n.grad;
  });
}

NodeRef Tape::concat_cols(const std::vector<NodeRef>& parts) {
  if (parts.empty()) throw ValidationError("concat_cols: no parts");
  int cols = 0;
  bool any_grad = false;
  const int rows = static_cast<int>(value(parts[0]).rows());
  for (const NodeRef p : parts) {
    if (value(p).rows() != rows) throw ValidationError("concat_cols: row counts differ");
    cols += static_cast<int>(value(p).cols());
    any_grad = any_grad || needs(p);
  }
  Mat out(rows, cols);
  int at = 0;
  for (const NodeRef p : parts) {
    out.middleCols(at, value(p).cols()) = value(p);
    at += static_cast<int>(value(p).cols());
  }
  std::vector<NodeRef> saved = parts;
  return push(std::move(out), any_grad, [saved](Tape& t, Node& n) {
    int at = 0;
    for (const NodeRef p : saved) {
      const int w = static_cast<int>(t.value(p).cols());
      if (t.needs(p)) t.grad_ref(p) += n.grad.middleCols(at, w);
      at += w;
    }
  });
}

NodeRef Tape::concat_rows(NodeRef top, NodeRef bottom) {
  const Mat& a = value(top);
  const Mat& b = value(bottom);
  if (a.cols() != b.cols()) throw ValidationError("concat_rows: column counts differ");
  Mat out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return push(std::move(out), needs(top) || needs(bottom), [top, bottom](Tape& t, Node& n) {
    const int ar = static_cast<int>(t.value(top).rows());
    const int br = static_cast<int>(t.value(bottom).rows());
    if (t.needs(top)) t.grad_ref(top) += n.grad.topRows(ar);
    if (t.needs(bottom)) t.grad_ref(bottom) += n.grad.bottomRows(br);
  });
}

NodeRef Tape::mean_rows(NodeRef a) {
  const Mat& x = value(a);
  if (x.rows() < 1) throw ValidationError("mean_rows: empty sequence");
  Mat out = x.colwise().mean();
  return push(std::move(out), needs(a), [a](Tape& t, Node& n) {
    if (!t.needs(a)) return;
    const double inv = 1.0 / static_cast<double>(t.value(a).rows());
    t.grad_ref(a).rowwise() += (n.grad.row(0) * inv);
  });
}

NodeRef Tape::last_row(NodeRef a) {
  const Mat& x = value(a);
  if (x.rows() < 1) throw ValidationError("last_row: empty sequence");
  return push(x.row(x.rows() - 1), needs(a), [a](Tape& t, Node& n) {
    if (t.needs(a)) t.grad_ref(a).row(t.value(a).rows() - 1) += n.grad.row(0);
  });
}

NodeRef Tape::gather_rows(NodeRef table, std::vector<int> ids) {
  const Mat& tab = value(table);
  if (ids.empty()) throw ValidationError("gather_rows: empty sequence");
  Mat out(static_cast<int>(ids.size()), tab.cols());
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || ids[i] >= tab.rows())
      throw ValidationError("gather_rows: id out of vocabulary");
    out.row(static_cast<int>(i)) = tab.row(ids[i]);
  }
  return push(std::move(out), needs(table), [table, ids = std::move(ids)](Tape& t, Node& n) {
    if (!t.needs(table)) return;
    Mat& g = t.grad_ref(table);
    for (size_t i = 0; i < ids.size(); ++i) g.row(ids[i]) += n.grad.row(static_cast<int>(i));
  });
}

NodeRef Tape::dropout(NodeRef a, double p, Rng& rng) {
  if (p <= 0.0) return a;
  if (p >= 1.0) throw ValidationError("dropout: p must be in [0, 1)");
  const Mat& x = value(a);
  Mat mask(x.rows(), x.cols());
  const double keep_scale = 1.0 / (1.0 - p);
  for (int r = 0; r < x.rows(); ++r)
    for (int c = 0; c < x.cols(); ++c) mask(r, c) = rng.uniform() < p ? 0.0 : keep_scale;
  return push(x.cwiseProduct(mask), needs(a), [a, mask](Tape& t, Node& n) {
    if (t.needs(a)) t.grad_ref(a) += n.grad.cwiseProduct(mask);
  });
}

NodeRef Tape::softmax_cross_entropy(NodeRef logits, int label) {
  const Mat& z = value(logits);
  if (z.rows() != 1) throw ValidationError("softmax_cross_entropy: logits must be one row");
  if (label < 0 || label >= z.cols())
    throw ValidationError("softmax_cross_entropy: label out of range");
  const double m = z.row(0).maxCoeff();
  const Eigen::RowVectorXd e = (z.row(0).array() - m).exp();
  const double lse = m + std::log(e.sum());
  Mat out(1, 1);
  out(0, 0) = lse - z(0, label);
  Eigen::RowVectorXd probs = e / e.sum();
  return push(std::move(out), needs(logits), [logits, label, probs](Tape& t, Node& n) {
    if (!t.needs(logits)) return;
    Eigen::RowVectorXd d = probs;
    d(label) -= 1.0;
    t.grad_ref(logits) += n.grad(0, 0) * d;
  });
}

void Tape::backward(NodeRef root, double seed) {
  Node& r = nodes_[root.idx];
  if (!r.needs_grad) return;
  if (r.value.size() != 1) throw ValidationError("backward: root must be scalar");
  r.grad(0, 0) += seed;
  for (int i = root.idx; i >= 0; --i) {
    Node& n = nodes_[i];
    if (!n.needs_grad) continue;
    if (n.back) n.back(*this, n);
    if (n.parameter) n.parameter->grad += n.grad;
  }
}

}  // namespace srk::nn
