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

#ifndef SRK_NN_TAPE_HPP_
#define SRK_NN_TAPE_HPP_

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "srk/common/rng.hpp"

namespace srk::nn {

using Mat = Eigen::MatrixXd;

// A named tensor with an accumulated gradient. Values are double precision
// in memory; the 32-bit checkpoint encoding happens only at the file border.
struct Parameter {
  Parameter() = default;
  Parameter(int rows, int cols) : value(Mat::Zero(rows, cols)), grad(Mat::Zero(rows, cols)) {}

  int64_t size() const { return value.size(); }
  void zero_grad() { grad.setZero(); }

  Mat value;
  Mat grad;
  bool trainable = true;
};

struct NodeRef {
  int idx = -1;
  bool valid() const { return idx >= 0; }
};

// Reverse-mode tape over dense matrices. A tape is built per forward pass;
// `backward` walks the nodes in reverse creation order. Gradients of
// parameter leaves accumulate into `Parameter::grad` so one optimizer step
// can consume several tapes (per-example gradient accumulation).
class Tape {
 public:
  NodeRef input(Mat value, bool requires_grad = false);
  NodeRef param(Parameter& p);

  const Mat& value(NodeRef r) const { return nodes_[r.idx].value; }
  const Mat& grad(NodeRef r) const { return nodes_[r.idx].grad; }

  // C = A * B
  NodeRef matmul(NodeRef a, NodeRef b);
  // C = A * B^T; saves explicit transpose nodes for x*W^T style layers.
  NodeRef matmul_nt(NodeRef a, NodeRef b);
  NodeRef add(NodeRef a, NodeRef b);
  // A (T x d) plus a broadcast 1 x d row (bias).
  NodeRef add_rowvec(NodeRef a, NodeRef row);
  NodeRef scale(NodeRef a, double s);
  // Adds a constant matrix (positional encodings, attention masks).
  NodeRef add_const(NodeRef a, Mat c);
  NodeRef gelu(NodeRef a);
  // Row-wise layer norm with learnable 1 x d gain/offset.
  NodeRef layer_norm(NodeRef x, NodeRef gain, NodeRef offset);
  NodeRef softmax_rows(NodeRef a);
  NodeRef slice_cols(NodeRef a, int first, int count);
  NodeRef concat_cols(const std::vector<NodeRef>& parts);
  NodeRef concat_rows(NodeRef top, NodeRef bottom);
  NodeRef mean_rows(NodeRef a);
  NodeRef last_row(NodeRef a);
  // Row gather from an embedding table; backward scatters into the table.
  NodeRef gather_rows(NodeRef table, std::vector<int> ids);
  // Inverted dropout; identity when p == 0.
  NodeRef dropout(NodeRef a, double p, Rng& rng);
  // Scalar (1 x 1) cross-entropy of a 1 x C logits row against `label`.
  NodeRef softmax_cross_entropy(NodeRef logits, int label);

  // Seeds d(root)/d(root) = seed and accumulates gradients backwards.
  void backward(NodeRef root, double seed = 1.0);

 private:
  struct Node {
    Mat value;
    Mat grad;
    bool needs_grad = false;
    Parameter* parameter = nullptr;
    std::function<void(Tape&, Node&)> back;
  };

  NodeRef push(Mat value, bool needs_grad, std::function<void(Tape&, Node&)> back);
  bool needs(NodeRef r) const { return nodes_[r.idx].needs_grad; }
  Mat& grad_ref(NodeRef r) { return nodes_[r.idx].grad; }

  std::vector<Node> nodes_;
};

}  // namespace srk::nn

#endif  // SRK_NN_TAPE_HPP_
