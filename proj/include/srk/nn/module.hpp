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

#ifndef SRK_NN_MODULE_HPP_
#define SRK_NN_MODULE_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srk/nn/tape.hpp"

namespace srk::nn {

// Low-rank update attached to a Linear: y += scale * x A^T B^T.
struct LoraAdapter {
  Parameter* a = nullptr;  // r x d_in
  Parameter* b = nullptr;  // d_out x r
  double scale = 0.0;      // alpha / r
  double dropout_p = 0.0;
};

// y = x W^T (+ bias). W is d_out x d_in; x rows are examples/steps.
struct Linear {
  Parameter* w = nullptr;
  Parameter* bias = nullptr;               // 1 x d_out when present
  std::optional<LoraAdapter> adapter;

  int d_out() const { return static_cast<int>(w->value.rows()); }
  int d_in() const { return static_cast<int>(w->value.cols()); }

  // `dropout_rng` enables the adapter's input dropout (training only).
  NodeRef apply(Tape& t, NodeRef x, Rng* dropout_rng = nullptr) const;
};

// Named parameter collection with a registry of the Linears built from it.
// std::map gives stable addresses, so Linear/adapter pointers stay valid.
class Module {
 public:
  Parameter& add_param(const std::string& name, int rows, int cols);
  Linear& add_linear(const std::string& name, int d_out, int d_in, bool with_bias);

  Parameter* find_param(const std::string& name);
  const Parameter* find_param(const std::string& name) const;
  Linear* find_linear(const std::string& name);

  std::map<std::string, Parameter>& params() { return params_; }
  const std::map<std::string, Parameter>& params() const { return params_; }
  std::map<std::string, Linear>& linears() { return linears_; }

  std::vector<Parameter*> trainable_params();
  int64_t count_params(bool trainable_only) const;
  void set_all_trainable(bool trainable);
  void zero_grads();

 private:
  std::map<std::string, Parameter> params_;
  std::map<std::string, Linear> linears_;
};

// Adam with linear warmup/decay applied through a per-step multiplier.
class AdamOptimizer {
 public:
  struct Hyper {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
  };

  explicit AdamOptimizer(Hyper hyper = {}) : hyper_(hyper) {}

  void add_group(const std::vector<Parameter*>& params, double peak_lr);
  // lr of each group this step = group peak_lr * lr_multiplier.
  void step(double lr_multiplier);
  void zero_grads();
  int64_t step_count() const { return steps_; }

 private:
  struct Slot {
    Parameter* p;
    Mat m;
    Mat v;
    double peak_lr;
  };

  Hyper hyper_;
  std::vector<Slot> slots_;
  int64_t steps_ = 0;
};

}  // namespace srk::nn

#endif  // SRK_NN_MODULE_HPP_
