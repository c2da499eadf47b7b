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

#include "srk/nn/module.hpp"

#include <cmath>

#include "srk/common/error.hpp"

namespace srk::nn {

NodeRef Linear::apply(Tape& t, NodeRef x, Rng* dropout_rng) const {
  NodeRef y = t.matmul_nt(x, t.param(*w));
  if (adapter) {
    NodeRef xin = x;
    if (dropout_rng != nullptr && adapter->dropout_p > 0.0)
      xin = t.dropout(x, adapter->dropout_p, *dropout_rng);
    NodeRef down = t.matmul_nt(xin, t.param(*adapter->a));   // T x r
    NodeRef up = t.matmul_nt(down, t.param(*adapter->b));    // T x d_out
    y = t.add(y, t.scale(up, adapter->scale));
  }
  if (bias != nullptr) y = t.add_rowvec(y, t.param(*bias));
  return y;
}

Parameter& Module::add_param(const std::string& name, int rows, int cols) {
  auto [it, inserted] = params_.emplace(name, Parameter(rows, cols));
  if (!inserted) throw ValidationError("duplicate parameter name: " + name);
  return it->second;
}

Linear& Module::add_linear(const std::string& name, int d_out, int d_in, bool with_bias) {
  Linear lin;
  lin.w = &add_param(name + ".w", d_out, d_in);
  if (with_bias) lin.bias = &add_param(name + ".b", 1, d_out);
  auto [it, inserted] = linears_.emplace(name, lin);
  if (!inserted) throw ValidationError("duplicate linear name: " + name);
  return it->second;
}

Parameter* Module::find_param(const std::string& name) {
  auto it = params_.find(name);
  return it == params_.end() ? nullptr : &it->second;
}

const Parameter* Module::find_param(const std::string& name) const {
  auto it = params_.find(name);
  return it == params_.end() ? nullptr : &it->second;
}

Linear* Module::find_linear(const std::string& name) {
  auto it = linears_.find(name);
  return it == linears_.end() ? nullptr : &it->second;
}

std::vector<Parameter*> Module::trainable_params() {
  std::vector<Parameter*> out;
  for (auto& [name, p] : params_)
    if (p.trainable) out.push_back(&p);
  return out;
}

int64_t Module::count_params(bool trainable_only) const {
  int64_t total = 0;
  for (const auto& [name, p] : params_)
    if (!trainable_only || p.trainable) total += p.size();
  return total;
}

void Module::set_all_trainable(bool trainable) {
  for (auto& [name, p] : params_) p.trainable = trainable;
}

void Module::zero_grads() {
  for (auto& [name, p] : params_) p.zero_grad();
}

void AdamOptimizer::add_group(const std::vector<Parameter*>& params, double peak_lr) {
  for (Parameter* p : params) {
    Slot slot;
    slot.p = p;
    slot.m = Mat::Zero(p->value.rows(), p->value.cols());
    slot.v = Mat::Zero(p->value.rows(), p->value.cols());
    slot.peak_lr = peak_lr;
    slots_.push_back(std::move(slot));
  }
}

void AdamOptimizer::step(double lr_multiplier) {
  ++steps_;
  const double bc1 = 1.0 - std::pow(hyper_.beta1, static_cast<double>(steps_));
  const double bc2 = 1.0 - std::pow(hyper_.beta2, static_cast<double>(steps_));
  for (Slot& s : slots_) {
    const Mat& g = s.p->grad;
    s.m = hyper_.beta1 * s.m + (1.0 - hyper_.beta1) * g;
    s.v = hyper_.beta2 * s.v.array().matrix() + (1.0 - hyper_.beta2) * g.cwiseProduct(g);
    const double lr = s.peak_lr * lr_multiplier;
    s.p->value.array() -=
        lr * (s.m.array() / bc1) / ((s.v.array() / bc2).sqrt() + hyper_.eps);
  }
  zero_grads();
}

void AdamOptimizer::zero_grads() {
  for (Slot& s : slots_) s.p->zero_grad();
}

}  // namespace srk::nn
