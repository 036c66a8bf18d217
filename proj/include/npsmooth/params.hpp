// Copyright 2026 The npsmooth Authors
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

#ifndef NPSMOOTH_PARAMS_HPP
#define NPSMOOTH_PARAMS_HPP

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "npsmooth/errors.hpp"
#include "npsmooth/tensor.hpp"

namespace npsmooth {

// A named trainable tensor with its gradient accumulator.
struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;

  Parameter(std::string n, Tensor v) : name(std::move(n)), value(std::move(v)) {
    grad = value;
    grad.fill(0.0);
  }
};

// Owns parameters; addresses stay stable for the lifetime of the set.
class ParameterSet {
 public:
  Parameter* add(const std::string& name, Tensor value) {
    if (index_.count(name)) throw Error("duplicate parameter: " + name);
    items_.push_back(std::make_unique<Parameter>(name, std::move(value)));
    index_[name] = items_.size() - 1;
    return items_.back().get();
  }

  Parameter* find(const std::string& name) {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : items_[it->second].get();
  }
  const Parameter* find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : items_[it->second].get();
  }

  size_t size() const { return items_.size(); }
  Parameter& at(size_t i) { return *items_[i]; }
  const Parameter& at(size_t i) const { return *items_[i]; }

  void zero_grads() {
    for (auto& p : items_) p->grad.fill(0.0);
  }

  size_t value_count() const {
    size_t n = 0;
    for (auto& p : items_) n += p->value.size();
    return n;
  }

 private:
  std::vector<std::unique_ptr<Parameter>> items_;
  std::unordered_map<std::string, size_t> index_;
};

// Per-call gradient sink so data-parallel workers can accumulate privately
// and merge in a fixed order afterwards.
class GradMap {
 public:
  void accumulate(const Parameter* p, const Tensor& g) {
    auto it = grads_.find(p);
    if (it == grads_.end()) {
      grads_.emplace(p, g);
    } else {
      for (size_t i = 0; i < g.data.size(); ++i) it->second.data[i] += g.data[i];
    }
  }

  // Adds row `row` of the gradient for an embedding-style parameter.
  void accumulate_row(const Parameter* p, int row, std::span<const double> g) {
    auto it = grads_.find(p);
    if (it == grads_.end()) {
      Tensor z = p->value;
      z.fill(0.0);
      it = grads_.emplace(p, std::move(z)).first;
    }
    double* dst = it->second.data.data() +
                  static_cast<size_t>(row) * it->second.cols();
    for (size_t i = 0; i < g.size(); ++i) dst[i] += g[i];
  }

  const Tensor* find(const Parameter* p) const {
    auto it = grads_.find(p);
    return it == grads_.end() ? nullptr : &it->second;
  }

  // Flushes into the parameters' own grad buffers.
  void apply() {
    for (auto& [p, g] : grads_) {
      auto* mp = const_cast<Parameter*>(p);
      for (size_t i = 0; i < g.data.size(); ++i) mp->grad.data[i] += g.data[i];
    }
  }

  void merge(const GradMap& other) {
    for (const auto& [p, g] : other.grads_) accumulate(p, g);
  }

  bool empty() const { return grads_.empty(); }

 private:
  std::unordered_map<const Parameter*, Tensor> grads_;
};

}  // namespace npsmooth

#endif  // NPSMOOTH_PARAMS_HPP
