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

#include "npsmooth/adam.hpp"

#include <cmath>

namespace npsmooth {

AdamState::AdamState(ParameterSet& params, AdamConfig cfg)
    : params_(params), cfg_(cfg) {
  m_.reserve(params.size());
  v_.reserve(params.size());
  for (size_t i = 0; i < params.size(); ++i) {
    Tensor z = params.at(i).value;
    z.fill(0.0);
    m_.push_back(z);
    v_.push_back(std::move(z));
  }
}

void AdamState::step() {
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (size_t i = 0; i < params_.size(); ++i) {
    Parameter& p = params_.at(i);
    Tensor& m = m_[i];
    Tensor& v = v_[i];
    for (size_t j = 0; j < p.value.data.size(); ++j) {
      const double g = p.grad.data[j] + cfg_.l2 * p.value.data[j];
      m.data[j] = cfg_.beta1 * m.data[j] + (1.0 - cfg_.beta1) * g;
      v.data[j] = cfg_.beta2 * v.data[j] + (1.0 - cfg_.beta2) * g * g;
      const double mhat = m.data[j] / bc1;
      const double vhat = v.data[j] / bc2;
      p.value.data[j] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.epsilon);
    }
    p.grad.fill(0.0);
  }
}

}  // namespace npsmooth
