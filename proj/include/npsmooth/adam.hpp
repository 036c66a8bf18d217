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

#ifndef NPSMOOTH_ADAM_HPP
#define NPSMOOTH_ADAM_HPP

#include <cstdint>
#include <vector>

#include "npsmooth/params.hpp"

namespace npsmooth {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double l2 = 1e-5;  // added to the gradient as weight decay
};

// Adam with bias correction over a ParameterSet.  Consumes the gradients
// accumulated in each Parameter's grad buffer.
class AdamState {
 public:
  AdamState(ParameterSet& params, AdamConfig cfg);

  // One update from the current grad buffers; grads are zeroed afterwards.
  void step();

  int64_t step_count() const { return t_; }
  const AdamConfig& config() const { return cfg_; }

 private:
  ParameterSet& params_;
  AdamConfig cfg_;
  int64_t t_ = 0;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
};

}  // namespace npsmooth

#endif  // NPSMOOTH_ADAM_HPP
