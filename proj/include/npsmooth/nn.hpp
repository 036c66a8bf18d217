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

#ifndef NPSMOOTH_NN_HPP
#define NPSMOOTH_NN_HPP

#include <span>
#include <string>
#include <vector>

#include "npsmooth/params.hpp"
#include "npsmooth/rng.hpp"
#include "npsmooth/tape.hpp"
#include "npsmooth/tensor.hpp"

namespace npsmooth {

// Weight initializers.  Affine weights use the +-sqrt(6/(fan_in+fan_out))
// uniform scheme, biases start at zero, recurrent matrices are
// orthogonalized.  These choices are recorded in checkpoint manifests.
Tensor glorot_uniform(Rng& rng, int rows, int cols);
Tensor orthogonal(Rng& rng, int n);

// Gated recurrent unit.
//
// Convention (fixed here, documented for reproducibility): the packed gate
// order is [z | r | n], gates are computed as
//   z = sigmoid(Wz e + Uz h + bz)
//   r = sigmoid(Wr e + Ur h + br)
//   n = tanh(Wn e + r * (Un h) + bn)
//   h' = z * h + (1 - z) * n
// i.e. the update gate carries the old state and the reset gate is applied
// to the recurrent contribution of the candidate.
struct GruParams {
  Parameter* wx = nullptr;  // (3d x in)
  Parameter* uh = nullptr;  // (3d x d)
  Parameter* b = nullptr;   // (3d)
  int in = 0;
  int d = 0;
};

GruParams make_gru(ParameterSet& ps, const std::string& prefix, int in, int d,
                   Rng& rng);

// h' <- gru(h, x).  `out` may not alias `h`.
void gru_step(const GruParams& g, std::span<const double> h,
              std::span<const double> x, std::span<double> out);

// Variant taking the precomputed input contribution Wx*x + b (one row per
// gate block), used to share work across candidate expansions.
void gru_step_pre(const GruParams& g, std::span<const double> h,
                  std::span<const double> wx_e_plus_b, std::span<double> out);

// Same, with Uh*h precomputed as well.
void gru_step_pre2(const GruParams& g, std::span<const double> h,
                   std::span<const double> wx_e_plus_b,
                   std::span<const double> uh_h, std::span<double> out);

Var gru_step_t(Tape& t, const GruParams& g, Var h, Var x);

// Feedforward stack: affine layers with ReLU between them, final layer
// affine.  "layers" counts affine layers.
struct MlpParams {
  std::vector<Parameter*> w;
  std::vector<Parameter*> b;
  int in = 0;
  int out = 0;
};

MlpParams make_mlp(ParameterSet& ps, const std::string& prefix, int in,
                   int hidden, int out, int layers, Rng& rng);

std::vector<double> mlp_apply(const MlpParams& m, std::span<const double> in);
Var mlp_apply_t(Tape& t, const MlpParams& m, Var in);

// Value-path helpers shared by the models.
void matvec_into(const Tensor& w, std::span<const double> x,
                 std::span<double> out);
void matvec_add_into(const Tensor& w, std::span<const double> x,
                     std::span<double> out);
std::vector<double> log_softmax_vec(std::span<const double> logits);

}  // namespace npsmooth

#endif  // NPSMOOTH_NN_HPP
