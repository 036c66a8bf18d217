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

#include "npsmooth/nn.hpp"

#include <cmath>

#include "npsmooth/common.hpp"
#include "npsmooth/errors.hpp"

namespace npsmooth {

Tensor glorot_uniform(Rng& rng, int rows, int cols) {
  Tensor t = Tensor::zeros_mat(rows, cols);
  const double bound = std::sqrt(6.0 / (rows + cols));
  for (double& x : t.data) x = rng.uniform(-bound, bound);
  return t;
}

Tensor orthogonal(Rng& rng, int n) {
  // Modified Gram-Schmidt on a random Gaussian matrix.  Fine at the sizes
  // used here (d <= 64).
  Tensor a = Tensor::zeros_mat(n, n);
  for (double& x : a.data) x = rng.normal();
  for (int i = 0; i < n; ++i) {
    double* ri = a.data.data() + static_cast<size_t>(i) * n;
    for (int j = 0; j < i; ++j) {
      const double* rj = a.data.data() + static_cast<size_t>(j) * n;
      double proj = 0.0;
      for (int k = 0; k < n; ++k) proj += ri[k] * rj[k];
      for (int k = 0; k < n; ++k) ri[k] -= proj * rj[k];
    }
    double norm = 0.0;
    for (int k = 0; k < n; ++k) norm += ri[k] * ri[k];
    norm = std::sqrt(norm);
    if (norm < 1e-12) {
      // Degenerate draw; restart the row with a fresh sample.
      for (int k = 0; k < n; ++k) ri[k] = rng.normal();
      --i;
      continue;
    }
    for (int k = 0; k < n; ++k) ri[k] /= norm;
  }
  return a;
}

GruParams make_gru(ParameterSet& ps, const std::string& prefix, int in, int d,
                   Rng& rng) {
  GruParams g;
  g.in = in;
  g.d = d;
  g.wx = ps.add(prefix + ".wx", glorot_uniform(rng, 3 * d, in));
  Tensor uh = Tensor::zeros_mat(3 * d, d);
  for (int gate = 0; gate < 3; ++gate) {
    Tensor q = orthogonal(rng, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) uh.at(gate * d + i, j) = q.at(i, j);
    }
  }
  g.uh = ps.add(prefix + ".uh", std::move(uh));
  g.b = ps.add(prefix + ".b", Tensor::zeros_vec(3 * d));
  return g;
}

void matvec_into(const Tensor& w, std::span<const double> x,
                 std::span<double> out) {
  const int m = w.rows(), k = w.cols();
  NPS_DASSERT(static_cast<int>(x.size()) == k &&
              static_cast<int>(out.size()) == m);
  const double* wd = w.data.data();
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    const double* row = wd + static_cast<size_t>(i) * k;
    for (int j = 0; j < k; ++j) s += row[j] * x[j];
    out[i] = s;
  }
}

void matvec_add_into(const Tensor& w, std::span<const double> x,
                     std::span<double> out) {
  const int m = w.rows(), k = w.cols();
  NPS_DASSERT(static_cast<int>(x.size()) == k &&
              static_cast<int>(out.size()) == m);
  const double* wd = w.data.data();
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    const double* row = wd + static_cast<size_t>(i) * k;
    for (int j = 0; j < k; ++j) s += row[j] * x[j];
    out[i] += s;
  }
}

std::vector<double> log_softmax_vec(std::span<const double> logits) {
  double lse = log_sum_exp(logits);
  std::vector<double> out(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) {
    out[i] = logits[i] == kNegInf ? kNegInf : logits[i] - lse;
  }
  return out;
}

void gru_step_pre2(const GruParams& g, std::span<const double> h,
                   std::span<const double> pre, std::span<const double> uh_h,
                   std::span<double> out) {
  const int d = g.d;
  if (static_cast<int>(h.size()) != d || static_cast<int>(out.size()) != d ||
      static_cast<int>(pre.size()) != 3 * d ||
      static_cast<int>(uh_h.size()) != 3 * d) {
    throw ShapeError("gru_step: dimension mismatch");
  }
  for (int i = 0; i < d; ++i) {
    const double z = 1.0 / (1.0 + std::exp(-(pre[i] + uh_h[i])));
    const double r = 1.0 / (1.0 + std::exp(-(pre[d + i] + uh_h[d + i])));
    const double n = std::tanh(pre[2 * d + i] + r * uh_h[2 * d + i]);
    out[i] = z * h[i] + (1.0 - z) * n;
  }
}

void gru_step_pre(const GruParams& g, std::span<const double> h,
                  std::span<const double> pre, std::span<double> out) {
  std::vector<double> uh_h(3 * g.d);
  matvec_into(g.uh->value, h, uh_h);
  gru_step_pre2(g, h, pre, uh_h, out);
}

void gru_step(const GruParams& g, std::span<const double> h,
              std::span<const double> x, std::span<double> out) {
  if (static_cast<int>(x.size()) != g.in) {
    throw ShapeError("gru_step: input dimension mismatch");
  }
  std::vector<double> pre(3 * g.d);
  matvec_into(g.wx->value, x, pre);
  for (int i = 0; i < 3 * g.d; ++i) pre[i] += g.b->value.data[i];
  gru_step_pre(g, h, pre, out);
}

Var gru_step_t(Tape& t, const GruParams& g, Var h, Var x) {
  const int d = g.d;
  Var wx = t.param(*g.wx);
  Var uh = t.param(*g.uh);
  Var b = t.param(*g.b);
  Var pre = t.add(t.matvec(wx, x), b);
  Var rec = t.matvec(uh, h);
  Var z = t.sigmoid(t.add(t.slice(pre, 0, d), t.slice(rec, 0, d)));
  Var r = t.sigmoid(t.add(t.slice(pre, d, d), t.slice(rec, d, d)));
  Var n = t.tanh_op(
      t.add(t.slice(pre, 2 * d, d), t.mul(r, t.slice(rec, 2 * d, d))));
  // h' = z * h + (1 - z) * n = n + z * (h - n)
  return t.add(n, t.mul(z, t.sub(h, n)));
}

MlpParams make_mlp(ParameterSet& ps, const std::string& prefix, int in,
                   int hidden, int out, int layers, Rng& rng) {
  if (layers < 1) throw ConfigError("mlp needs at least one layer");
  MlpParams m;
  m.in = in;
  m.out = out;
  int cur = in;
  for (int l = 0; l < layers; ++l) {
    const int next = l + 1 == layers ? out : hidden;
    m.w.push_back(ps.add(prefix + ".w" + std::to_string(l),
                         glorot_uniform(rng, next, cur)));
    m.b.push_back(
        ps.add(prefix + ".b" + std::to_string(l), Tensor::zeros_vec(next)));
    cur = next;
  }
  return m;
}

std::vector<double> mlp_apply(const MlpParams& m, std::span<const double> in) {
  if (static_cast<int>(in.size()) != m.in) {
    throw ShapeError("mlp_apply: input dimension mismatch");
  }
  std::vector<double> cur(in.begin(), in.end());
  for (size_t l = 0; l < m.w.size(); ++l) {
    std::vector<double> next(m.w[l]->value.rows());
    matvec_into(m.w[l]->value, cur, next);
    for (size_t i = 0; i < next.size(); ++i) next[i] += m.b[l]->value.data[i];
    if (l + 1 < m.w.size()) {
      for (double& x : next) x = x > 0.0 ? x : 0.0;
    }
    cur = std::move(next);
  }
  return cur;
}

Var mlp_apply_t(Tape& t, const MlpParams& m, Var in) {
  Var cur = in;
  for (size_t l = 0; l < m.w.size(); ++l) {
    cur = t.affine(t.param(*m.w[l]), cur, t.param(*m.b[l]));
    if (l + 1 < m.w.size()) cur = t.relu(cur);
  }
  return cur;
}

}  // namespace npsmooth
