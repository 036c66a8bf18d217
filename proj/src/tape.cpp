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

#include "npsmooth/tape.hpp"

#include <cmath>

#include "npsmooth/common.hpp"
#include "npsmooth/errors.hpp"

namespace npsmooth {

Var Tape::constant(Tensor v) {
  Node n;
  n.op = Op::kConst;
  n.value = std::move(v);
  return Var{push(std::move(n))};
}

Var Tape::constant_vec(std::span<const double> v) {
  Tensor t;
  t.shape = {static_cast<int>(v.size())};
  t.data.assign(v.begin(), v.end());
  return constant(std::move(t));
}

Var Tape::constant_scalar(double v) { return constant(Tensor::scalar(v)); }

Var Tape::param(Parameter& p) {
  Node n;
  n.op = Op::kParam;
  n.param = &p;
  n.value = p.value;
  return Var{push(std::move(n))};
}

Var Tape::embed_row(Parameter& p, int row) {
  Node n;
  n.op = Op::kEmbedRow;
  n.param = &p;
  n.i0 = row;
  Tensor t;
  t.shape = {p.value.cols()};
  auto r = p.value.row(row);
  t.data.assign(r.begin(), r.end());
  n.value = std::move(t);
  return Var{push(std::move(n))};
}

Var Tape::add(Var a, Var b) {
  const Tensor& ta = nodes_[a.id].value;
  const Tensor& tb = nodes_[b.id].value;
  require_same_shape(ta, tb, "add");
  Node n;
  n.op = Op::kAdd;
  n.a = a.id;
  n.b = b.id;
  n.value = ta;
  for (size_t i = 0; i < tb.data.size(); ++i) n.value.data[i] += tb.data[i];
  return Var{push(std::move(n))};
}

Var Tape::sub(Var a, Var b) {
  const Tensor& ta = nodes_[a.id].value;
  const Tensor& tb = nodes_[b.id].value;
  require_same_shape(ta, tb, "sub");
  Node n;
  n.op = Op::kSub;
  n.a = a.id;
  n.b = b.id;
  n.value = ta;
  for (size_t i = 0; i < tb.data.size(); ++i) n.value.data[i] -= tb.data[i];
  return Var{push(std::move(n))};
}

Var Tape::mul(Var a, Var b) {
  const Tensor& ta = nodes_[a.id].value;
  const Tensor& tb = nodes_[b.id].value;
  require_same_shape(ta, tb, "mul");
  Node n;
  n.op = Op::kMul;
  n.a = a.id;
  n.b = b.id;
  n.value = ta;
  for (size_t i = 0; i < tb.data.size(); ++i) n.value.data[i] *= tb.data[i];
  return Var{push(std::move(n))};
}

Var Tape::scale(Var a, double c) {
  Node n;
  n.op = Op::kScale;
  n.a = a.id;
  n.c = c;
  n.value = nodes_[a.id].value;
  for (double& x : n.value.data) x *= c;
  return Var{push(std::move(n))};
}

Var Tape::matvec(Var w, Var x) {
  const Tensor& tw = nodes_[w.id].value;
  const Tensor& tx = nodes_[x.id].value;
  if (tw.shape.size() != 2 || tx.shape.size() != 1 || tw.cols() != tx.rows()) {
    throw ShapeError("matvec expects (m x n) * (n)");
  }
  Node n;
  n.op = Op::kMatVec;
  n.a = w.id;
  n.b = x.id;
  const int m = tw.rows(), k = tw.cols();
  Tensor out = Tensor::zeros_vec(m);
  const double* wd = tw.data.data();
  const double* xd = tx.data.data();
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    const double* row = wd + static_cast<size_t>(i) * k;
    for (int j = 0; j < k; ++j) s += row[j] * xd[j];
    out.data[static_cast<size_t>(i)] = s;
  }
  n.value = std::move(out);
  return Var{push(std::move(n))};
}

Var Tape::dot(Var a, Var b) {
  const Tensor& ta = nodes_[a.id].value;
  const Tensor& tb = nodes_[b.id].value;
  require_same_shape(ta, tb, "dot");
  Node n;
  n.op = Op::kDot;
  n.a = a.id;
  n.b = b.id;
  double s = 0.0;
  for (size_t i = 0; i < ta.data.size(); ++i) s += ta.data[i] * tb.data[i];
  n.value = Tensor::scalar(s);
  return Var{push(std::move(n))};
}

Var Tape::concat(std::span<const Var> parts) {
  Node n;
  n.op = Op::kConcat;
  int total = 0;
  for (Var p : parts) {
    n.kids.push_back(p.id);
    total += static_cast<int>(nodes_[p.id].value.size());
  }
  Tensor out = Tensor::zeros_vec(total);
  int off = 0;
  for (Var p : parts) {
    const Tensor& t = nodes_[p.id].value;
    for (size_t i = 0; i < t.data.size(); ++i) out.data[off + i] = t.data[i];
    off += static_cast<int>(t.data.size());
  }
  n.value = std::move(out);
  return Var{push(std::move(n))};
}

Var Tape::slice(Var a, int offset, int len) {
  const Tensor& ta = nodes_[a.id].value;
  if (offset < 0 || offset + len > static_cast<int>(ta.size())) {
    throw ShapeError("slice out of range");
  }
  Node n;
  n.op = Op::kSlice;
  n.a = a.id;
  n.i0 = offset;
  n.i1 = len;
  Tensor out = Tensor::zeros_vec(len);
  for (int i = 0; i < len; ++i) out.data[i] = ta.data[offset + i];
  n.value = std::move(out);
  return Var{push(std::move(n))};
}

Var Tape::sigmoid(Var a) {
  Node n;
  n.op = Op::kSigmoid;
  n.a = a.id;
  n.value = nodes_[a.id].value;
  for (double& x : n.value.data) x = 1.0 / (1.0 + std::exp(-x));
  return Var{push(std::move(n))};
}

Var Tape::tanh_op(Var a) {
  Node n;
  n.op = Op::kTanh;
  n.a = a.id;
  n.value = nodes_[a.id].value;
  for (double& x : n.value.data) x = std::tanh(x);
  return Var{push(std::move(n))};
}

Var Tape::relu(Var a) {
  Node n;
  n.op = Op::kRelu;
  n.a = a.id;
  n.value = nodes_[a.id].value;
  for (double& x : n.value.data) x = x > 0.0 ? x : 0.0;
  return Var{push(std::move(n))};
}

Var Tape::log_softmax(Var a) {
  Node n;
  n.op = Op::kLogSoftmax;
  n.a = a.id;
  const Tensor& ta = nodes_[a.id].value;
  double lse = log_sum_exp(ta.data);
  n.value = ta;
  for (double& x : n.value.data) {
    x = x == kNegInf ? kNegInf : x - lse;
  }
  return Var{push(std::move(n))};
}

Var Tape::logsumexp(Var a) {
  Node n;
  n.op = Op::kLogSumExp;
  n.a = a.id;
  n.value = Tensor::scalar(log_sum_exp(nodes_[a.id].value.data));
  return Var{push(std::move(n))};
}

Var Tape::pick(Var a, int index) {
  const Tensor& ta = nodes_[a.id].value;
  if (index < 0 || index >= static_cast<int>(ta.size())) {
    throw ShapeError("pick index out of range");
  }
  Node n;
  n.op = Op::kPick;
  n.a = a.id;
  n.i0 = index;
  n.value = Tensor::scalar(ta.data[index]);
  return Var{push(std::move(n))};
}

Var Tape::sum(Var a) {
  Node n;
  n.op = Op::kSum;
  n.a = a.id;
  double s = 0.0;
  for (double x : nodes_[a.id].value.data) s += x;
  n.value = Tensor::scalar(s);
  return Var{push(std::move(n))};
}

Var Tape::square(Var a) {
  Node n;
  n.op = Op::kSquare;
  n.a = a.id;
  n.value = nodes_[a.id].value;
  for (double& x : n.value.data) x = x * x;
  return Var{push(std::move(n))};
}

void Tape::backward(Var loss, GradMap* sink) {
  if (!loss.valid() || !nodes_[loss.id].value.is_scalar()) {
    throw ShapeError("backward requires a scalar loss");
  }
  for (Node& n : nodes_) {
    n.grad = n.value;
    n.grad.fill(0.0);
  }
  nodes_[loss.id].grad.data[0] = 1.0;

  for (int id = loss.id; id >= 0; --id) {
    Node& n = nodes_[id];
    const Tensor& g = n.grad;
    switch (n.op) {
      case Op::kConst:
        break;
      case Op::kParam:
        if (sink) {
          sink->accumulate(n.param, g);
        } else {
          for (size_t i = 0; i < g.data.size(); ++i)
            n.param->grad.data[i] += g.data[i];
        }
        break;
      case Op::kEmbedRow:
        if (sink) {
          sink->accumulate_row(n.param, n.i0, g.data);
        } else {
          double* dst = n.param->grad.data.data() +
                        static_cast<size_t>(n.i0) * n.param->grad.cols();
          for (size_t i = 0; i < g.data.size(); ++i) dst[i] += g.data[i];
        }
        break;
      case Op::kAdd: {
        Tensor& ga = nodes_[n.a].grad;
        Tensor& gb = nodes_[n.b].grad;
        for (size_t i = 0; i < g.data.size(); ++i) {
          ga.data[i] += g.data[i];
          gb.data[i] += g.data[i];
        }
        break;
      }
      case Op::kSub: {
        Tensor& ga = nodes_[n.a].grad;
        Tensor& gb = nodes_[n.b].grad;
        for (size_t i = 0; i < g.data.size(); ++i) {
          ga.data[i] += g.data[i];
          gb.data[i] -= g.data[i];
        }
        break;
      }
      case Op::kMul: {
        Tensor& ga = nodes_[n.a].grad;
        Tensor& gb = nodes_[n.b].grad;
        const Tensor& va = nodes_[n.a].value;
        const Tensor& vb = nodes_[n.b].value;
        for (size_t i = 0; i < g.data.size(); ++i) {
          ga.data[i] += g.data[i] * vb.data[i];
          gb.data[i] += g.data[i] * va.data[i];
        }
        break;
      }
      case Op::kScale: {
        Tensor& ga = nodes_[n.a].grad;
        for (size_t i = 0; i < g.data.size(); ++i) ga.data[i] += n.c * g.data[i];
        break;
      }
      case Op::kMatVec: {
        Tensor& gw = nodes_[n.a].grad;
        Tensor& gx = nodes_[n.b].grad;
        const Tensor& vw = nodes_[n.a].value;
        const Tensor& vx = nodes_[n.b].value;
        const int m = vw.rows(), k = vw.cols();
        for (int i = 0; i < m; ++i) {
          const double gi = g.data[static_cast<size_t>(i)];
          if (gi == 0.0) continue;
          double* gwrow = gw.data.data() + static_cast<size_t>(i) * k;
          const double* wrow = vw.data.data() + static_cast<size_t>(i) * k;
          for (int j = 0; j < k; ++j) {
            gwrow[j] += gi * vx.data[static_cast<size_t>(j)];
            gx.data[static_cast<size_t>(j)] += gi * wrow[j];
          }
        }
        break;
      }
      case Op::kDot: {
        Tensor& ga = nodes_[n.a].grad;
        Tensor& gb = nodes_[n.b].grad;
        const Tensor& va = nodes_[n.a].value;
        const Tensor& vb = nodes_[n.b].value;
        const double gs = g.data[0];
        for (size_t i = 0; i < va.data.size(); ++i) {
          ga.data[i] += gs * vb.data[i];
          gb.data[i] += gs * va.data[i];
        }
        break;
      }
      case Op::kConcat: {
        int off = 0;
        for (int kid : n.kids) {
          Tensor& gk = nodes_[kid].grad;
          for (size_t i = 0; i < gk.data.size(); ++i)
            gk.data[i] += g.data[off + i];
          off += static_cast<int>(gk.data.size());
        }
        break;
      }
      case Op::kSlice: {
        Tensor& ga = nodes_[n.a].grad;
        for (int i = 0; i < n.i1; ++i) ga.data[n.i0 + i] += g.data[i];
        break;
      }
      case Op::kSigmoid: {
        Tensor& ga = nodes_[n.a].grad;
        for (size_t i = 0; i < g.data.size(); ++i) {
          const double v = n.value.data[i];
          ga.data[i] += g.data[i] * v * (1.0 - v);
        }
        break;
      }
      case Op::kTanh: {
        Tensor& ga = nodes_[n.a].grad;
        for (size_t i = 0; i < g.data.size(); ++i) {
          const double v = n.value.data[i];
          ga.data[i] += g.data[i] * (1.0 - v * v);
        }
        break;
      }
      case Op::kRelu: {
        Tensor& ga = nodes_[n.a].grad;
        const Tensor& va = nodes_[n.a].value;
        for (size_t i = 0; i < g.data.size(); ++i) {
          if (va.data[i] > 0.0) ga.data[i] += g.data[i];
        }
        break;
      }
      case Op::kLogSoftmax: {
        // -inf slots are structural zeros of the distribution; they get no
        // gradient.
        Tensor& ga = nodes_[n.a].grad;
        const Tensor& va = nodes_[n.a].value;
        double gsum = 0.0;
        for (size_t i = 0; i < g.data.size(); ++i) {
          if (va.data[i] != kNegInf) gsum += g.data[i];
        }
        for (size_t i = 0; i < g.data.size(); ++i) {
          if (va.data[i] == kNegInf) continue;
          ga.data[i] += g.data[i] - std::exp(n.value.data[i]) * gsum;
        }
        break;
      }
      case Op::kLogSumExp: {
        Tensor& ga = nodes_[n.a].grad;
        const Tensor& va = nodes_[n.a].value;
        const double gs = g.data[0];
        const double lse = n.value.data[0];
        for (size_t i = 0; i < va.data.size(); ++i) {
          if (va.data[i] == kNegInf) continue;
          ga.data[i] += gs * std::exp(va.data[i] - lse);
        }
        break;
      }
      case Op::kPick:
        nodes_[n.a].grad.data[static_cast<size_t>(n.i0)] += g.data[0];
        break;
      case Op::kSum: {
        Tensor& ga = nodes_[n.a].grad;
        for (size_t i = 0; i < ga.data.size(); ++i) ga.data[i] += g.data[0];
        break;
      }
      case Op::kSquare: {
        Tensor& ga = nodes_[n.a].grad;
        const Tensor& va = nodes_[n.a].value;
        for (size_t i = 0; i < g.data.size(); ++i) {
          ga.data[i] += 2.0 * va.data[i] * g.data[i];
        }
        break;
      }
    }
  }
}

}  // namespace npsmooth
