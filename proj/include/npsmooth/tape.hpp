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

#ifndef NPSMOOTH_TAPE_HPP
#define NPSMOOTH_TAPE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "npsmooth/params.hpp"
#include "npsmooth/tensor.hpp"

namespace npsmooth {

// Reverse-mode tape over vector/matrix values.  Operations are recorded in
// construction order, which is a topological order by definition, so the
// backward pass is a single reverse sweep that visits each node once.
class Tape {
 public:
  struct Var {
    int id = -1;
    bool valid() const { return id >= 0; }
  };

  Var constant(Tensor v);
  Var constant_vec(std::span<const double> v);
  Var constant_scalar(double v);
  Var param(Parameter& p);
  // Row of an embedding-style matrix parameter; gradients land in that row.
  Var embed_row(Parameter& p, int row);

  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var mul(Var a, Var b);  // elementwise
  Var scale(Var a, double c);
  Var neg(Var a) { return scale(a, -1.0); }
  Var matvec(Var w, Var x);
  Var dot(Var a, Var b);
  Var concat(std::span<const Var> parts);
  Var slice(Var a, int offset, int len);
  Var sigmoid(Var a);
  Var tanh_op(Var a);
  Var relu(Var a);
  Var log_softmax(Var a);
  Var logsumexp(Var a);
  Var pick(Var a, int index);
  Var sum(Var a);
  Var square(Var a);
  Var affine(Var w, Var x, Var b) { return add(matvec(w, x), b); }

  const Tensor& value(Var v) const { return nodes_[v.id].value; }
  double scalar_value(Var v) const { return nodes_[v.id].value.data[0]; }
  size_t node_count() const { return nodes_.size(); }

  // Runs the reverse sweep from a scalar loss.  Parameter gradients are
  // accumulated into `sink` when given, otherwise directly into each
  // Parameter's grad buffer.
  void backward(Var loss, GradMap* sink = nullptr);

 private:
  enum class Op : uint8_t {
    kConst,
    kParam,
    kEmbedRow,
    kAdd,
    kSub,
    kMul,
    kScale,
    kMatVec,
    kDot,
    kConcat,
    kSlice,
    kSigmoid,
    kTanh,
    kRelu,
    kLogSoftmax,
    kLogSumExp,
    kPick,
    kSum,
    kSquare,
  };

  struct Node {
    Op op;
    int a = -1, b = -1;
    int i0 = 0, i1 = 0;
    double c = 0.0;
    Parameter* param = nullptr;
    std::vector<int> kids;
    Tensor value;
    Tensor grad;
  };

  int push(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::vector<Node> nodes_;
};

using Var = Tape::Var;

}  // namespace npsmooth

#endif  // NPSMOOTH_TAPE_HPP
