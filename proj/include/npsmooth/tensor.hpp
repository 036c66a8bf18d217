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

#ifndef NPSMOOTH_TENSOR_HPP
#define NPSMOOTH_TENSOR_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "npsmooth/common.hpp"
#include "npsmooth/errors.hpp"

namespace npsmooth {

// Dense 64-bit float tensor.  Rank 0 (scalar), 1 (vector) and 2 (matrix,
// row-major) are the only ranks this project needs.
struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;

  Tensor() = default;

  static Tensor scalar(double v) {
    Tensor t;
    t.data = {v};
    return t;
  }
  static Tensor zeros_vec(int n) {
    Tensor t;
    t.shape = {n};
    t.data.assign(static_cast<size_t>(n), 0.0);
    return t;
  }
  static Tensor zeros_mat(int rows, int cols) {
    Tensor t;
    t.shape = {rows, cols};
    t.data.assign(static_cast<size_t>(rows) * cols, 0.0);
    return t;
  }
  static Tensor from_vec(std::vector<double> v) {
    Tensor t;
    t.shape = {static_cast<int>(v.size())};
    t.data = std::move(v);
    return t;
  }

  size_t size() const { return data.size(); }
  bool is_scalar() const { return shape.empty(); }
  int rows() const { return shape.empty() ? 1 : shape[0]; }
  int cols() const { return shape.size() < 2 ? 1 : shape[1]; }

  double& at(int i) { return data[static_cast<size_t>(i)]; }
  double at(int i) const { return data[static_cast<size_t>(i)]; }
  double& at(int i, int j) { return data[static_cast<size_t>(i) * cols() + j]; }
  double at(int i, int j) const {
    return data[static_cast<size_t>(i) * cols() + j];
  }

  std::span<const double> row(int i) const {
    return std::span<const double>(data).subspan(
        static_cast<size_t>(i) * cols(), static_cast<size_t>(cols()));
  }

  bool same_shape(const Tensor& o) const { return shape == o.shape; }

  void fill(double v) {
    for (double& x : data) x = v;
  }

  void check_finite() const {
#ifndef NDEBUG
    for (double x : data) NPS_DASSERT(std::isfinite(x));
#endif
  }
};

inline void require_same_shape(const Tensor& a, const Tensor& b,
                               const char* what) {
  if (!a.same_shape(b)) throw ShapeError(std::string("shape mismatch in ") + what);
}

}  // namespace npsmooth

#endif  // NPSMOOTH_TENSOR_HPP
