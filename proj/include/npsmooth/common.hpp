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

#ifndef NPSMOOTH_COMMON_HPP
#define NPSMOOTH_COMMON_HPP

#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace npsmooth {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// All scores and weights live in natural-log units.  logsumexp is the one
// place where we move through the probability domain, so it is max-shifted.
inline double log_sum_exp(std::span<const double> v) {
  double mx = kNegInf;
  for (double x : v) {
    if (x > mx) mx = x;
  }
  if (mx == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) {
    if (x != kNegInf) s += std::exp(x - mx);
  }
  return mx + std::log(s);
}

inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double mx = a > b ? a : b;
  return mx + std::log(std::exp(a - mx) + std::exp(b - mx));
}

// Normalizes log-weights into a probability vector, in place safe.
inline std::vector<double> normalized_from_log(std::span<const double> logw) {
  std::vector<double> out(logw.size(), 0.0);
  double lz = log_sum_exp(logw);
  if (lz == kNegInf) return out;
  for (size_t i = 0; i < logw.size(); ++i) {
    out[i] = logw[i] == kNegInf ? 0.0 : std::exp(logw[i] - lz);
  }
  return out;
}

#ifndef NDEBUG
#define NPS_DASSERT(cond) assert(cond)
#else
#define NPS_DASSERT(cond) ((void)0)
#endif

}  // namespace npsmooth

#endif  // NPSMOOTH_COMMON_HPP
