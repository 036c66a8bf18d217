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

#ifndef NPSMOOTH_RNG_HPP
#define NPSMOOTH_RNG_HPP

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace npsmooth {

// Stream derivation
// -----------------
// Every stochastic component draws from an Rng seeded through
// derive_stream(root, tag, a, b):
//
//   h0 = splitmix64(root ^ fnv1a64(tag))
//   h1 = splitmix64(h0 + a * 0x9e3779b97f4a7c15)
//   h2 = splitmix64(h1 + b * 0x9e3779b97f4a7c15)
//
// and the resulting value seeds a std::mt19937_64.  Streams indexed this way
// are stable: growing the particle count or changing the worker count never
// perturbs the draws of an existing stream.  All distribution transforms
// below are hand-rolled on top of the (standardized) mt19937_64 output so
// that sampled values do not depend on the standard library implementation.

uint64_t splitmix64(uint64_t x);
uint64_t fnv1a64(std::string_view s);
uint64_t derive_stream(uint64_t root, std::string_view tag, uint64_t a = 0,
                       uint64_t b = 0);

class Rng {
 public:
  Rng() : engine_(0xa5a5a5a5a5a5a5a5ULL) {}
  explicit Rng(uint64_t seed) : engine_(seed) {}

  static Rng derived(uint64_t root, std::string_view tag, uint64_t a = 0,
                     uint64_t b = 0) {
    return Rng(derive_stream(root, tag, a, b));
  }

  uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; two uniforms per draw keeps the stream position predictable.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

  // Uniform integer in [0, n).  The modulo bias at 64 bits is far below any
  // tolerance used in this project.
  uint64_t uniform_int(uint64_t n) { return n <= 1 ? 0 : engine_() % n; }

  bool coin() { return (engine_() & 1ULL) != 0; }

  // Cumulative-probability inversion with a single uniform draw; the last
  // positive-probability bucket absorbs rounding residue.
  size_t categorical(std::span<const double> probs);

  // Same, for unnormalized log-weights.
  size_t categorical_log(std::span<const double> logw);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace npsmooth

#endif  // NPSMOOTH_RNG_HPP
