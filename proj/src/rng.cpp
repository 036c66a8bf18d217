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

#include "npsmooth/rng.hpp"

#include <cmath>

#include "npsmooth/common.hpp"
#include "npsmooth/errors.hpp"

namespace npsmooth {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t derive_stream(uint64_t root, std::string_view tag, uint64_t a,
                       uint64_t b) {
  uint64_t h = splitmix64(root ^ fnv1a64(tag));
  h = splitmix64(h + a * 0x9e3779b97f4a7c15ULL);
  h = splitmix64(h + b * 0x9e3779b97f4a7c15ULL);
  return h;
}

size_t Rng::categorical(std::span<const double> probs) {
  double total = 0.0;
  size_t last_positive = probs.size();
  for (size_t i = 0; i < probs.size(); ++i) {
    NPS_DASSERT(probs[i] >= 0.0);
    total += probs[i];
    if (probs[i] > 0.0) last_positive = i;
  }
  if (total <= 0.0 || last_positive == probs.size()) {
    throw DegenerateEnsembleError("categorical draw over all-zero weights");
  }
  double r = uniform() * total;
  double cum = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (r < cum && probs[i] > 0.0) return i;
  }
  return last_positive;
}

size_t Rng::categorical_log(std::span<const double> logw) {
  std::vector<double> probs = normalized_from_log(logw);
  return categorical(probs);
}

}  // namespace npsmooth
