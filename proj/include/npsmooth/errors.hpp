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

#ifndef NPSMOOTH_ERRORS_HPP
#define NPSMOOTH_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "npsmooth/common.hpp"

namespace npsmooth {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidSymbolError : Error {
  using Error::Error;
};

struct ShapeError : Error {
  using Error::Error;
};

// Raised by the exact belief update when an observed pair has zero
// probability under the model; carries the -inf score for callers that
// prefer to continue in log space.
struct ImpossiblePrefixError : Error {
  explicit ImpossiblePrefixError(const std::string& msg) : Error(msg) {}
  double log_score = kNegInf;
};

struct EnumerationTooLargeError : Error {
  using Error::Error;
};

struct DeadEndError : Error {
  using Error::Error;
};

struct DegenerateEnsembleError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace npsmooth

#endif  // NPSMOOTH_ERRORS_HPP
