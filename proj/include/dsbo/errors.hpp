// Copyright 2025 The dsbo authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace dsbo {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct NotDoublyStochastic : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DisconnectedGraph : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DuplicateEdge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SelfLoop : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadRho : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadBatchSize : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonPositiveStep : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CapabilityMissing : std::logic_error {
  using std::logic_error::logic_error;
};

struct DivergenceDetected : std::runtime_error {
  explicit DivergenceDetected(long long step)
      : std::runtime_error("non-finite iterate detected at outer step " +
                           std::to_string(step)),
        step(step) {}
  long long step;
};

struct LowerSolveFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularHessian : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadMagic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CountMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TruncatedFile : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MismatchedCadence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dsbo
