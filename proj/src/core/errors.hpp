// Copyright 2026 The imlab Authors
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

namespace imlab {

enum class ErrorKind {
  InvalidArgument,
  NonUnitary,
  DimensionMismatch,
  UnsupportedDimension,
  NotNormalized,
  NotADensityMatrix,
  NonTracePreserving,
  ExplosionGuard,
  TooLarge,
  InsufficientData,
  DeltaOutOfRange,
  InconsistentReachableSets,
  DegenerateNorm,
  NonConvergentSteadyState,
  AllZeroWeights,
  POutOfRange,
  OddL,
  TooFewLevels,
  NonUniformAlpha,
  BadDims,
  ParseError,
  NumericalFailure,
};

const char* error_name(ErrorKind kind);

// Resource guards are reported separately from validation failures.
bool is_resource_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& detail);

}  // namespace imlab
