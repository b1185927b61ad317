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

#include "errors.hpp"

namespace imlab {

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonUnitary: return "NonUnitary";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotADensityMatrix: return "NotADensityMatrix";
    case ErrorKind::NonTracePreserving: return "NonTracePreserving";
    case ErrorKind::ExplosionGuard: return "ExplosionGuard";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorKind::InconsistentReachableSets:
      return "InconsistentReachableSets";
    case ErrorKind::DegenerateNorm: return "DegenerateNorm";
    case ErrorKind::NonConvergentSteadyState:
      return "NonConvergentSteadyState";
    case ErrorKind::AllZeroWeights: return "AllZeroWeights";
    case ErrorKind::POutOfRange: return "POutOfRange";
    case ErrorKind::OddL: return "OddL";
    case ErrorKind::TooFewLevels: return "TooFewLevels";
    case ErrorKind::NonUniformAlpha: return "NonUniformAlpha";
    case ErrorKind::BadDims: return "BadDims";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

bool is_resource_error(ErrorKind kind) {
  return kind == ErrorKind::ExplosionGuard || kind == ErrorKind::TooLarge;
}

void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

}  // namespace imlab
