// Copyright 2026 The privlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privlearn/error.h"

namespace privlearn {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kInvalidNodeId:
      return "InvalidNodeId";
    case ErrorCode::kSelfLoop:
      return "SelfLoop";
    case ErrorCode::kDuplicateEdge:
      return "DuplicateEdge";
    case ErrorCode::kDisconnectedGraph:
      return "DisconnectedGraph";
    case ErrorCode::kBipartiteGraph:
      return "BipartiteGraph";
    case ErrorCode::kInvalidDegree:
      return "InvalidDegree";
    case ErrorCode::kGenerationFailed:
      return "GenerationFailed";
    case ErrorCode::kConvergenceFailure:
      return "ConvergenceFailure";
    case ErrorCode::kEmptySampleSet:
      return "EmptySampleSet";
    case ErrorCode::kConfigError:
      return "ConfigError";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace privlearn
