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

#ifndef PRIVLEARN_ERROR_H_
#define PRIVLEARN_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace privlearn {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidNodeId,
  kSelfLoop,
  kDuplicateEdge,
  kDisconnectedGraph,
  kBipartiteGraph,
  kInvalidDegree,
  kGenerationFailed,
  kConvergenceFailure,
  kEmptySampleSet,
  kConfigError,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures surface as this exception; `code()` names the
// violated precondition so callers (and the Python bindings) can dispatch.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace privlearn

#endif  // PRIVLEARN_ERROR_H_
