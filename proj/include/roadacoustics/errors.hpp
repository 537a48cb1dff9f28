// Copyright 2026 The Roadacoustics Authors
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

#ifndef ROADACOUSTICS_ERRORS_HPP_
#define ROADACOUSTICS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace roadac {

// Error categories. Kept in sync with the ra_status codes of the C API.
enum class ErrorCode {
  kInvalidArgument = 1,  // bad parameter value
  kInvalidGeometry = 2,  // point below or on the road plane, coincident points
  kOutOfRange = 3,       // time/distance/index beyond the supported range
  kDelayRange = 4,       // delay-line read outside the retained window
  kConfig = 5,           // scene/spec configuration cannot be realized
  kFormat = 6,           // malformed file content (WAV, JSON)
  kIo = 7,               // filesystem failure
  kPrecondition = 8,     // operation preconditions violated
  kInternal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace roadac

#endif  // ROADACOUSTICS_ERRORS_HPP_
