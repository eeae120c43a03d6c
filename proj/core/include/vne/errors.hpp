// Copyright 2026 The vne-sim Authors
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

#ifndef VNE_ERRORS_HPP
#define VNE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vne {

// A placement covers at least one cell that is already occupied.
struct OverlapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A placement reaches outside the substrate.
struct OutOfBoundsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The named network owns no cell of the grid.
struct UnknownNetworkError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A vacant region cannot contain the requested rectangle.
struct RegionTooSmallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caller-supplied state violates a documented precondition.
struct InvalidStateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The mandatory networks of an exact solve cannot all be embedded.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid scenario or traffic configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line_number)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
  int line;
};

}  // namespace vne

#endif  // VNE_ERRORS_HPP
