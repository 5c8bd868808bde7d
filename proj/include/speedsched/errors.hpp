// Copyright 2026 the speedsched authors
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

namespace speedsched {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input files or out-of-contract arguments (CLI exit 2).
struct ParseError : Error {
  using Error::Error;
};

/// The requested demand/budget cannot be met (CLI exit 1).
struct InfeasibleError : Error {
  using Error::Error;
};

/// Instance handed to a solver outside its family (equal-volume, agreeable).
struct WrongSolverError : Error {
  using Error::Error;
};

/// Oracle declines instances beyond its enumeration caps (CLI exit 3).
struct OracleRefusal : Error {
  using Error::Error;
};

/// A "cannot happen" condition: an internal invariant failed (CLI exit 4).
struct InternalError : Error {
  using Error::Error;
};

}  // namespace speedsched
