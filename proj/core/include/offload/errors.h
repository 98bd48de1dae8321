// Copyright 2026 The Offload Authors.
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

#ifndef OFFLOAD_ERRORS_H_
#define OFFLOAD_ERRORS_H_

#include <stdexcept>
#include <string>

namespace offload {

// Invalid or inconsistent configuration. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; the message carries "path:line: reason".
class ParseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Scenario or link graph that cannot be turned into a problem.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure inside the optimizer. The CLI maps this to exit code 2.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace offload

#endif  // OFFLOAD_ERRORS_H_
