// Copyright 2026 The fhvqe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FHVQE_ERRORS_HPP
#define FHVQE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fhvqe {

/// Bad user input: out-of-range indices, malformed configs, inconsistent
/// sectors. CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A hard resource guard was exceeded (grid too large, too many qubits).
class ResourceError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical failure at runtime (non-finite objective, failed solve).
/// CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A degenerate level where a unique state is required (Slater fillings,
/// fidelity references).
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fhvqe

#endif  // FHVQE_ERRORS_HPP
