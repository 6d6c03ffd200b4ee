// Copyright 2026 The sigstruct Authors
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

#ifndef SIGSTRUCT_ERROR_HPP_
#define SIGSTRUCT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace sigstruct {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was asked to run on a net that fails validation.
class InvalidNetError : public Error {
 public:
  using Error::Error;
};

class IncompleteAssignmentError : public Error {
 public:
  using Error::Error;
};

class ZeroProbabilityError : public Error {
 public:
  using Error::Error;
};

// Model constructor arguments out of range (agent count, cardinality, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration would exceed its configured cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

struct Diagnostic {
  std::string location;  // field path, e.g. "cpts[0].rows[1]", or "line 3, column 7"
  std::string message;
};

// Schema or semantic problems found while reading a model file.
class ModelError : public Error {
 public:
  explicit ModelError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace sigstruct

#endif  // SIGSTRUCT_ERROR_HPP_
