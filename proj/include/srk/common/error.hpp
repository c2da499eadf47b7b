// Copyright 2026 The SRK Authors.
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

#ifndef SRK_COMMON_ERROR_HPP_
#define SRK_COMMON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace srk {

// Base class for all errors raised by the toolkit. The `kind()` tag is what
// the CLI writes into its machine-readable error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Invalid inputs: broken invariants, inconsistent configs, bad dimensions.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message) : Error("validation", message) {}
};

// Malformed file contents (manifests, configs, checkpoints).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error("parse", message) {}
};

// Filesystem and I/O failures.
class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io", message) {}
};

}  // namespace srk

#endif  // SRK_COMMON_ERROR_HPP_
