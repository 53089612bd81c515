// Copyright 2026 The csvkg Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csvkg {

// Base class for all errors raised by the library. `kind` is a stable
// machine-readable code emitted by the CLI in structured error messages.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io_error", message) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error("parse_error", message + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error("invalid_argument", message) {}
};

class UnsupportedTopology : public Error {
 public:
  explicit UnsupportedTopology(const std::string& message)
      : Error("unsupported_topology", message) {}
};

class GraphError : public Error {
 public:
  explicit GraphError(const std::string& message)
      : Error("graph_error", message) {}
};

}  // namespace csvkg
