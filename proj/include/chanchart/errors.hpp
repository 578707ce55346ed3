// SPDX-License-Identifier: Apache-2.0
//
// chanchart - channel charting toolkit for massive MIMO channels
// Copyright (C) 2026 the chanchart authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace chanchart {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition (bad dimension, zero norm, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Byte stream does not follow the dataset format (bad magic, bad header).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Byte stream ended before the announced payload was complete.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, std::uint64_t expected, std::uint64_t actual)
      : Error(what), expected_bytes(expected), actual_bytes(actual) {}
  std::uint64_t expected_bytes;
  std::uint64_t actual_bytes;
};

/// Read or write on a sink/source failed; `offset` is the byte position reached.
class IoError : public Error {
 public:
  IoError(const std::string& what, std::uint64_t offset_reached)
      : Error(what), offset(offset_reached) {}
  std::uint64_t offset;
};

/// Text input (CSV row, config line) could not be parsed; `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line_number)
      : Error(what), line(line_number) {}
  std::size_t line;
};

/// Neighborhood graph is disconnected and the policy forbids repairing it.
class ConnectivityError : public Error {
 public:
  ConnectivityError(const std::string& what, std::vector<std::size_t> sizes)
      : Error(what), component_sizes(std::move(sizes)) {}
  std::vector<std::size_t> component_sizes;
};

/// Iterative eigensolve did not reach its tolerance within the iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual_reached)
      : Error(what), residual(residual_reached) {}
  double residual;
};

/// Failure inside a named pipeline stage; wraps the underlying message.
class StageError : public Error {
 public:
  StageError(const std::string& stage_name, const std::string& what)
      : Error("stage '" + stage_name + "': " + what), stage(stage_name) {}
  std::string stage;
};

}  // namespace chanchart
