// Copyright 2026 The finitepop Authors.
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
#include <vector>

namespace finitepop {

/// Base class for every error raised by the library. The CLI maps the
/// subclasses onto its exit codes (2 input, 3 degenerate data, 4 numerical).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input: non-finite entries, bad shapes,
/// unparsable files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function (e.g. a quantile
/// level outside (0, 1)).
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// Inconsistent procedure configuration.
class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

/// Data that is well-formed but degenerate for the requested operation:
/// too few columns, or rows with zero variance.
class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& what, std::vector<std::size_t> rows = {})
      : Error(what), rows_(std::move(rows)) {}

  /// Zero-based indices of the offending rows, if any.
  const std::vector<std::size_t>& rows() const noexcept { return rows_; }

 private:
  std::vector<std::size_t> rows_;
};

/// An iterative solver hit its iteration cap without meeting its tolerance.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual, std::size_t iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

}  // namespace finitepop
