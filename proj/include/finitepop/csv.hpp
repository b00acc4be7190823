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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "finitepop/error.hpp"
#include "finitepop/matrix.hpp"

namespace finitepop::csv {

/// Malformed CSV; line and column are 1-based.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct Table {
  DataMatrix matrix;
  std::vector<std::string> header;  // empty when the file had none
};

/// Comma-separated numbers, one matrix row per line, blank lines ignored.
/// The first line is taken as a header when any of its fields is not a
/// number. Rows are variables; `transpose` reads lines as observations.
Table parse(std::string_view text, bool transpose = false);

/// Reads a whole file. Throws InputError if it cannot be opened.
std::string read_file(const std::string& path);

/// Whitespace- or comma-separated list of numbers (tvals files, percentile
/// lists). Throws ParseError.
std::vector<double> parse_numbers(std::string_view text);

}  // namespace finitepop::csv
