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
#include <span>
#include <utility>
#include <vector>

namespace finitepop {

/// Dense real p x n matrix, rows are variables and columns are observations.
/// Storage is row-major. Every entry is finite and both dimensions are >= 1;
/// the constructors enforce this and throw InputError otherwise.
class DataMatrix {
 public:
  DataMatrix(std::size_t rows, std::size_t cols);
  DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  /// Builds a matrix from nested rows; all rows must have the same length.
  static DataMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) noexcept { return {values_.data() + i * cols_, cols_}; }

  std::span<const double> values() const noexcept { return values_; }

  DataMatrix transposed() const;

  /// Largest absolute entry.
  double max_abs() const noexcept;

  friend bool operator==(const DataMatrix&, const DataMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

/// Real symmetric matrix stored as its packed upper triangle, so
/// value(i, j) == value(j, i) holds by construction.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t dim);

  static SymMatrix identity(std::size_t dim);
  static SymMatrix diagonal(std::span<const double> diag);
  /// Takes the upper triangle of a dense row-major dim x dim array.
  static SymMatrix from_dense_upper(std::size_t dim, std::span<const double> dense);

  std::size_t dim() const noexcept { return dim_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return packed_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) noexcept { packed_[index(i, j)] = v; }

  /// Full dense row-major copy.
  std::vector<double> to_dense() const;

  double trace() const noexcept;
  double max_abs() const noexcept;

  /// y = A x.
  void multiply(std::span<const double> x, std::span<double> y) const noexcept;

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    // row i of the upper triangle starts after i rows of decreasing length
    return i * dim_ - i * (i - 1) / 2 + (j - i);
  }

  std::size_t dim_;
  std::vector<double> packed_;
};

}  // namespace finitepop
