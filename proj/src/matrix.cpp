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

#include "finitepop/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "finitepop/error.hpp"

namespace finitepop {

namespace {

void check_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw InputError("matrix must have at least one row and one column (got " +
                     std::to_string(rows) + "x" + std::to_string(cols) + ")");
  }
}

}  // namespace

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {
  check_shape(rows, cols);
}

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  check_shape(rows, cols);
  if (values_.size() != rows * cols) {
    throw InputError("matrix value count " + std::to_string(values_.size()) +
                     " does not match shape " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw InputError("non-finite entry at row " + std::to_string(k / cols) + ", column " +
                       std::to_string(k % cols));
    }
  }
}

DataMatrix DataMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InputError("matrix must have at least one row");
  const std::size_t cols = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw InputError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(cols));
    }
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return DataMatrix(rows.size(), cols, std::move(values));
}

DataMatrix DataMatrix::transposed() const {
  DataMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

double DataMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

SymMatrix::SymMatrix(std::size_t dim) : dim_(dim), packed_(dim * (dim + 1) / 2, 0.0) {
  if (dim == 0) throw InputError("symmetric matrix must have dimension >= 1");
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  SymMatrix a(dim);
  for (std::size_t i = 0; i < dim; ++i) a.set(i, i, 1.0);
  return a;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix a(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) a.set(i, i, diag[i]);
  return a;
}

SymMatrix SymMatrix::from_dense_upper(std::size_t dim, std::span<const double> dense) {
  if (dense.size() != dim * dim) throw InputError("dense array size does not match dimension");
  SymMatrix a(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const double v = dense[i * dim + j];
      if (!std::isfinite(v)) throw InputError("non-finite entry in symmetric matrix");
      a.set(i, j, v);
    }
  }
  return a;
}

std::vector<double> SymMatrix::to_dense() const {
  std::vector<double> out(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      const double v = (*this)(i, j);
      out[i * dim_ + j] = v;
      out[j * dim_ + i] = v;
    }
  }
  return out;
}

double SymMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : packed_) m = std::max(m, std::abs(v));
  return m;
}

void SymMatrix::multiply(std::span<const double> x, std::span<double> y) const noexcept {
  std::fill(y.begin(), y.end(), 0.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    y[i] += packed_[k++] * x[i];
    for (std::size_t j = i + 1; j < dim_; ++j, ++k) {
      y[i] += packed_[k] * x[j];
      y[j] += packed_[k] * x[i];
    }
  }
}

}  // namespace finitepop
