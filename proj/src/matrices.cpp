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

#include "finitepop/matrices.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "finitepop/error.hpp"

namespace finitepop {

namespace {

void require_two_columns(const DataMatrix& b, const char* op) {
  if (b.cols() < 2) {
    throw DegenerateError(std::string(op) + " needs at least 2 columns, got " +
                          std::to_string(b.cols()));
  }
}

// Two-pass mean with a correction term.
double row_mean(std::span<const double> row) {
  const double n = static_cast<double>(row.size());
  double sum = 0.0;
  for (double v : row) sum += v;
  double mean = sum / n;
  double resid = 0.0;
  for (double v : row) resid += v - mean;
  return mean + resid / n;
}

bool is_constant(std::span<const double> row, double centered_ss) {
  const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
  if (*lo == *hi) return true;
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * scale;
  return centered_ss <= static_cast<double>(row.size()) * floor * floor;
}

}  // namespace

SymMatrix scov(const DataMatrix& w, std::size_t divisor) {
  if (divisor == 0) throw InputError("scov divisor must be >= 1");
  const std::size_t p = w.rows();
  const double inv = 1.0 / static_cast<double>(divisor);
  SymMatrix s(p);
  for (std::size_t i = 0; i < p; ++i) {
    const auto ri = w.row(i);
    for (std::size_t j = i; j < p; ++j) {
      const auto rj = w.row(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < ri.size(); ++k) acc += ri[k] * rj[k];
      s.set(i, j, acc * inv);
    }
  }
  return s;
}

SymMatrix companion(const DataMatrix& y) { return scov(y.transposed(), 1); }

DataMatrix center_rows(const DataMatrix& b) {
  require_two_columns(b, "center_rows");
  DataMatrix out = b;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto row = out.row(i);
    const double mean = row_mean(row);
    for (double& v : row) v -= mean;
  }
  return out;
}

std::vector<double> centered_sum_squares(const DataMatrix& b) {
  const DataMatrix c = center_rows(b);
  std::vector<double> ss(c.rows());
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (double v : c.row(i)) ss[i] += v * v;
  }
  return ss;
}

DataMatrix standardize_rows(const DataMatrix& b) {
  DataMatrix out = center_rows(b);
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto row = out.row(i);
    double ss = 0.0;
    for (double v : row) ss += v * v;
    if (is_constant(b.row(i), ss)) {
      bad.push_back(i);
      continue;
    }
    const double inv = 1.0 / std::sqrt(ss);
    for (double& v : row) v *= inv;
  }
  if (!bad.empty()) {
    std::string msg = "zero-variance row(s):";
    for (std::size_t i : bad) msg += " " + std::to_string(i);
    throw DegenerateError(msg, std::move(bad));
  }
  return out;
}

SymMatrix spatial_sign(const DataMatrix& y) { return scov(standardize_rows(y), 1); }

DataMatrix row_ranks(const DataMatrix& y) {
  const std::size_t n = y.cols();
  DataMatrix out(y.rows(), n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < y.rows(); ++i) {
    const auto row = y.row(i);
    auto ranks = out.row(i);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
    for (std::size_t start = 0; start < n;) {
      std::size_t end = start + 1;
      while (end < n && row[order[end]] == row[order[start]]) ++end;
      // ranks start..end-1 (zero based) tie; average of 1-based ranks
      const double avg = 0.5 * static_cast<double>(start + 1 + end);
      for (std::size_t k = start; k < end; ++k) ranks[order[k]] = avg;
      start = end;
    }
  }
  return out;
}

SymMatrix spearman(const DataMatrix& y) {
  require_two_columns(y, "spearman");
  return spatial_sign(row_ranks(y));
}

std::vector<double> spearman_grid_population(std::size_t population_size) {
  if (population_size < 2) {
    throw DegenerateError("rank grid population needs N >= 2, got " +
                          std::to_string(population_size));
  }
  const double n = static_cast<double>(population_size);
  const double scale = std::sqrt(12.0 / (n * n - 1.0));
  const double mid = 0.5 * (n + 1.0);
  std::vector<double> u(population_size);
  for (std::size_t j = 0; j < population_size; ++j) {
    u[j] = scale * (static_cast<double>(j + 1) - mid);
  }
  return u;
}

}  // namespace finitepop
