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
#include <vector>

#include "finitepop/matrix.hpp"

namespace finitepop {

/// (1/divisor) W W^T. The finite-population sample covariance uses
/// divisor = cols(W).
SymMatrix scov(const DataMatrix& w, std::size_t divisor);

/// Y^T Y, the n x n companion sharing the nonzero spectrum of Y Y^T.
SymMatrix companion(const DataMatrix& y);

/// Subtracts each row's sample mean. Requires at least two columns.
DataMatrix center_rows(const DataMatrix& b);

/// Sum of squares of each centered row, i.e. the diagonal of
/// (B - mean)(B - mean)^T with no divisor.
std::vector<double> centered_sum_squares(const DataMatrix& b);

/// Centers each row and scales it to unit sum of squares. Throws
/// DegenerateError listing every constant row.
DataMatrix standardize_rows(const DataMatrix& b);

/// Row-centered, row-normalized Gram matrix; its entries are the Pearson
/// correlations between rows. Computed as scov(standardize_rows(y), 1).
SymMatrix spatial_sign(const DataMatrix& y);

/// Ranks 1..n within each row, ties share their average rank.
DataMatrix row_ranks(const DataMatrix& y);

/// Spearman rank correlation matrix between rows (average ranks for ties).
SymMatrix spearman(const DataMatrix& y);

/// Standardized rank grid sqrt(12/(N^2-1)) * (j - (N+1)/2), j = 1..N: the
/// finite population whose without-replacement samples give Spearman's
/// matrix. Mean 0, mean square 1.
std::vector<double> spearman_grid_population(std::size_t population_size);

}  // namespace finitepop
