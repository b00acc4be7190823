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

#include <cstdint>
#include <string_view>
#include <vector>

namespace finitepop::tw {

/// Type-1 Tracy-Widom CDF tabulated on a grid. Between nodes log F is
/// interpolated with a monotone (Fritsch-Carlson) cubic; below the first node
/// log F = a + b |s|^3 and above the last node log(1 - F) = a + b s^(3/2),
/// each fit through the two outermost nodes so the tails are continuous at
/// the junction.
class Table {
 public:
  /// Parses the text format: two whitespace-separated columns (s, F), one
  /// node per line, '#' starts a comment. Validates strict monotonicity,
  /// F in (0, 1), coverage of [-10, 6] with spacing <= 0.05, and that the
  /// 5%, 50% and 95% quantiles sit within 0.01 of -3.1880, -1.2680, 0.9765.
  /// Throws InputError.
  static Table parse(std::string_view text);

  /// The embedded table; its checksum is verified on first use.
  static const Table& builtin();

  double cdf(double s) const;
  /// 1 - cdf(s), computed without cancellation in the right tail.
  double pvalue(double s) const;
  /// Inverse of cdf by bisection. Throws DomainError unless 0 < q < 1.
  double quantile(double q) const;

  const std::vector<double>& s() const noexcept { return s_; }
  const std::vector<double>& f() const noexcept { return f_; }

 private:
  Table() = default;
  double log_cdf(double s) const;

  std::vector<double> s_;
  std::vector<double> f_;
  std::vector<double> logf_;
  std::vector<double> slope_;  // d log F / ds at each node
  double left_a_ = 0.0, left_b_ = 0.0;
  double right_a_ = 0.0, right_b_ = 0.0;
};

/// FNV-1a 64 of the table text.
std::uint64_t checksum(std::string_view text);

/// Text of the embedded table asset (data/tw1_table.txt).
std::string_view builtin_table_text();

/// Checksum the embedded asset must match.
inline constexpr std::uint64_t kBuiltinTableChecksum = 0xbd9fd2aa0cd8cd80ull;

double tw1_cdf(double s);
double tw1_quantile(double q);
double tw1_pvalue(double s);

}  // namespace finitepop::tw
