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
#include <functional>
#include <span>
#include <vector>

namespace finitepop::stats {

/// Linear-interpolation order-statistic quantile (type 7) of an ascending
/// sample. Throws DomainError for an empty sample or q outside [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);

/// Kolmogorov-Smirnov distance sup |F_emp - F| between the empirical CDF
/// of an ascending sample and a continuous CDF.
double ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf);

double mean(std::span<const double> x);
/// Sample variance with divisor n - 1.
double variance(std::span<const double> x);

/// Runs body(i) for i in [0, count) on a pool of worker threads. The
/// thread count comes from the FINITEPOP_THREADS environment variable when
/// set, else std::thread::hardware_concurrency(). The first exception thrown
/// by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Worker count parallel_for will use.
std::size_t thread_count();

}  // namespace finitepop::stats
