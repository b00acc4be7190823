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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "finitepop/error.hpp"
#include "finitepop/stats.hpp"

namespace stats = finitepop::stats;

TEST_CASE("type-7 quantiles") {
  std::vector<double> x;
  for (int i = 1; i <= 10; ++i) x.push_back(i);
  CHECK(stats::quantile_sorted(x, 0.95) == doctest::Approx(9.55));
  CHECK(stats::quantile_sorted(x, 0.5) == doctest::Approx(5.5));
  CHECK(stats::quantile_sorted(x, 0.0) == 1.0);
  CHECK(stats::quantile_sorted(x, 1.0) == 10.0);
  CHECK(stats::quantile_sorted(std::vector<double>{4.0}, 0.3) == 4.0);
  CHECK_THROWS_AS(stats::quantile_sorted(std::vector<double>{}, 0.5), finitepop::DomainError);
  CHECK_THROWS_AS(stats::quantile_sorted(x, 1.5), finitepop::DomainError);
}

TEST_CASE("ks_distance") {
  const std::vector<double> x{0.1, 0.4, 0.7};
  auto uniform = [](double v) { return std::min(1.0, std::max(0.0, v)); };
  // steps at 1/3, 2/3, 1 against F(v) = v
  CHECK(stats::ks_distance(x, uniform) == doctest::Approx(0.3));
  const std::vector<double> y{0.5};
  CHECK(stats::ks_distance(y, uniform) == doctest::Approx(0.5));
}

TEST_CASE("mean and variance") {
  const std::vector<double> x{1, 2, 3, 4};
  CHECK(stats::mean(x) == 2.5);
  CHECK(stats::variance(x) == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  setenv("FINITEPOP_THREADS", "4", 1);
  CHECK(stats::thread_count() == 4);
  std::vector<std::atomic<int>> hits(1000);
  stats::parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(stats::parallel_for(100,
                                      [](std::size_t i) {
                                        if (i == 37) throw std::runtime_error("boom");
                                      }),
                  std::runtime_error);
  setenv("FINITEPOP_THREADS", "junk", 1);
  CHECK(stats::thread_count() >= 1);
  unsetenv("FINITEPOP_THREADS");
}
