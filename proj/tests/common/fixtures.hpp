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

// Synthetic data sets shared by the unit and acceptance suites.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "finitepop/matrix.hpp"
#include "finitepop/sampling.hpp"

namespace fixtures {

/// Orthonormal columns (as rows of the result) from Gram-Schmidt on
/// Gaussian draws.
inline std::vector<std::vector<double>> orthonormal(std::size_t count, std::size_t dim,
                                                    finitepop::sampling::Rng& rng) {
  std::vector<std::vector<double>> out;
  while (out.size() < count) {
    std::vector<double> v(dim);
    for (auto& x : v) x = rng.normal();
    for (const auto& u : out) {
      double d = 0.0;
      for (std::size_t i = 0; i < dim; ++i) d += u[i] * v[i];
      for (std::size_t i = 0; i < dim; ++i) v[i] -= d * u[i];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    out.push_back(std::move(v));
  }
  return out;
}

/// Gaussian noise plus `factors` rank-one signals u_k v_k^T, each with
/// operator norm `strength`, with orthonormal u's and v's.
inline finitepop::DataMatrix planted(std::size_t p, std::size_t n, std::size_t factors,
                                     double strength, std::uint64_t seed) {
  const finitepop::sampling::SeedSpec spec{seed};
  finitepop::DataMatrix b = finitepop::sampling::gaussian_matrix(p, n, spec, 0);
  finitepop::sampling::Rng rng(spec.stream(finitepop::sampling::Domain::kGaussian, 1, 0));
  const auto u = orthonormal(factors, p, rng);
  const auto v = orthonormal(factors, n, rng);
  for (std::size_t k = 0; k < factors; ++k)
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) += strength * u[k][i] * v[k][j];
  return b;
}

inline finitepop::DataMatrix noise(std::size_t p, std::size_t n, std::uint64_t seed) {
  return finitepop::sampling::gaussian_matrix(p, n, finitepop::sampling::SeedSpec{seed}, 0);
}

}  // namespace fixtures
