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
#include <span>
#include <string>
#include <vector>

#include "finitepop/matrix.hpp"

namespace finitepop::sampling {

/// Purpose tag mixed into every stream seed so that, for one master seed,
/// data generation and the permutations applied to that data never share a
/// stream.
enum class Domain : std::uint64_t {
  kPermutation = 1,
  kSubsample = 2,
  kGaussian = 3,
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Master seed plus the fixed derivation of per-(replica, row) streams:
///
///   h = mix64(master ^ mix64(domain + G))
///   h = mix64(h + mix64(replica + 2G))
///   h = mix64(h + mix64(row + 3G))          G = 0x9e3779b97f4a7c15
///
/// all arithmetic modulo 2^64. Streams depend only on these values, never
/// on the order in which replicas are run.
struct SeedSpec {
  std::uint64_t master_seed = 0;

  constexpr std::uint64_t stream(Domain domain, std::uint64_t replica,
                                 std::uint64_t row) const noexcept {
    constexpr std::uint64_t g = 0x9e3779b97f4a7c15ull;
    std::uint64_t h = mix64(master_seed ^ mix64(static_cast<std::uint64_t>(domain) + g));
    h = mix64(h + mix64(replica + 2 * g));
    h = mix64(h + mix64(row + 3 * g));
    return h;
  }
};

/// Parses a decimal or 0x-prefixed hexadecimal 64-bit seed. Throws InputError.
SeedSpec parse_seed(const std::string& text);

/// xoshiro256** 1.0 (Blackman & Vigna), state filled by four successive
/// splitmix64 outputs of the stream seed.
class Rng {
 public:
  explicit Rng(std::uint64_t stream_seed) noexcept;

  std::uint64_t next() noexcept;

  /// Uniform integer in [0, bound), Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; draws come in pairs (cos branch first).
  double normal() noexcept;

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// n entries drawn uniformly without replacement (partial Fisher-Yates over
/// an index array). Throws DomainError unless 1 <= n <= u.size().
std::vector<double> swor_row(std::span<const double> u, std::size_t n, Rng& rng);

/// swor_row applied independently to every row with streams
/// (kSubsample, replica, row).
DataMatrix swor_matrix(const DataMatrix& u, std::size_t n, const SeedSpec& seed,
                       std::uint64_t replica);

/// Every row independently and uniformly permuted (full Fisher-Yates) with
/// streams (kPermutation, replica, row).
DataMatrix permute_rows(const DataMatrix& b, const SeedSpec& seed, std::uint64_t replica);

/// permute_rows writing into a preallocated matrix of the same shape.
void permute_rows_into(const DataMatrix& b, const SeedSpec& seed, std::uint64_t replica,
                       DataMatrix& out);

/// i.i.d. N(0, 1) entries, streams (kGaussian, replica, row).
DataMatrix gaussian_matrix(std::size_t p, std::size_t n, const SeedSpec& seed,
                           std::uint64_t replica);

}  // namespace finitepop::sampling
