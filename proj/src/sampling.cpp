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

#include "finitepop/sampling.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "finitepop/error.hpp"

namespace finitepop::sampling {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

SeedSpec parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    first += 2;
    base = 16;
  }
  const auto [ptr, ec] = std::from_chars(first, last, value, base);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw InputError("invalid seed '" + text + "' (expected decimal or 0x-prefixed hex)");
  }
  return SeedSpec{value};
}

Rng::Rng(std::uint64_t stream_seed) noexcept {
  std::uint64_t x = stream_seed;
  for (auto& s : s_) {
    x += 0x9e3779b97f4a7c15ull;
    s = mix64(x);
  }
}

std::uint64_t Rng::next() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::below(std::uint64_t bound) noexcept {
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] keeps the log finite
  const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::vector<double> swor_row(std::span<const double> u, std::size_t n, Rng& rng) {
  const std::size_t big_n = u.size();
  if (n == 0 || n > big_n) {
    throw DomainError("sampling without replacement needs 1 <= n <= N (n=" + std::to_string(n) +
                      ", N=" + std::to_string(big_n) + ")");
  }
  std::vector<std::size_t> idx(big_n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(big_n - i));
    std::swap(idx[i], idx[j]);
    out[i] = u[idx[i]];
  }
  return out;
}

DataMatrix swor_matrix(const DataMatrix& u, std::size_t n, const SeedSpec& seed,
                       std::uint64_t replica) {
  if (n == 0 || n > u.cols()) {
    throw DomainError("sampling without replacement needs 1 <= n <= N (n=" + std::to_string(n) +
                      ", N=" + std::to_string(u.cols()) + ")");
  }
  DataMatrix out(u.rows(), n);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    Rng rng(seed.stream(Domain::kSubsample, replica, i));
    const std::vector<double> row = swor_row(u.row(i), n, rng);
    std::copy(row.begin(), row.end(), out.row(i).begin());
  }
  return out;
}

void permute_rows_into(const DataMatrix& b, const SeedSpec& seed, std::uint64_t replica,
                       DataMatrix& out) {
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    auto dst = out.row(i);
    const auto src = b.row(i);
    std::copy(src.begin(), src.end(), dst.begin());
    Rng rng(seed.stream(Domain::kPermutation, replica, i));
    for (std::size_t j = n; j-- > 1;) {
      const auto k = static_cast<std::size_t>(rng.below(j + 1));
      std::swap(dst[j], dst[k]);
    }
  }
}

DataMatrix permute_rows(const DataMatrix& b, const SeedSpec& seed, std::uint64_t replica) {
  DataMatrix out(b.rows(), b.cols());
  permute_rows_into(b, seed, replica, out);
  return out;
}

DataMatrix gaussian_matrix(std::size_t p, std::size_t n, const SeedSpec& seed,
                           std::uint64_t replica) {
  DataMatrix out(p, n);
  for (std::size_t i = 0; i < p; ++i) {
    Rng rng(seed.stream(Domain::kGaussian, replica, i));
    for (double& v : out.row(i)) v = rng.normal();
  }
  return out;
}

}  // namespace finitepop::sampling
