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

#include "finitepop/tw.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

#include "finitepop/error.hpp"

namespace finitepop::tw {

namespace detail {
extern const char kTw1TableText[];
}  // namespace detail

namespace {

constexpr double kAnchorLevels[3] = {0.05, 0.50, 0.95};
constexpr double kAnchorQuantiles[3] = {-3.1880, -1.2680, 0.9765};
constexpr double kAnchorTolerance = 0.01;

double parse_number(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw InputError("TW table line " + std::to_string(line) + ": cannot parse '" +
                     std::string(tok) + "'");
  }
  return v;
}

double sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

std::uint64_t checksum(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string_view builtin_table_text() { return detail::kTw1TableText; }

Table Table::parse(std::string_view text) {
  Table t;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) toks.push_back(line.substr(start, i - start));
    }
    if (toks.empty()) continue;
    if (toks.size() != 2) {
      throw InputError("TW table line " + std::to_string(line_no) + ": expected 2 columns");
    }
    t.s_.push_back(parse_number(toks[0], line_no));
    t.f_.push_back(parse_number(toks[1], line_no));
  }

  const std::size_t n = t.s_.size();
  if (n < 4) throw InputError("TW table needs at least 4 nodes");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(t.f_[i] > 0.0 && t.f_[i] < 1.0)) {
      throw InputError("TW table node " + std::to_string(i) + ": F outside (0, 1)");
    }
    if (i > 0 && !(t.s_[i] > t.s_[i - 1] && t.f_[i] > t.f_[i - 1])) {
      throw InputError("TW table node " + std::to_string(i) + ": not strictly increasing");
    }
    if (i > 0 && t.s_[i] - t.s_[i - 1] > 0.05 + 1e-12) {
      throw InputError("TW table spacing exceeds 0.05 at node " + std::to_string(i));
    }
  }
  if (t.s_.front() > -10.0 || t.s_.back() < 6.0) {
    throw InputError("TW table must cover [-10, 6]");
  }

  t.logf_.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.logf_[i] = std::log(t.f_[i]);

  // Fritsch-Carlson slopes (weighted harmonic mean, pchip end conditions)
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = t.s_[i + 1] - t.s_[i];
    delta[i] = (t.logf_[i + 1] - t.logf_[i]) / h[i];
  }
  t.slope_.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) continue;
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    t.slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (sign(d) != sign(d0)) {
      d = 0.0;
    } else if (sign(d0) != sign(d1) && std::abs(d) > std::abs(3.0 * d0)) {
      d = 3.0 * d0;
    }
    return d;
  };
  t.slope_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  t.slope_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);

  const double s0 = std::abs(t.s_[0]), s1 = std::abs(t.s_[1]);
  t.left_b_ = (t.logf_[1] - t.logf_[0]) / (s1 * s1 * s1 - s0 * s0 * s0);
  t.left_a_ = t.logf_[0] - t.left_b_ * s0 * s0 * s0;
  const double sa = t.s_[n - 2], sb = t.s_[n - 1];
  const double la = std::log1p(-t.f_[n - 2]), lb = std::log1p(-t.f_[n - 1]);
  t.right_b_ = (lb - la) / (std::pow(sb, 1.5) - std::pow(sa, 1.5));
  t.right_a_ = lb - t.right_b_ * std::pow(sb, 1.5);
  if (!(t.left_b_ < 0.0) || !(t.right_b_ < 0.0) || t.s_.back() <= 0.0) {
    throw InputError("TW table tails are not decaying");
  }

  for (int k = 0; k < 3; ++k) {
    const double q = t.quantile(kAnchorLevels[k]);
    if (std::abs(q - kAnchorQuantiles[k]) > kAnchorTolerance) {
      std::ostringstream msg;
      msg << "TW table fails anchor check: quantile(" << kAnchorLevels[k] << ") = " << q
          << ", expected " << kAnchorQuantiles[k] << " +/- " << kAnchorTolerance;
      throw InputError(msg.str());
    }
  }
  return t;
}

const Table& Table::builtin() {
  static const Table table = [] {
    const std::string_view text = builtin_table_text();
    if (checksum(text) != kBuiltinTableChecksum) {
      throw InputError("embedded TW table checksum mismatch");
    }
    return parse(text);
  }();
  return table;
}

double Table::log_cdf(double s) const {
  if (s <= s_.front()) {
    const double a = std::abs(s);
    return left_a_ + left_b_ * a * a * a;
  }
  if (s >= s_.back()) return std::log1p(-std::exp(right_a_ + right_b_ * std::pow(s, 1.5)));
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - s_.begin()) - 1;
  const double h = s_[i + 1] - s_[i];
  const double u = (s - s_[i]) / h;
  const double u2 = u * u, u3 = u2 * u;
  const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
  const double h10 = u3 - 2.0 * u2 + u;
  const double h01 = -2.0 * u3 + 3.0 * u2;
  const double h11 = u3 - u2;
  return h00 * logf_[i] + h10 * h * slope_[i] + h01 * logf_[i + 1] + h11 * h * slope_[i + 1];
}

double Table::cdf(double s) const {
  if (std::isnan(s)) return s;
  if (s >= s_.back()) return 1.0 - std::exp(right_a_ + right_b_ * std::pow(s, 1.5));
  return std::exp(log_cdf(s));
}

double Table::pvalue(double s) const {
  if (std::isnan(s)) return s;
  if (s >= s_.back()) return std::exp(right_a_ + right_b_ * std::pow(s, 1.5));
  return -std::expm1(log_cdf(s));
}

double Table::quantile(double q) const {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("TW quantile level must lie in (0, 1), got " + std::to_string(q));
  }
  const bool upper = q > 0.5;
  const double target = upper ? 1.0 - q : q;
  // g(s) < 0 left of the quantile, > 0 right of it
  auto g = [&](double s) { return upper ? target - pvalue(s) : cdf(s) - target; };
  double lo = s_.front(), hi = s_.back();
  while (g(lo) > 0.0) lo = 2.0 * lo - 1.0;
  while (g(hi) < 0.0) hi = 2.0 * hi + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double tw1_cdf(double s) { return Table::builtin().cdf(s); }
double tw1_quantile(double q) { return Table::builtin().quantile(q); }
double tw1_pvalue(double s) { return Table::builtin().pvalue(s); }

}  // namespace finitepop::tw
