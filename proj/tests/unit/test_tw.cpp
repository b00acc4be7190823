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

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/airy.hpp>

#include "doctest.h"
#include "finitepop/error.hpp"
#include "finitepop/tw.hpp"

namespace tw = finitepop::tw;

namespace {

// Gauss-Legendre nodes and weights on [a, b] by Newton iteration on P_m.
void gauss_legendre(int m, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  x.assign(m, 0.0);
  w.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (m + 0.5)), dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = 0.5 * (a + b) + 0.5 * (b - a) * z;
    w[i] = (b - a) / ((1.0 - z * z) * dp * dp);
  }
}

// F1(s) as the Fredholm determinant det(I - K) with
// K(x, y) = Ai((x + y)/2 + s) / 2 on (0, inf). The kernel decays only once
// (x + y)/2 + s is large, so the truncation length grows like 2|s|.
double tw1_fredholm(double s) {
  const int m = 120;
  std::vector<double> x, w;
  gauss_legendre(m, 0.0, 2.0 * (16.0 - std::min(s, 0.0)), x, w);
  std::vector<double> a(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      a[i * m + j] = (i == j ? 1.0 : 0.0) -
                     std::sqrt(w[i] * w[j]) * 0.5 * boost::math::airy_ai(0.5 * (x[i] + x[j]) + s);
  double det = 1.0;
  for (int k = 0; k < m; ++k) {
    int piv = k;
    for (int i = k + 1; i < m; ++i)
      if (std::abs(a[i * m + k]) > std::abs(a[piv * m + k])) piv = i;
    if (piv != k) {
      for (int j = 0; j < m; ++j) std::swap(a[k * m + j], a[piv * m + j]);
      det = -det;
    }
    det *= a[k * m + k];
    for (int i = k + 1; i < m; ++i) {
      const double f = a[i * m + k] / a[k * m + k];
      for (int j = k; j < m; ++j) a[i * m + j] -= f * a[k * m + j];
    }
  }
  return det;
}

std::string small_table(double shift) {
  // A well-formed table of F(s + shift): full coverage, wrong location.
  std::ostringstream os;
  const auto& t = tw::Table::builtin();
  os << "# shifted copy\n";
  for (std::size_t i = 0; i < t.s().size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f %.17g\n", t.s()[i], tw::tw1_cdf(t.s()[i] + shift));
    os << buf;
  }
  return os.str();
}

}  // namespace

TEST_CASE("embedded table loads and its checksum is pinned") {
  CHECK(tw::checksum(tw::builtin_table_text()) == tw::kBuiltinTableChecksum);
  const auto& t = tw::Table::builtin();
  CHECK(t.s().front() <= -10.0);
  CHECK(t.s().back() >= 6.0);
  for (std::size_t i = 1; i < t.s().size(); ++i) CHECK(t.s()[i] - t.s()[i - 1] <= 0.05);
}

TEST_CASE("FNV-1a reference vectors") {
  CHECK(tw::checksum("") == 0xcbf29ce484222325ull);
  CHECK(tw::checksum("a") == 0xaf63dc4c8601ec8cull);
  CHECK(tw::checksum("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("tw1_cdf anchors") {
  CHECK(std::abs(tw::tw1_cdf(-3.1880) - 0.05) <= 0.002);
  CHECK(std::abs(tw::tw1_cdf(-1.2680) - 0.50) <= 0.002);
  CHECK(std::abs(tw::tw1_cdf(0.9765) - 0.95) <= 0.002);
}

TEST_CASE("tw1_quantile anchors") {
  CHECK(std::abs(tw::tw1_quantile(0.05) + 3.1880) <= 0.01);
  CHECK(std::abs(tw::tw1_quantile(0.50) + 1.2680) <= 0.01);
  CHECK(std::abs(tw::tw1_quantile(0.95) - 0.9765) <= 0.01);
  CHECK_THROWS_AS(tw::tw1_quantile(0.0), finitepop::DomainError);
  CHECK_THROWS_AS(tw::tw1_quantile(1.0), finitepop::DomainError);
  CHECK_THROWS_AS(tw::tw1_quantile(1.5), finitepop::DomainError);
  CHECK_THROWS_AS(tw::tw1_quantile(NAN), finitepop::DomainError);
}

TEST_CASE("tw1_pvalue") {
  CHECK(std::abs(tw::tw1_pvalue(0.9765) - 0.05) <= 0.002);
  CHECK(tw::tw1_pvalue(20.0) <= 1e-6);
  CHECK(tw::tw1_pvalue(20.0) > 0.0);
  CHECK(std::abs(tw::tw1_pvalue(tw::tw1_quantile(0.9)) - 0.1) <= 1e-6);
}

TEST_CASE("round trip and monotonicity") {
  for (int i = 1; i <= 999; ++i) {
    const double q = i / 1000.0;
    CHECK(std::abs(tw::tw1_cdf(tw::tw1_quantile(q)) - q) <= 1e-8);
  }
  double prev_c = 0.0, prev_p = 1.0;
  for (double s = -14.0; s <= 10.0; s += 0.0037) {
    const double c = tw::tw1_cdf(s), p = tw::tw1_pvalue(s);
    CHECK(c > prev_c);
    // 1 - F rounds to exactly 1 deep in the left tail
    if (prev_p < 0.999) CHECK(p < prev_p);
    CHECK(p <= prev_p);
    CHECK(c > 0.0);
    CHECK(c < 1.0);
    prev_c = c;
    prev_p = p;
  }
}

TEST_CASE("table agrees with an independent Fredholm determinant") {
  for (double s : {-5.013, -3.5, -2.0, -1.2680, -0.4, 0.0, 0.9765, 1.733, 3.0}) {
    const double ref = tw1_fredholm(s);
    CAPTURE(s);
    CHECK(std::abs(tw::tw1_cdf(s) - ref) <= 1e-7 + 1e-6 * ref);
  }
  // Tail points compared on the relevant scale.
  CHECK(std::abs(tw::tw1_pvalue(4.5) / (1.0 - tw1_fredholm(4.5)) - 1.0) <= 1e-3);
  CHECK(std::abs(tw::tw1_cdf(-6.5) / tw1_fredholm(-6.5) - 1.0) <= 1e-3);
  // Far left: the asymptotic log F1 = -|s|^3/24 - |s|^(3/2)/(3 sqrt 2)
  // - log|s|/16 + log tau1, tau1 = 2^(-11/48) exp(zeta'(-1)/2).
  const double zeta_prime_m1 = -0.16542114370045092;
  const double log_tau1 = -11.0 / 48.0 * std::log(2.0) + 0.5 * zeta_prime_m1;
  auto asym = [&](double s) {
    const double a = std::abs(s);
    return -a * a * a / 24.0 - std::pow(a, 1.5) / (3.0 * std::sqrt(2.0)) - std::log(a) / 16.0 + log_tau1;
  };
  CHECK(std::abs(std::log(tw::tw1_cdf(-9.0)) - asym(-9.0)) <= 0.05);
  CHECK(std::abs(std::log(tw::tw1_cdf(-10.0)) - asym(-10.0)) <= 0.05);
  // Past the grid the two-parameter tail is only expected to be rough.
  CHECK(std::abs(std::log(tw::tw1_cdf(-12.0)) / asym(-12.0) - 1.0) <= 0.1);
}

TEST_CASE("tails extrapolate continuously and decay") {
  const auto& t = tw::Table::builtin();
  const double lo = t.s().front(), hi = t.s().back();
  CHECK(tw::tw1_cdf(lo - 1e-9) == doctest::Approx(tw::tw1_cdf(lo)).epsilon(1e-6));
  CHECK(tw::tw1_pvalue(hi + 1e-9) == doctest::Approx(tw::tw1_pvalue(hi)).epsilon(1e-6));
  CHECK(tw::tw1_cdf(-20.0) < tw::tw1_cdf(-15.0));
  CHECK(tw::tw1_cdf(-20.0) > 0.0);
  CHECK(tw::tw1_pvalue(15.0) < tw::tw1_pvalue(10.0));
}

TEST_CASE("table parser rejects malformed assets") {
  CHECK_THROWS_AS(tw::Table::parse("# nothing\n"), finitepop::InputError);
  CHECK_THROWS_AS(tw::Table::parse("0 0.5\n1 abc\n"), finitepop::InputError);
  CHECK_THROWS_AS(tw::Table::parse("0 0.5 3\n"), finitepop::InputError);
  // Coverage too short.
  CHECK_THROWS_AS(tw::Table::parse("-1 0.5\n-0.98 0.51\n-0.96 0.52\n-0.94 0.53\n"),
                  finitepop::InputError);
  // A shifted copy covers the range but fails the anchor quantiles.
  CHECK_THROWS_AS(tw::Table::parse(small_table(0.5)), finitepop::InputError);
  // The embedded text parses on its own.
  CHECK_NOTHROW(tw::Table::parse(tw::builtin_table_text()));
  // Non-monotone F.
  std::string text(tw::builtin_table_text());
  const auto pos = text.find("\n0.00 ");
  REQUIRE(pos != std::string::npos);
  text.replace(pos + 1, text.find('\n', pos + 1) - pos - 1, "0.00 0.1");
  CHECK_THROWS_AS(tw::Table::parse(text), finitepop::InputError);
}
