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

#include "finitepop/pa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "finitepop/eig.hpp"
#include "finitepop/error.hpp"
#include "finitepop/matrices.hpp"
#include "finitepop/stats.hpp"
#include "finitepop/tw.hpp"

namespace finitepop::pa {

namespace {

void validate(const DataMatrix& b, const PaConfig& cfg) {
  if (b.rows() < 2 || b.cols() < 2) {
    throw DegenerateError("parallel analysis needs p >= 2 and n >= 2");
  }
  if (!(cfg.percentile > 0.0 && cfg.percentile < 1.0)) {
    throw ConfigError("percentile must lie in (0, 1)");
  }
  if (cfg.max_factors > std::min(b.rows(), b.cols())) {
    throw ConfigError("max_factors " + std::to_string(cfg.max_factors) + " exceeds min(p, n) = " +
                      std::to_string(std::min(b.rows(), b.cols())));
  }
}

std::vector<double> observed_eigenvalues(const DataMatrix& prepared, std::size_t k) {
  if (k == 0) return {};
  const eig::GramOperator op(prepared, 1.0 / static_cast<double>(prepared.cols()));
  return eig::top_eigs(op, k).values;
}

double normalized_or_nan(double lambda, const std::optional<edge::EdgeParams>& ep, std::size_t n) {
  return ep ? edge::normalize_stat(lambda, *ep, n) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::string to_string(Method m) { return m == Method::kMonteCarlo ? "monte_carlo" : "tw_direct"; }

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kRaw:
      return "raw";
    case Variant::kCenteredB1:
      return "centered_b1";
    case Variant::kStandardizedB2:
      return "standardized_b2";
  }
  return "unknown";
}

DataMatrix prepare(const DataMatrix& b, Variant variant) {
  switch (variant) {
    case Variant::kRaw:
      return b;
    case Variant::kCenteredB1:
      return center_rows(b);
    case Variant::kStandardizedB2: {
      DataMatrix out = standardize_rows(b);
      const double scale = std::sqrt(static_cast<double>(b.cols()));
      for (std::size_t i = 0; i < out.rows(); ++i) {
        for (double& v : out.row(i)) v *= scale;
      }
      return out;
    }
  }
  throw ConfigError("unknown variant");
}

std::optional<edge::EdgeParams> edge_for(const DataMatrix& b, Variant variant) {
  const std::size_t p = b.rows();
  const std::size_t n = b.cols();
  switch (variant) {
    case Variant::kRaw:
      return std::nullopt;
    case Variant::kStandardizedB2:
      return edge::johnstone_edge(n, p);
    case Variant::kCenteredB1: {
      std::vector<double> t = centered_sum_squares(b);
      std::vector<std::size_t> bad;
      for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] /= static_cast<double>(n);
        if (!(t[i] > 0.0)) bad.push_back(i);
      }
      if (!bad.empty()) throw DegenerateError("zero-variance row(s) under centered_b1", bad);
      return edge::edge_params(
          edge::PopulationShape(std::move(t), static_cast<double>(p) / static_cast<double>(n)));
    }
  }
  return std::nullopt;
}

std::vector<std::vector<double>> permutation_spectra(const DataMatrix& prepared,
                                                     std::size_t replicas, std::size_t k,
                                                     const sampling::SeedSpec& seed) {
  std::vector<std::vector<double>> out(replicas);
  if (k == 0) return out;
  const double scale = 1.0 / static_cast<double>(prepared.cols());
  stats::parallel_for(replicas, [&](std::size_t r) {
    DataMatrix permuted(prepared.rows(), prepared.cols());
    sampling::permute_rows_into(prepared, seed, r, permuted);
    out[r] = eig::top_eigs(eig::GramOperator(permuted, scale), k).values;
  });
  return out;
}

PaResult pa_monte_carlo(const DataMatrix& b, const PaConfig& cfg) {
  validate(b, cfg);
  if (cfg.num_permutations < 20) {
    throw ConfigError("Monte Carlo parallel analysis needs at least 20 permutations");
  }
  PaResult result;
  result.config = cfg;
  result.config.method = Method::kMonteCarlo;
  result.p = b.rows();
  result.n = b.cols();
  const DataMatrix prepared = prepare(b, cfg.variant);
  result.edge = edge_for(b, cfg.variant);
  const std::size_t k = cfg.max_factors;
  result.observed = observed_eigenvalues(prepared, k);
  const auto spectra = permutation_spectra(prepared, cfg.num_permutations, k, cfg.seed);

  std::vector<std::vector<double>> null(k, std::vector<double>(cfg.num_permutations));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t r = 0; r < cfg.num_permutations; ++r) null[j][r] = spectra[r][j];
    std::sort(null[j].begin(), null[j].end());
    result.thresholds.push_back(stats::quantile_sorted(null[j], cfg.percentile));
  }
  for (std::size_t j = 0; j < k; ++j) {
    const auto& sorted = null[j];
    PaStep step;
    step.factor_index = j + 1;
    step.observed = result.observed[j];
    step.threshold = result.thresholds[j];
    step.normalized_stat = normalized_or_nan(step.observed, result.edge, b.cols());
    const auto exceed = static_cast<double>(
        sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), step.observed));
    step.p_value = (1.0 + exceed) / (1.0 + static_cast<double>(cfg.num_permutations));
    step.selected = step.observed > step.threshold;
    result.steps.push_back(step);
    if (!step.selected) break;
    ++result.k_selected;
  }
  return result;
}

PaResult pa_tw(const DataMatrix& b, const PaConfig& cfg) {
  validate(b, cfg);
  if (cfg.variant == Variant::kRaw) {
    throw ConfigError("the TW procedure supports only the centered_b1 and standardized_b2 variants");
  }
  PaResult result;
  result.config = cfg;
  result.config.method = Method::kTwDirect;
  result.p = b.rows();
  result.n = b.cols();
  const DataMatrix prepared = prepare(b, cfg.variant);
  result.edge = edge_for(b, cfg.variant);
  const edge::EdgeParams& ep = *result.edge;
  const double n = static_cast<double>(b.cols());
  const double threshold =
      ep.e_plus + ep.gamma0 * std::pow(n, -2.0 / 3.0) * tw::tw1_quantile(cfg.percentile);
  result.observed = observed_eigenvalues(prepared, cfg.max_factors);
  result.thresholds.assign(result.observed.size(), threshold);
  for (std::size_t j = 0; j < result.observed.size(); ++j) {
    PaStep step;
    step.factor_index = j + 1;
    step.observed = result.observed[j];
    step.threshold = threshold;
    step.normalized_stat = edge::normalize_stat(step.observed, ep, b.cols());
    step.p_value = tw::tw1_pvalue(step.normalized_stat);
    step.selected = step.observed > step.threshold;
    result.steps.push_back(step);
    if (!step.selected) break;
    ++result.k_selected;
  }
  return result;
}

PaResult run(const DataMatrix& b, const PaConfig& cfg) {
  return cfg.method == Method::kMonteCarlo ? pa_monte_carlo(b, cfg) : pa_tw(b, cfg);
}

NullTable null_percentile_table(std::size_t p, std::size_t n,
                                const std::vector<double>& percentiles,
                                std::size_t num_permutations, const sampling::SeedSpec& seed) {
  if (num_permutations < 100) throw ConfigError("null table needs at least 100 permutations");
  if (p < 1 || n < 2) throw ConfigError("null table needs p >= 1 and n >= 2");
  for (double q : percentiles) {
    if (!(q > 0.0 && q < 1.0)) throw ConfigError("percentiles must lie in (0, 1)");
  }
  NullTable table;
  table.p = p;
  table.n = n;
  table.num_permutations = num_permutations;
  table.seed = seed;
  table.edge = edge::johnstone_edge(n, p);
  const DataMatrix b = sampling::gaussian_matrix(p, n, seed, 0);
  const DataMatrix prepared = prepare(b, Variant::kStandardizedB2);
  const auto spectra = permutation_spectra(prepared, num_permutations, 1, seed);
  table.statistics.reserve(num_permutations);
  for (const auto& s : spectra) table.statistics.push_back(edge::normalize_stat(s[0], table.edge, n));
  std::sort(table.statistics.begin(), table.statistics.end());
  for (double q : percentiles) {
    table.rows.push_back({q, stats::quantile_sorted(table.statistics, q), tw::tw1_quantile(q)});
  }
  return table;
}

}  // namespace finitepop::pa
