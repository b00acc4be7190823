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
#include <optional>
#include <string>
#include <vector>

#include "finitepop/edgelaw.hpp"
#include "finitepop/matrix.hpp"
#include "finitepop/sampling.hpp"

namespace finitepop::pa {

enum class Method { kMonteCarlo, kTwDirect };

/// Which matrix the eigenvalues are taken from. With B the p x n data:
///   kRaw            (1/n) B B^T
///   kCenteredB1     (1/n) B1 B1^T, B1 = B - row means
///   kStandardizedB2 (1/n) B2 B2^T, B2 = B1 rows scaled to mean square 1,
///                   i.e. the Pearson correlation matrix of the rows
enum class Variant { kRaw, kCenteredB1, kStandardizedB2 };

std::string to_string(Method m);
std::string to_string(Variant v);

struct PaConfig {
  Method method = Method::kTwDirect;
  Variant variant = Variant::kStandardizedB2;
  double percentile = 0.95;
  /// Monte Carlo only.
  std::size_t num_permutations = 1000;
  /// Must not exceed min(p, n).
  std::size_t max_factors = 10;
  sampling::SeedSpec seed{};
};

struct PaStep {
  std::size_t factor_index = 0;  // 1-based
  double observed = 0.0;
  double threshold = 0.0;
  /// n^(2/3) (observed - E_+)/gamma0; NaN when no edge applies (raw variant).
  double normalized_stat = 0.0;
  double p_value = 0.0;
  bool selected = false;
};

struct PaResult {
  std::size_t k_selected = 0;
  std::vector<PaStep> steps;
  std::optional<edge::EdgeParams> edge;
  /// All max_factors observed eigenvalues and their thresholds, including
  /// those past the stopping point (scree output).
  std::vector<double> observed;
  std::vector<double> thresholds;
  PaConfig config;
  std::size_t p = 0;
  std::size_t n = 0;
};

/// Applies the variant's centering/scaling. The result's (1/n) Gram matrix is
/// the one whose eigenvalues the procedures compare.
DataMatrix prepare(const DataMatrix& b, Variant variant);

/// Edge constants used to normalize statistics of a prepared matrix:
/// finite-n constants for kStandardizedB2, the general edge law with
/// tvals = centered row mean squares for kCenteredB1, none for kRaw.
std::optional<edge::EdgeParams> edge_for(const DataMatrix& b, Variant variant);

/// Top-k eigenvalues of (1/n) Pi(prepared) Pi(prepared)^T for each of
/// `replicas` independent row permutations. result[r][j] is replica r's
/// (j+1)-th eigenvalue. Replicas run in parallel; output order is by replica
/// index regardless of scheduling.
std::vector<std::vector<double>> permutation_spectra(const DataMatrix& prepared,
                                                     std::size_t replicas, std::size_t k,
                                                     const sampling::SeedSpec& seed);

/// Buja-Eyuboglu permutation procedure: factor j is kept while its observed
/// eigenvalue strictly exceeds the `percentile` quantile (type 7) of the
/// permuted j-th eigenvalues; stops at the first factor not kept.
PaResult pa_monte_carlo(const DataMatrix& b, const PaConfig& cfg);

/// Permutation-free procedure: threshold E_+ + gamma0 n^(-2/3) TW1^{-1}(percentile),
/// shared by all factors, with the same stopping rule.
PaResult pa_tw(const DataMatrix& b, const PaConfig& cfg);

/// Dispatches on cfg.method.
PaResult run(const DataMatrix& b, const PaConfig& cfg);

struct NullRow {
  double percentile = 0.0;
  double empirical = 0.0;
  double tw = 0.0;
};

struct NullTable {
  std::size_t p = 0;
  std::size_t n = 0;
  std::size_t num_permutations = 0;
  sampling::SeedSpec seed{};
  edge::EdgeParams edge;
  std::vector<NullRow> rows;
  /// Sorted normalized statistics, one per permutation.
  std::vector<double> statistics;
};

/// Percentiles of the normalized largest eigenvalue of permuted B2 for one
/// Gaussian noise matrix B (stream domain kGaussian, replica 0), normalized
/// with johnstone_edge(n, p), next to the TW1 quantiles.
NullTable null_percentile_table(std::size_t p, std::size_t n,
                                const std::vector<double>& percentiles,
                                std::size_t num_permutations, const sampling::SeedSpec& seed);

}  // namespace finitepop::pa
