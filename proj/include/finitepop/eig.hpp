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
#include <vector>

#include "finitepop/matrix.hpp"

namespace finitepop::eig {

/// Eigenvalues sorted in descending order. `dim` is the dimension of the
/// matrix they came from; values.size() is dim for a full solve and k for a
/// partial one.
struct Spectrum {
  std::vector<double> values;
  std::size_t dim = 0;
};

/// Symmetric tridiagonal matrix: diag[i] and off[i] couples i and i+1
/// (off has diag.size() - 1 entries).
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};

/// Householder reduction A = Q T Q^T. When `q` is non-null it receives the
/// orthogonal factor as a dense row-major dim x dim array.
Tridiagonal tridiagonalize(const SymMatrix& a, std::vector<double>* q = nullptr);

/// Implicit-shift QL on a symmetric tridiagonal matrix. Returns the
/// eigenvalues unsorted, in the order matching the columns of `z`. When `z`
/// is non-null it must hold a row-major m x m matrix (usually the identity)
/// that is multiplied by the accumulated rotations, so its columns become
/// eigenvectors. Throws NumericalError after 30 sweeps on one eigenvalue.
/// Implicit QL. When z is given it is rotated in place (columns become
/// eigenvectors); pass Q from tridiagonalize, or an empty vector to start
/// from the identity.
std::vector<double> tridiagonal_eigenvalues(Tridiagonal t, std::vector<double>* z = nullptr);

/// Full spectrum of a symmetric matrix.
Spectrum eigs_sym(const SymMatrix& a);

/// A symmetric linear map given only through its action on vectors.
class SymOperator {
 public:
  virtual ~SymOperator() = default;
  virtual std::size_t dim() const = 0;
  /// y = A x. Must be safe to call concurrently.
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
};

class DenseOperator final : public SymOperator {
 public:
  explicit DenseOperator(const SymMatrix& a) : a_(a) {}
  std::size_t dim() const override { return a_.dim(); }
  void apply(std::span<const double> x, std::span<double> y) const override { a_.multiply(x, y); }

 private:
  const SymMatrix& a_;
};

/// scale * B B^T applied as B (B^T x): O(rows * cols) per product and the
/// p x p matrix is never formed. Holds a reference to `b`.
class GramOperator final : public SymOperator {
 public:
  GramOperator(const DataMatrix& b, double scale) : b_(b), scale_(scale) {}
  std::size_t dim() const override { return b_.rows(); }
  void apply(std::span<const double> x, std::span<double> y) const override;

  /// Materializes scale * B B^T.
  SymMatrix to_matrix() const;

 private:
  const DataMatrix& b_;
  double scale_;
};

struct LanczosOptions {
  /// Ritz pairs count as converged when |beta_m * s_mi| <= tol * |theta_1|.
  double tol = 1e-10;
  /// Krylov basis size before an explicit restart.
  std::size_t max_basis = 300;
  std::size_t max_restarts = 30;
  /// Operators of at most this dimension are solved densely.
  std::size_t dense_cutoff = 48;
  std::uint64_t start_seed = 0x9d2c5680u;
};

/// The k largest eigenvalues, descending.
Spectrum top_eigs(const SymOperator& op, std::size_t k, const LanczosOptions& opts = {});
Spectrum top_eigs(const SymMatrix& a, std::size_t k, const LanczosOptions& opts = {});

/// Fraction of eigenvalues <= x.
double esd_cdf(const Spectrum& s, double x);

}  // namespace finitepop::eig
