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

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace finitepop::edge {

/// Spectral inputs of the limiting law: the p diagonal entries of T (the
/// atoms of its empirical spectral distribution H_n), c_n = p/n and
/// y_n = n/N. Integrals against H_n are exact finite sums over the atoms;
/// repeated entries are merged into weighted atoms.
class PopulationShape {
 public:
  struct Atom {
    double t;
    double weight;  // multiplicity / p
  };

  /// Throws InputError unless every tval is finite and > 0, c_n > 0 and
  /// y_n is in [0, 1].
  PopulationShape(std::vector<double> tvals, double c_n, double y_n = 1.0);

  /// T = I; the number of atoms does not matter for the limiting law.
  static PopulationShape identity(double c_n, double y_n = 1.0);

  const std::vector<double>& tvals() const noexcept { return tvals_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  double c() const noexcept { return c_; }
  double y() const noexcept { return y_; }
  double t_max() const noexcept { return atoms_.back().t; }

  /// Returns a copy with every tval multiplied by `a`.
  PopulationShape scaled(double a) const;

 private:
  std::vector<double> tvals_;
  std::vector<Atom> atoms_;  // ascending t
  double c_;
  double y_;
};

/// Edge location and Tracy-Widom scale for the largest eigenvalue.
struct EdgeParams {
  double xi_plus = 0.0;
  double e_plus = 0.0;
  double gamma0 = 0.0;
  std::string convention_note;
  /// Set when 1 - max(t) * xi_plus falls below 1e-8.
  std::optional<std::string> warning;
};

/// Phi(xi) = c_n * sum_a w_a (t_a xi / (1 - t_a xi))^2, strictly increasing
/// on (0, 1/max t) from 0 to +infinity.
double phi(double xi, const PopulationShape& shape);

/// The root of Phi(xi) = 1 in (0, 1/max t), by bisection.
double solve_xi(const PopulationShape& shape);

/// xi_plus, E_+ = (1/xi)(1 + c_n sum w t xi/(1 - t xi)) and
/// gamma0^3 = (1/xi^3)(1 + c_n sum w (t xi/(1 - t xi))^3).
EdgeParams edge_params(const PopulationShape& shape);

/// Closed form at T = I: E_+ = (1 + sqrt c)^2, gamma0 = c^(-1/6) E_+^(2/3).
EdgeParams spearman_edge(double c_n);

/// Finite-n centering and scaling for the normalized largest eigenvalue of
/// (1/n) X X^T with centered rows:
///   E_+ = ((sqrt(n-1) + sqrt p)/sqrt n)^2
///   gamma0 = (sqrt(n-1) + sqrt p) (1/sqrt(n^2 (n-1)) + 1/sqrt(n^2 p))^(1/3)
EdgeParams johnstone_edge(std::size_t n, std::size_t p);

/// n^(2/3) (lambda1 - E_+) / gamma0.
double normalize_stat(double lambda1, const EdgeParams& ep, std::size_t n);

/// Right side of the self-consistent equation viewed as a map m -> z:
/// z(m) = -1/m + c_n sum w t / (1 + t m).
std::complex<double> inverse_map(std::complex<double> m, const PopulationShape& shape);
/// dz/dm; vanishes at m = -xi_plus.
std::complex<double> inverse_map_derivative(std::complex<double> m, const PopulationShape& shape);

struct StieltjesPoint {
  std::complex<double> z;
  /// Companion transform (n x n side).
  std::complex<double> m_under;
  /// Transform of F_{c_n, H_n}: m = (m_under + (1 - c_n)/z) / c_n.
  std::complex<double> m;
  double residual = 0.0;
  std::size_t iterations = 0;
};

struct StieltjesOptions {
  double damping = 0.5;
  std::size_t max_iterations = 10000;
  double tol = 1e-10;
};

/// Solves z = inverse_map(m_under) for Im z > 0 by damped fixed-point
/// iteration m <- -1/(z - c_n sum w t/(1 + t m)) from m = -1/z. Every 50
/// sweeps a guarded Newton polish is tried, since near the edge the
/// fixed-point map is only marginally contracting. Throws DomainError if
/// Im z <= 0 and NumericalError at the iteration cap.
StieltjesPoint stieltjes_m(std::complex<double> z, const PopulationShape& shape,
                           const StieltjesOptions& opts = {});

/// Im m(x + i eta) / pi, clamped at 0. eta is floored at 1e-8.
double density_at(double x, const PopulationShape& shape, double eta = 1e-6);

/// |xi_plus + Re m_under(E_+ + 1e-6 i)|.
double xi_mstieltjes_consistency(const PopulationShape& shape);

/// CDF of F_{c_n,H_n} tabulated by trapezoidal integration of the density
/// on a uniform grid over (0, 1.2 E_+ + 1]. For c_n > 1 the point mass
/// 1 - 1/c_n at zero is added explicitly and the continuous part is taken
/// from the companion transform, Im m_under / (c_n pi), which carries no
/// atom.
class LimitingCdf {
 public:
  LimitingCdf(const PopulationShape& shape, std::size_t grid_points = 4000, double eta = 1e-6);

  double operator()(double x) const;

  const std::vector<double>& grid() const noexcept { return x_; }
  const std::vector<double>& density() const noexcept { return density_; }
  /// Total mass at the top of the grid; close to 1 when the grid resolves
  /// the support.
  double raw_mass() const noexcept { return raw_mass_; }

 private:
  std::vector<double> x_;
  std::vector<double> density_;
  std::vector<double> cdf_;
  double atom_ = 0.0;
  double raw_mass_ = 0.0;
};

}  // namespace finitepop::edge
