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

#include "finitepop/edgelaw.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "finitepop/error.hpp"

namespace finitepop::edge {

namespace {

using cplx = std::complex<double>;

constexpr const char* kConventionNote =
    "critical point solves c_n*mean((t*xi/(1-t*xi))^2) = 1 and c_n multiplies the sums in "
    "E+ and gamma0^3; reduces to E+ = (1+sqrt(c))^2, gamma0 = c^(-1/6)*E+^(2/3) at T = I. "
    "Published literal form (mean(...)^2 = p/n, 1/c_n in E+ and gamma0^3) is not used";

void check_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InputError("c_n must be finite and > 0");
}

// sum_a w_a (t_a xi / (1 - t_a xi))^power
double ratio_moment(double xi, const PopulationShape& shape, int power) {
  double s = 0.0;
  for (const auto& a : shape.atoms()) {
    const double r = a.t * xi / (1.0 - a.t * xi);
    s += a.weight * std::pow(r, power);
  }
  return s;
}

cplx resolvent_sum(cplx m, const PopulationShape& shape) {
  cplx s = 0.0;
  for (const auto& a : shape.atoms()) s += a.weight * a.t / (1.0 + a.t * m);
  return s;
}

}  // namespace

PopulationShape::PopulationShape(std::vector<double> tvals, double c_n, double y_n)
    : tvals_(std::move(tvals)), c_(c_n), y_(y_n) {
  if (tvals_.empty()) throw InputError("population shape needs at least one tval");
  for (std::size_t i = 0; i < tvals_.size(); ++i) {
    if (!(tvals_[i] > 0.0) || !std::isfinite(tvals_[i])) {
      throw InputError("tval " + std::to_string(i) + " must be finite and > 0");
    }
  }
  check_c(c_n);
  if (!(y_n >= 0.0 && y_n <= 1.0)) throw InputError("y_n must lie in [0, 1]");
  std::vector<double> sorted = tvals_;
  std::sort(sorted.begin(), sorted.end());
  const double w = 1.0 / static_cast<double>(sorted.size());
  for (double t : sorted) {
    if (!atoms_.empty() && atoms_.back().t == t) {
      atoms_.back().weight += w;
    } else {
      atoms_.push_back({t, w});
    }
  }
}

PopulationShape PopulationShape::identity(double c_n, double y_n) {
  return PopulationShape({1.0}, c_n, y_n);
}

PopulationShape PopulationShape::scaled(double a) const {
  std::vector<double> t = tvals_;
  for (double& v : t) v *= a;
  return PopulationShape(std::move(t), c_, y_);
}

double phi(double xi, const PopulationShape& shape) {
  return shape.c() * ratio_moment(xi, shape, 2);
}

double solve_xi(const PopulationShape& shape) {
  double lo = 1e-15;
  double hi = (1.0 - 1e-12) / shape.t_max();
  double best = lo;
  double best_err = std::abs(phi(lo, shape) - 1.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f = phi(mid, shape) - 1.0;
    if (std::abs(f) < best_err) {
      best = mid;
      best_err = std::abs(f);
    }
    if (std::abs(f) <= 1e-12 && hi - lo <= 1e-15 * hi) break;
    if (f < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return best;
}

EdgeParams edge_params(const PopulationShape& shape) {
  const double xi = solve_xi(shape);
  const double c = shape.c();
  EdgeParams ep;
  ep.xi_plus = xi;
  ep.e_plus = (1.0 + c * ratio_moment(xi, shape, 1)) / xi;
  ep.gamma0 = std::cbrt((1.0 + c * ratio_moment(xi, shape, 3)) / (xi * xi * xi));
  ep.convention_note = kConventionNote;
  const double margin = 1.0 - shape.t_max() * xi;
  if (margin < 1e-8) {
    ep.warning = "ill-conditioned edge: 1 - max(t)*xi_plus = " + std::to_string(margin);
  }
  return ep;
}

EdgeParams spearman_edge(double c_n) {
  check_c(c_n);
  const double rc = std::sqrt(c_n);
  EdgeParams ep;
  ep.xi_plus = 1.0 / (1.0 + rc);
  ep.e_plus = (1.0 + rc) * (1.0 + rc);
  ep.gamma0 = std::pow(c_n, -1.0 / 6.0) * std::pow(ep.e_plus, 2.0 / 3.0);
  ep.convention_note = "closed form at T = I";
  return ep;
}

EdgeParams johnstone_edge(std::size_t n, std::size_t p) {
  if (n < 2 || p < 1) throw DomainError("johnstone_edge needs n >= 2 and p >= 1");
  const double nd = static_cast<double>(n);
  const double pd = static_cast<double>(p);
  const double s = std::sqrt(nd - 1.0) + std::sqrt(pd);
  EdgeParams ep;
  ep.xi_plus = std::sqrt(nd) / s;
  ep.e_plus = s * s / nd;
  ep.gamma0 = s * std::cbrt(1.0 / std::sqrt(nd * nd * (nd - 1.0)) + 1.0 / std::sqrt(nd * nd * pd));
  ep.convention_note = "finite-n centering and scaling with n-1 degrees of freedom";
  return ep;
}

double normalize_stat(double lambda1, const EdgeParams& ep, std::size_t n) {
  return std::pow(static_cast<double>(n), 2.0 / 3.0) * (lambda1 - ep.e_plus) / ep.gamma0;
}

cplx inverse_map(cplx m, const PopulationShape& shape) {
  return -1.0 / m + shape.c() * resolvent_sum(m, shape);
}

cplx inverse_map_derivative(cplx m, const PopulationShape& shape) {
  cplx s = 0.0;
  for (const auto& a : shape.atoms()) {
    const cplx d = 1.0 + a.t * m;
    s += a.weight * a.t * a.t / (d * d);
  }
  return 1.0 / (m * m) - shape.c() * s;
}

StieltjesPoint stieltjes_m(cplx z, const PopulationShape& shape, const StieltjesOptions& opts) {
  if (!(z.imag() > 0.0)) throw DomainError("Stieltjes transform needs Im z > 0");
  const double c = shape.c();
  auto residual = [&](cplx m) { return std::abs(z - inverse_map(m, shape)); };

  cplx m = -1.0 / z;
  double res = residual(m);
  std::size_t it = 0;
  while (res > opts.tol && it < opts.max_iterations) {
    const cplx f = -1.0 / (z - c * resolvent_sum(m, shape));
    m = (1.0 - opts.damping) * m + opts.damping * f;
    res = residual(m);
    ++it;
    if (res <= opts.tol || it % 50 != 0) continue;

    // Newton on g(m) = inverse_map(m) - z, with step halving that keeps
    // Im m > 0 and the residual decreasing.
    cplx mm = m;
    double r = res;
    for (int k = 0; k < 40 && r > opts.tol; ++k) {
      const cplx step = (inverse_map(mm, shape) - z) / inverse_map_derivative(mm, shape);
      double lambda = 1.0;
      bool accepted = false;
      while (lambda > 1e-4) {
        const cplx cand = mm - lambda * step;
        const double rc = residual(cand);
        if (cand.imag() > 0.0 && std::isfinite(rc) && rc < r) {
          mm = cand;
          r = rc;
          accepted = true;
          break;
        }
        lambda *= 0.5;
      }
      if (!accepted) break;
    }
    if (r < res) {
      m = mm;
      res = r;
    }
  }
  if (res > opts.tol) {
    throw NumericalError("Stieltjes fixed point did not converge at z = (" +
                             std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                             "), residual " + std::to_string(res),
                         res, it);
  }
  StieltjesPoint pt;
  pt.z = z;
  pt.m_under = m;
  pt.m = (m + (1.0 - c) / z) / c;
  pt.residual = res;
  pt.iterations = it;
  return pt;
}

double density_at(double x, const PopulationShape& shape, double eta) {
  if (!(eta > 0.0)) throw DomainError("density_at needs eta > 0");
  eta = std::max(eta, 1e-8);
  const StieltjesPoint pt = stieltjes_m({x, eta}, shape);
  return std::max(0.0, pt.m.imag() / std::numbers::pi);
}

double xi_mstieltjes_consistency(const PopulationShape& shape) {
  const EdgeParams ep = edge_params(shape);
  const StieltjesPoint pt = stieltjes_m({ep.e_plus, 1e-6}, shape);
  return std::abs(ep.xi_plus + pt.m_under.real());
}

LimitingCdf::LimitingCdf(const PopulationShape& shape, std::size_t grid_points, double eta) {
  if (grid_points < 2) throw DomainError("LimitingCdf needs at least 2 grid points");
  eta = std::max(eta, 1e-8);
  const double c = shape.c();
  const double upper = 1.2 * edge_params(shape).e_plus + 1.0;
  const double h = upper / static_cast<double>(grid_points);
  atom_ = c > 1.0 ? 1.0 - 1.0 / c : 0.0;
  x_.resize(grid_points + 1);
  density_.resize(grid_points + 1);
  cdf_.resize(grid_points + 1);
  x_[0] = 0.0;
  density_[0] = 0.0;
  cdf_[0] = atom_;
  for (std::size_t i = 1; i <= grid_points; ++i) {
    x_[i] = h * static_cast<double>(i);
    const StieltjesPoint pt = stieltjes_m({x_[i], eta}, shape);
    const double im = c >= 1.0 ? pt.m_under.imag() / c : pt.m.imag();
    density_[i] = std::max(0.0, im / std::numbers::pi);
    cdf_[i] = cdf_[i - 1] + 0.5 * h * (density_[i] + density_[i - 1]);
  }
  raw_mass_ = cdf_.back();
  // Quadrature loses a little mass at the square-root edges; renormalize so
  // the curve ends at exactly 1.
  const double continuous = raw_mass_ - atom_;
  for (auto& v : cdf_) v = atom_ + (v - atom_) * (1.0 - atom_) / continuous;
}

double LimitingCdf::operator()(double x) const {
  if (x < 0.0) return 0.0;
  if (x >= x_.back()) return 1.0;
  const double h = x_[1] - x_[0];
  const auto i = static_cast<std::size_t>(x / h);
  const double frac = (x - x_[i]) / h;
  return std::min(1.0, cdf_[i] + frac * (cdf_[i + 1] - cdf_[i]));
}

}  // namespace finitepop::edge
