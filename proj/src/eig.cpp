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

#include "finitepop/eig.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "finitepop/error.hpp"

namespace finitepop::eig {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void sort_descending(std::vector<double>& v) { std::sort(v.begin(), v.end(), std::greater<>()); }

// splitmix64; only used to build deterministic Lanczos start vectors
std::uint64_t next_mix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void fill_random(std::span<double> v, std::uint64_t& state) {
  for (double& x : v) x = static_cast<double>(next_mix(state) >> 11) * 0x1.0p-53 - 0.5;
}

}  // namespace

Tridiagonal tridiagonalize(const SymMatrix& a, std::vector<double>* q) {
  const std::size_t n = a.dim();
  std::vector<double> m = a.to_dense();
  Tridiagonal t;
  t.diag.assign(n, 0.0);
  t.off.assign(n > 0 ? n - 1 : 0, 0.0);
  // Householder vectors, v_k lives on indices k+1..n-1
  std::vector<std::vector<double>> reflectors;
  if (q != nullptr) reflectors.reserve(n);

  std::vector<double> v(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += m[i * n + k] * m[i * n + k];
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) {
      t.off[k] = 0.0;
      if (q != nullptr) reflectors.emplace_back();
      continue;
    }
    const double x0 = m[(k + 1) * n + k];
    const double alpha = x0 >= 0.0 ? -xnorm : xnorm;
    for (std::size_t i = 0; i < len; ++i) v[i] = m[(k + 1 + i) * n + k];
    v[0] -= alpha;
    const double vnorm = norm2({v.data(), len});
    for (std::size_t i = 0; i < len; ++i) v[i] /= vnorm;

    // w = 2 A22 v, using the lower triangle of the trailing block
    std::fill(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len), 0.0);
    for (std::size_t i = 0; i < len; ++i) {
      const double* row = &m[(k + 1 + i) * n + (k + 1)];
      double acc = row[i] * v[i];
      for (std::size_t j = 0; j < i; ++j) {
        acc += row[j] * v[j];
        w[j] += row[j] * v[i];
      }
      w[i] += acc;
    }
    double c = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      w[i] *= 2.0;
      c += v[i] * w[i];
    }
    for (std::size_t i = 0; i < len; ++i) w[i] -= c * v[i];
    for (std::size_t i = 0; i < len; ++i) {
      double* row = &m[(k + 1 + i) * n + (k + 1)];
      for (std::size_t j = 0; j <= i; ++j) row[j] -= v[i] * w[j] + w[i] * v[j];
    }
    t.off[k] = alpha;
    if (q != nullptr) reflectors.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(len));
  }
  for (std::size_t i = 0; i < n; ++i) t.diag[i] = m[i * n + i];
  if (n >= 2) t.off[n - 2] = m[(n - 1) * n + (n - 2)];

  if (q != nullptr) {
    q->assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) (*q)[i * n + i] = 1.0;
    // Q = H_0 H_1 ... applied right to left
    for (std::size_t kk = reflectors.size(); kk-- > 0;) {
      const auto& r = reflectors[kk];
      if (r.empty()) continue;
      const std::size_t off = kk + 1;
      for (std::size_t col = 0; col < n; ++col) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) s += r[i] * (*q)[(off + i) * n + col];
        s *= 2.0;
        for (std::size_t i = 0; i < r.size(); ++i) (*q)[(off + i) * n + col] -= s * r[i];
      }
    }
  }
  return t;
}

std::vector<double> tridiagonal_eigenvalues(Tridiagonal t, std::vector<double>* z) {
  std::vector<double>& d = t.diag;
  const std::size_t n = d.size();
  std::vector<double> e(n, 0.0);
  std::copy(t.off.begin(), t.off.end(), e.begin());
  constexpr int kMaxSweeps = 30;
  if (z != nullptr && z->size() != n * n) {
    z->assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) (*z)[i * n + i] = 1.0;
  }

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m == l) break;
      if (iter++ == kMaxSweeps) {
        throw NumericalError("tridiagonal QL did not converge for eigenvalue " + std::to_string(l) +
                                 " (off-diagonal " + std::to_string(std::abs(e[l])) + ")",
                             std::abs(e[l]), static_cast<std::size_t>(iter));
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (z != nullptr) {
          for (std::size_t k = 0; k < n; ++k) {
            double& zi = (*z)[k * n + i];
            double& zi1 = (*z)[k * n + i + 1];
            f = zi1;
            zi1 = s * zi + c * f;
            zi = c * zi - s * f;
          }
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  return d;
}

Spectrum eigs_sym(const SymMatrix& a) {
  std::vector<double> values = tridiagonal_eigenvalues(tridiagonalize(a));
  sort_descending(values);
  return {std::move(values), a.dim()};
}

void GramOperator::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t p = b_.rows();
  const std::size_t n = b_.cols();
  std::vector<double> tmp(n, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    const double xi = x[i];
    const auto row = b_.row(i);
    for (std::size_t j = 0; j < n; ++j) tmp[j] += row[j] * xi;
  }
  for (std::size_t i = 0; i < p; ++i) y[i] = scale_ * dot(b_.row(i), tmp);
}

SymMatrix GramOperator::to_matrix() const {
  SymMatrix s(b_.rows());
  for (std::size_t i = 0; i < b_.rows(); ++i) {
    for (std::size_t j = i; j < b_.rows(); ++j) s.set(i, j, scale_ * dot(b_.row(i), b_.row(j)));
  }
  return s;
}

namespace {

SymMatrix materialize(const SymOperator& op) {
  const std::size_t n = op.dim();
  std::vector<double> dense(n * n), e(n, 0.0), col(n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    op.apply(e, col);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) dense[i * n + j] = col[i];
  }
  // symmetrize against round-off in the operator
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (dense[i * n + j] + dense[j * n + i]);
      dense[i * n + j] = avg;
    }
  }
  return SymMatrix::from_dense_upper(n, dense);
}

// Orthogonalizes v against basis rows 0..count-1 (classical Gram-Schmidt, two passes).
void orthogonalize(std::span<double> v, const std::vector<double>& basis, std::size_t count,
                   std::size_t n) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t b = 0; b < count; ++b) {
      std::span<const double> q{basis.data() + b * n, n};
      const double h = dot(q, v);
      for (std::size_t i = 0; i < n; ++i) v[i] -= h * q[i];
    }
  }
}

struct RitzCheck {
  std::vector<double> values;  // descending
  std::vector<std::size_t> order;
  std::vector<double> z;  // m x m, columns are eigenvectors of T
  bool converged = false;
};

RitzCheck ritz(const std::vector<double>& alpha, const std::vector<double>& beta, std::size_t m,
               std::size_t k, double last_beta, double tol) {
  RitzCheck out;
  Tridiagonal t;
  t.diag.assign(alpha.begin(), alpha.begin() + static_cast<std::ptrdiff_t>(m));
  t.off.assign(beta.begin(), beta.begin() + static_cast<std::ptrdiff_t>(m - 1));
  out.z.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) out.z[i * m + i] = 1.0;
  const std::vector<double> theta = tridiagonal_eigenvalues(std::move(t), &out.z);
  out.order.resize(m);
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::sort(out.order.begin(), out.order.end(),
            [&](std::size_t a, std::size_t b) { return theta[a] > theta[b]; });
  out.values.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.values[i] = theta[out.order[i]];
  if (m < k) return out;
  double scale = 0.0;
  for (double v : out.values) scale = std::max(scale, std::abs(v));
  scale = std::max(scale, std::numeric_limits<double>::min());
  out.converged = true;
  for (std::size_t i = 0; i < k; ++i) {
    const double resid = std::abs(last_beta * out.z[(m - 1) * m + out.order[i]]);
    if (resid > tol * scale) {
      out.converged = false;
      break;
    }
  }
  return out;
}

}  // namespace

Spectrum top_eigs(const SymOperator& op, std::size_t k, const LanczosOptions& opts) {
  const std::size_t n = op.dim();
  if (k == 0 || k > n) {
    throw DomainError("top_eigs needs 1 <= k <= dim (k=" + std::to_string(k) +
                      ", dim=" + std::to_string(n) + ")");
  }
  if (n <= opts.dense_cutoff) {
    Spectrum full = eigs_sym(materialize(op));
    full.values.resize(k);
    return full;
  }

  const std::size_t max_basis = std::min(n, std::max(opts.max_basis, k + 2));
  std::uint64_t rng = opts.start_seed;
  std::vector<double> basis(max_basis * n);
  std::vector<double> alpha(max_basis), beta(max_basis);
  std::vector<double> start(n), w(n);
  fill_random(start, rng);
  for (double& x : start) x += 1.0 / std::sqrt(static_cast<double>(n));

  double last_resid = 0.0;
  std::size_t total_iters = 0;
  for (std::size_t restart = 0; restart <= opts.max_restarts; ++restart) {
    double nrm = norm2(start);
    for (std::size_t i = 0; i < n; ++i) basis[i] = start[i] / nrm;
    std::size_t m = 0;
    double anorm = 0.0;
    RitzCheck check;
    bool exhausted = false;
    while (m < max_basis) {
      std::span<const double> v{basis.data() + m * n, n};
      op.apply(v, w);
      ++total_iters;
      alpha[m] = dot(v, w);
      orthogonalize(w, basis, m + 1, n);
      double b = norm2(w);
      anorm = std::max(anorm, std::abs(alpha[m]) + b);
      ++m;
      bool invariant = false;
      if (b <= 1e-12 * std::max(anorm, std::numeric_limits<double>::min())) {
        // Krylov space is invariant: continue with a fresh orthogonal direction
        b = 0.0;
        invariant = true;
        if (m == n) {
          exhausted = true;
        } else {
          for (int attempt = 0; attempt < 4; ++attempt) {
            fill_random(w, rng);
            orthogonalize(w, basis, m, n);
            const double wn = norm2(w);
            if (wn > 1e-8) {
              for (double& x : w) x /= wn;
              break;
            }
            if (attempt == 3) exhausted = true;
          }
        }
      }
      beta[m - 1] = b;
      const bool full = (m == max_basis) || exhausted;
      if (m >= k && (full || invariant || m % 4 == 0 || m == k)) {
        check = ritz(alpha, beta, m, k, b, opts.tol);
        last_resid = b;
        if (check.converged || exhausted) {
          Spectrum out{std::vector<double>(check.values.begin(),
                                           check.values.begin() + static_cast<std::ptrdiff_t>(k)),
                       n};
          return out;
        }
      }
      if (full) break;
      if (!invariant) {
        for (double& x : w) x /= b;
      }
      std::copy(w.begin(), w.end(), basis.begin() + static_cast<std::ptrdiff_t>(m * n));
    }
    // explicit restart from the sum of the wanted Ritz vectors
    std::fill(start.begin(), start.end(), 0.0);
    for (std::size_t r = 0; r < k && r < m; ++r) {
      const std::size_t col = check.order[r];
      for (std::size_t j = 0; j < m; ++j) {
        const double c = check.z[j * m + col];
        for (std::size_t i = 0; i < n; ++i) start[i] += c * basis[j * n + i];
      }
    }
  }
  throw NumericalError("Lanczos did not converge after " + std::to_string(opts.max_restarts) +
                           " restarts",
                       last_resid, total_iters);
}

Spectrum top_eigs(const SymMatrix& a, std::size_t k, const LanczosOptions& opts) {
  return top_eigs(DenseOperator(a), k, opts);
}

double esd_cdf(const Spectrum& s, double x) {
  if (s.values.empty()) return 0.0;
  const auto count = std::count_if(s.values.begin(), s.values.end(), [x](double v) { return v <= x; });
  return static_cast<double>(count) / static_cast<double>(s.values.size());
}

}  // namespace finitepop::eig
