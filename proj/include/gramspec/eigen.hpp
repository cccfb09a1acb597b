#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gramspec/matrix.hpp"

namespace gramspec {

/// Raised when the Jacobi sweep cap is hit before the off-diagonal norm
/// drops below tolerance.
class EigenFailure : public std::runtime_error {
 public:
  EigenFailure(const std::string& msg, real off_norm, int sweeps)
      : std::runtime_error(msg), off_diagonal_norm(off_norm), sweeps_run(sweeps) {}
  real off_diagonal_norm;
  int sweeps_run;
};

/// Eigendecomposition of a symmetric matrix: eigenvalues in non-increasing
/// order, orthonormal eigenvectors as columns. For moment matrices
/// (C = (1/n) X X^T) source_scale is 1/n, i.e. matrix eigenvalue =
/// source_scale * Gram-scale eigenvalue.
struct EigenDecomposition {
  std::vector<real> eigenvalues;
  Matrix eigenvectors;  // columns
  real source_scale = 1.0;

  index_t size() const { return eigenvalues.size(); }

  std::vector<real> eigenvector(index_t i) const { return eigenvectors.column(i); }

  /// Eigenvalue in the Gram-matrix convention (lambda_i, not lambda_i / n).
  real gram_scale_eigenvalue(index_t i) const { return eigenvalues[i] / source_scale; }
};

struct JacobiOptions {
  int max_sweeps = 100;
  // Off-diagonal norm target relative to ||M||_F. Sweeps converge
  // quadratically, so the tight target costs at most one extra sweep; it is
  // needed so eigenvectors of near-zero eigenvalues stay clean enough for
  // the zero-sum checks on centered matrices.
  real relative_tolerance = 1e-14;
};

namespace detail {

inline real off_diagonal_norm(const std::vector<real>& a, index_t n) {
  real acc = 0.0;
  for (index_t p = 0; p + 1 < n; ++p)
    for (index_t q = p + 1; q < n; ++q) acc += a[p * n + q] * a[p * n + q];
  return std::sqrt(2.0 * acc);
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for dense symmetric matrices.
///
/// Deterministic: fixed (row-cyclic) sweep order, stable sort of the
/// eigenvalues, and a sign convention that makes the largest-magnitude
/// component of every eigenvector positive (first such component on ties).
inline EigenDecomposition sym_eigen(const SymmetricMatrix& m, const JacobiOptions& opts = {}) {
  const index_t n = m.size();
  detail::require(n >= 1, "sym_eigen: empty matrix");

  std::vector<real> a(n * n);
  for (index_t i = 0; i < n; ++i)
    for (index_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);

  std::vector<real> v(n * n, 0.0);
  for (index_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const real tol = opts.relative_tolerance * m.frobenius_norm();
  // rotating below this threshold cannot matter for the target off-norm
  const real skip = tol / static_cast<real>(std::max<index_t>(n, 1));

  int sweeps = 0;
  real off = detail::off_diagonal_norm(a, n);
  while (off > tol) {
    if (sweeps >= opts.max_sweeps) {
      std::ostringstream oss;
      oss << "sym_eigen: no convergence after " << sweeps << " sweeps, off-diagonal norm "
          << off << " (tolerance " << tol << ")";
      throw EigenFailure(oss.str(), off, sweeps);
    }
    for (index_t p = 0; p + 1 < n; ++p) {
      for (index_t q = p + 1; q < n; ++q) {
        const real apq = a[p * n + q];
        if (std::abs(apq) <= skip) continue;

        const real tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const real t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const real c = 1.0 / std::sqrt(1.0 + t * t);
        const real s = t * c;

        a[p * n + p] -= t * apq;
        a[q * n + q] += t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (index_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const real akp = a[k * n + p];
          const real akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[p * n + k] = a[k * n + p];
          a[k * n + q] = s * akp + c * akq;
          a[q * n + k] = a[k * n + q];
        }
        for (index_t k = 0; k < n; ++k) {
          const real vkp = v[k * n + p];
          const real vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
    ++sweeps;
    off = detail::off_diagonal_norm(a, n);
  }

  std::vector<index_t> order(n);
  std::iota(order.begin(), order.end(), index_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](index_t i, index_t j) { return a[i * n + i] > a[j * n + j]; });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (index_t col = 0; col < n; ++col) {
    const index_t src = order[col];
    out.eigenvalues[col] = a[src * n + src];

    index_t imax = 0;
    real amax = -1.0;
    for (index_t k = 0; k < n; ++k) {
      const real mag = std::abs(v[k * n + src]);
      if (mag > amax) {
        amax = mag;
        imax = k;
      }
    }
    const real flip = v[imax * n + src] < 0.0 ? -1.0 : 1.0;
    for (index_t k = 0; k < n; ++k) out.eigenvectors(k, col) = flip * v[k * n + src];
  }
  return out;
}

}  // namespace gramspec
