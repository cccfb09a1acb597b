#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "gramspec/centering.hpp"
#include "gramspec/eigen.hpp"
#include "gramspec/kernels.hpp"
#include "gramspec/spectral.hpp"

namespace gramspec {

/// Classical MDS embedding: columns are the embedded samples, rows the
/// retained axes (sqrt(lambda_c_j) times the j-th eigenvector of Kc).
struct Embedding {
  Matrix points;  // m x n
  std::vector<real> retained_eigenvalues;
  real discarded_negative_mass = 0.0;
  bool clamped = false;  // requested m exceeded the positive spectrum

  index_t dims() const { return points.rows(); }
  index_t samples() const { return points.cols(); }
};

/// Embeds from a symmetric zero-diagonal distance matrix: builds Delta,
/// double-centers it, keeps the m largest nonnegative eigenvalues and sets
/// Xc = Lambda_c^(1/2) Ac^T. Negative eigenvalues are discarded and their
/// absolute mass reported; m is clamped (with a flag) when it exceeds the
/// count of positive eigenvalues.
inline Embedding mds_embed(const SymmetricMatrix& distances, index_t m) {
  const GramMatrix delta = distance_matrix_to_delta(distances);
  const GramMatrix kc = double_center(delta, CenteringScheme::mean());
  const EigenDecomposition eig = sym_eigen(kc.matrix);
  const index_t n = distances.size();

  const real lambda1 = eig.eigenvalues[0];
  index_t positive = 0;
  while (positive < n && eig.eigenvalues[positive] > 1e-8 * std::max(real{0}, lambda1))
    ++positive;

  Embedding out;
  out.clamped = m > positive;
  const index_t m_eff = std::min(m, positive);
  out.retained_eigenvalues.assign(eig.eigenvalues.begin(), eig.eigenvalues.begin() + m_eff);
  out.points = Matrix(m_eff, n);
  for (index_t j = 0; j < m_eff; ++j) {
    const real s = std::sqrt(eig.eigenvalues[j]);
    for (index_t i = 0; i < n; ++i) out.points(j, i) = s * eig.eigenvectors(i, j);
  }
  for (real l : eig.eigenvalues)
    if (l < 0.0) out.discarded_negative_mass += -l;
  return out;
}

/// Worst-case relative error between the input distances and the pairwise
/// distances of the embedded points (classical-MDS exactness at full rank).
inline real mds_round_trip_error(const SymmetricMatrix& distances, const Embedding& e) {
  const index_t n = distances.size();
  real dmax = 0.0;
  for (index_t i = 0; i < n; ++i)
    for (index_t j = i + 1; j < n; ++j) dmax = std::max(dmax, distances(i, j));
  if (dmax == 0.0) {
    real worst = 0.0;
    for (index_t i = 0; i < n; ++i)
      for (index_t j = i + 1; j < n; ++j)
        worst = std::max(worst, squared_distance(e.points.column(i), e.points.column(j)));
    return std::sqrt(worst);
  }
  real worst = 0.0;
  for (index_t i = 0; i < n; ++i)
    for (index_t j = i + 1; j < n; ++j) {
      const real got = std::sqrt(squared_distance(e.points.column(i), e.points.column(j)));
      const real denom = std::max(distances(i, j), 1e-12 * dmax);
      worst = std::max(worst, std::abs(got - distances(i, j)) / denom);
    }
  return worst;
}

/// sigma_{j+2}(Delta) <= sigma_j(Kc) <= sigma_j(Delta).
inline CheckResult mds_separation_check(const GramMatrix& delta, const GramMatrix& kc) {
  return check_separation(analyze_gram(delta, EigenSource::gram_raw),
                          analyze_gram(kc, EigenSource::gram_centered));
}

/// Lower bound on lambda_c_1 from the eigenpairs of Delta.
inline CheckResult mds_bound_check(const GramMatrix& delta, const EigenPairSet& delta_pairs,
                                   real lambda_c1) {
  return check_delta_lower_bound(delta, delta_pairs, lambda_c1);
}

struct ScalingInvarianceResult {
  CheckResult delta_scaling;     // Delta(xi X) = xi^2 Delta(X), entrywise and spectrally
  CheckResult score_invariance;  // unit-variance score vectors match up to sign
};

/// Scale invariance: Delta picks up a factor xi^2 (same eigenvectors), and
/// the unit-variance-normalized score vectors of the linear Gram matrix are
/// unchanged up to sign.
inline ScalingInvarianceResult mds_scaling_invariance(const Matrix& x, real xi) {
  detail::require(xi > 0.0, "mds_scaling_invariance: xi must be > 0");
  const index_t n = x.cols();
  Matrix xs(x.rows(), n);
  for (index_t i = 0; i < x.rows(); ++i)
    for (index_t j = 0; j < n; ++j) xs(i, j) = xi * x(i, j);

  ScalingInvarianceResult out;
  {
    const GramMatrix delta = gram_matrix(x, KernelSpec::negative_half_sqdist());
    const GramMatrix delta_s = gram_matrix(xs, KernelSpec::negative_half_sqdist());
    real entry_resid = 0.0;
    for (index_t i = 0; i < n; ++i)
      for (index_t j = 0; j < n; ++j)
        entry_resid = std::max(entry_resid,
                               std::abs(delta_s(i, j) - xi * xi * delta(i, j)));
    const EigenDecomposition e = sym_eigen(delta.matrix);
    const EigenDecomposition es = sym_eigen(delta_s.matrix);
    const real scale = std::max(real{1}, xi * xi * std::abs(e.eigenvalues[0]));
    real eig_resid = 0.0;
    for (index_t i = 0; i < n; ++i)
      eig_resid = std::max(eig_resid, std::abs(es.eigenvalues[i] - xi * xi * e.eigenvalues[i]));
    const real resid = std::max(entry_resid, eig_resid) / scale;
    const real tol = 1e-8;
    out.delta_scaling = {"delta_scaling", resid, tol, resid <= tol, "ok"};
  }
  {
    const GramMatrix k = gram_matrix(x, KernelSpec::linear());
    const GramMatrix ks = gram_matrix(xs, KernelSpec::linear());
    const EigenDecomposition e = sym_eigen(k.matrix);
    const EigenDecomposition es = sym_eigen(ks.matrix);
    const real lambda1 = e.eigenvalues[0];
    // compare only well-separated eigenvectors; clustered eigenvalues only
    // pin down a subspace
    real worst = 0.0;
    for (index_t j = 0; j < n; ++j) {
      const real lj = e.eigenvalues[j];
      if (lj <= 1e-8 * std::max(real{0}, lambda1)) continue;
      const bool separated = (j == 0 || e.eigenvalues[j - 1] - lj > 1e-8 * lambda1) &&
                             (j + 1 >= n || lj - e.eigenvalues[j + 1] > 1e-8 * lambda1);
      if (!separated) continue;
      real diff_plus = 0.0, diff_minus = 0.0;
      for (index_t i = 0; i < n; ++i) {
        diff_plus = std::max(diff_plus, std::abs(es.eigenvectors(i, j) - e.eigenvectors(i, j)));
        diff_minus = std::max(diff_minus, std::abs(es.eigenvectors(i, j) + e.eigenvectors(i, j)));
      }
      worst = std::max(worst, std::min(diff_plus, diff_minus));
    }
    const real tol = 1e-7;
    out.score_invariance = {"score_invariance", worst, tol, worst <= tol, "ok"};
  }
  return out;
}

}  // namespace gramspec
