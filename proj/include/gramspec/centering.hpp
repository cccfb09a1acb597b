#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "gramspec/kernels.hpp"
#include "gramspec/matrix.hpp"

namespace gramspec {

struct MeanInfo {
  std::vector<real> mu;
  real mu_norm_sq = 0.0;
};

/// Weights for the weighted mean shift. Must sum to one.
class WeightVector {
 public:
  explicit WeightVector(std::vector<real> omega) : omega_(std::move(omega)) {
    detail::require_finite(omega_, "WeightVector");
    detail::require(std::abs(sum(omega_) - 1.0) <= 1e-12, "WeightVector: weights must sum to 1");
  }

  static WeightVector uniform(index_t n) {
    return WeightVector(std::vector<real>(n, 1.0 / static_cast<real>(n)));
  }

  const std::vector<real>& omega() const { return omega_; }
  index_t size() const { return omega_.size(); }

 private:
  std::vector<real> omega_;
};

enum class CenteringVariant { none, mean, weighted };

class CenteringScheme {
 public:
  static CenteringScheme none() { return CenteringScheme(CenteringVariant::none); }
  static CenteringScheme mean() { return CenteringScheme(CenteringVariant::mean); }
  static CenteringScheme weighted(const WeightVector& w) {
    CenteringScheme s(CenteringVariant::weighted);
    s.omega_ = w.omega();
    return s;
  }

  CenteringVariant variant() const { return variant_; }
  const std::vector<real>& omega() const { return omega_; }

  /// The effective weights: 1/n for the mean variant, omega for weighted.
  std::vector<real> effective_weights(index_t n) const {
    if (variant_ == CenteringVariant::weighted) {
      detail::require(omega_.size() == n, "CenteringScheme: weight length != n");
      return omega_;
    }
    return std::vector<real>(n, 1.0 / static_cast<real>(n));
  }

 private:
  explicit CenteringScheme(CenteringVariant v) : variant_(v) {}
  CenteringVariant variant_;
  std::vector<real> omega_;
};

/// Column mean of the data matrix and its squared norm.
inline MeanInfo mean_vector(const Matrix& x) {
  const index_t n = x.cols();
  detail::require(n >= 1, "mean_vector: need at least one sample");
  MeanInfo info;
  info.mu.assign(x.rows(), 0.0);
  for (index_t j = 0; j < n; ++j)
    for (index_t i = 0; i < x.rows(); ++i) info.mu[i] += x(i, j);
  for (auto& v : info.mu) v /= static_cast<real>(n);
  info.mu_norm_sq = dot(info.mu, info.mu);
  return info;
}

/// mu_omega = X omega.
inline MeanInfo weighted_mean(const Matrix& x, const std::vector<real>& omega) {
  detail::require(omega.size() == x.cols(), "weighted_mean: weight length != n");
  MeanInfo info;
  info.mu.assign(x.rows(), 0.0);
  for (index_t j = 0; j < x.cols(); ++j)
    for (index_t i = 0; i < x.rows(); ++i) info.mu[i] += x(i, j) * omega[j];
  info.mu_norm_sq = dot(info.mu, info.mu);
  return info;
}

/// ||mu||^2 read off the Gram matrix alone: grand sum over n^2. For kernel
/// matrices this is the squared norm of the feature-space centroid.
inline real mean_norm_sq_from_gram(const GramMatrix& k) {
  const real n = static_cast<real>(k.size());
  return k.matrix.grand_sum() / (n * n);
}

/// Shifts every column by the (weighted) mean; identity for the none variant.
inline Matrix center_data(const Matrix& x, const CenteringScheme& scheme) {
  if (scheme.variant() == CenteringVariant::none) return x;
  const MeanInfo m = scheme.variant() == CenteringVariant::mean
                         ? mean_vector(x)
                         : weighted_mean(x, scheme.omega());
  Matrix out(x.rows(), x.cols());
  for (index_t j = 0; j < x.cols(); ++j)
    for (index_t i = 0; i < x.rows(); ++i) out(i, j) = x(i, j) - m.mu[i];
  return out;
}

/// Double centering of a Gram matrix.
///
/// mean variant:      Kc(i,j) = K(i,j) - r_i - r_j + g
///   with r_i the i-th row mean and g the grand mean; this is
///   (I - P1) K (I - P1) written entrywise.
/// weighted variant:  Kc(i,j) = K(i,j) - (K w)_i - (K w)_j + w^T K w,
///   the expansion of (I - Pw)^T K (I - Pw).
///
/// The upper triangle is computed and mirrored. Centering a conditionally
/// positive definite matrix yields a PSD matrix (the quadratic form only
/// ever sees zero-sum vectors).
inline GramMatrix double_center(const GramMatrix& k, const CenteringScheme& scheme) {
  if (scheme.variant() == CenteringVariant::none) return k;

  const index_t n = k.size();
  const std::vector<real> w = scheme.effective_weights(n);
  const std::vector<real> kw = k.matrix.multiply(w);
  const real grand = dot(w, kw);  // w^T K w

  GramMatrix out;
  out.matrix = SymmetricMatrix(n);
  out.kind = GramKind::psd;
  for (index_t i = 0; i < n; ++i)
    for (index_t j = i; j < n; ++j) out.matrix.set(i, j, k(i, j) - kw[i] - kw[j] + grand);
  return out;
}

/// Cc = C - mu mu^T (rank-one downdate of the non-central second moment).
inline SymmetricMatrix center_covariance(const SymmetricMatrix& c, const MeanInfo& mu) {
  const index_t d = c.size();
  detail::require(mu.mu.size() == d, "center_covariance: dimension mismatch");
  SymmetricMatrix out(d);
  for (index_t i = 0; i < d; ++i)
    for (index_t j = i; j < d; ++j) out.set(i, j, c(i, j) - mu.mu[i] * mu.mu[j]);
  return out;
}

/// Weighted form: Cc = C - mu_w mu^T - mu mu_w^T + mu_w mu_w^T.
inline SymmetricMatrix center_covariance(const SymmetricMatrix& c, const MeanInfo& mu,
                                         const MeanInfo& mu_omega) {
  const index_t d = c.size();
  detail::require(mu.mu.size() == d && mu_omega.mu.size() == d,
                  "center_covariance: dimension mismatch");
  SymmetricMatrix out(d);
  for (index_t i = 0; i < d; ++i)
    for (index_t j = i; j < d; ++j)
      out.set(i, j, c(i, j) - mu_omega.mu[i] * mu.mu[j] - mu.mu[i] * mu_omega.mu[j] +
                        mu_omega.mu[i] * mu_omega.mu[j]);
  return out;
}

/// (1/n) X X^T, the second-order non-central moment matrix.
inline SymmetricMatrix moment_matrix(const Matrix& x) {
  const index_t d = x.rows();
  const index_t n = x.cols();
  detail::require(n >= 1, "moment_matrix: need at least one sample");
  SymmetricMatrix c(d);
  for (index_t i = 0; i < d; ++i)
    for (index_t j = i; j < d; ++j) {
      real acc = 0.0;
      for (index_t k = 0; k < n; ++k) acc += x(i, k) * x(j, k);
      c.set(i, j, acc / static_cast<real>(n));
    }
  return c;
}

}  // namespace gramspec
