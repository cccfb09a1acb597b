#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gramspec/matrix.hpp"

namespace gramspec {

enum class KernelKind { linear, polynomial, gaussian, negative_half_sqdist };

/// Kernel function specification. polynomial: (c + x.y)^p; gaussian:
/// exp(-||x-y||^2 / (2 sigma^2)); negative_half_sqdist: -||x-y||^2 / 2,
/// the conditionally positive definite kernel used by classical MDS.
struct KernelSpec {
  KernelKind kind = KernelKind::linear;
  real sigma = 1.0;  // gaussian
  real c = 0.0;      // polynomial offset
  int p = 1;         // polynomial degree

  static KernelSpec linear() { return {}; }

  static KernelSpec polynomial(real c, int p) {
    detail::require(p >= 1, "polynomial kernel: degree must be >= 1");
    KernelSpec s;
    s.kind = KernelKind::polynomial;
    s.c = c;
    s.p = p;
    return s;
  }

  static KernelSpec gaussian(real sigma) {
    detail::require(sigma > 0.0, "gaussian kernel: sigma must be > 0");
    KernelSpec s;
    s.kind = KernelKind::gaussian;
    s.sigma = sigma;
    return s;
  }

  static KernelSpec negative_half_sqdist() {
    KernelSpec s;
    s.kind = KernelKind::negative_half_sqdist;
    return s;
  }

  bool positive_definite() const { return kind != KernelKind::negative_half_sqdist; }

  std::string name() const {
    switch (kind) {
      case KernelKind::linear: return "linear";
      case KernelKind::polynomial:
        return "poly:" + std::to_string(c) + ":" + std::to_string(p);
      case KernelKind::gaussian: return "gaussian:" + std::to_string(sigma);
      case KernelKind::negative_half_sqdist: return "sqdist";
    }
    return "?";
  }
};

enum class GramKind { psd, conditionally_pd };

/// Symmetric matrix of pairwise kernel evaluations, flagged by whether the
/// quadratic form is nonnegative everywhere (psd) or only on zero-sum
/// coefficient vectors (conditionally_pd).
struct GramMatrix {
  SymmetricMatrix matrix;
  GramKind kind = GramKind::psd;

  index_t size() const { return matrix.size(); }
  real operator()(index_t i, index_t j) const { return matrix(i, j); }
};

inline real squared_distance(const std::vector<real>& x, const std::vector<real>& y) {
  detail::require(x.size() == y.size(), "kernel_eval: dimension mismatch");
  real acc = 0.0;
  for (index_t i = 0; i < x.size(); ++i) {
    const real d = x[i] - y[i];
    acc += d * d;
  }
  return acc;
}

inline real kernel_eval(const KernelSpec& spec, const std::vector<real>& x,
                        const std::vector<real>& y) {
  switch (spec.kind) {
    case KernelKind::linear: return dot(x, y);
    case KernelKind::polynomial: return std::pow(spec.c + dot(x, y), spec.p);
    case KernelKind::gaussian:
      return std::exp(-squared_distance(x, y) / (2.0 * spec.sigma * spec.sigma));
    case KernelKind::negative_half_sqdist: return -0.5 * squared_distance(x, y);
  }
  throw std::logic_error("kernel_eval: unknown kernel");
}

/// K(i,j) = kappa(x_i, x_j) over the columns of x. The upper triangle is
/// computed and mirrored, so the result is exactly symmetric.
inline GramMatrix gram_matrix(const Matrix& x, const KernelSpec& spec) {
  const index_t n = x.cols();
  detail::require(n >= 1, "gram_matrix: need at least one sample");

  std::vector<std::vector<real>> cols(n);
  for (index_t j = 0; j < n; ++j) cols[j] = x.column(j);

  GramMatrix g;
  g.matrix = SymmetricMatrix(n);
  g.kind = spec.positive_definite() ? GramKind::psd : GramKind::conditionally_pd;
  for (index_t i = 0; i < n; ++i)
    for (index_t j = i; j < n; ++j) g.matrix.set(i, j, kernel_eval(spec, cols[i], cols[j]));
  return g;
}

/// Builds Delta with entries -d_ij^2 / 2 from a matrix of pairwise
/// distances. The diagonal must be exactly zero and entries nonnegative.
/// An optional positive bias b is added to every entry (off by default);
/// double centering annihilates it.
inline GramMatrix distance_matrix_to_delta(const SymmetricMatrix& d, real bias = 0.0) {
  const index_t n = d.size();
  detail::require(bias >= 0.0, "distance_matrix_to_delta: bias must be >= 0");
  for (index_t i = 0; i < n; ++i) {
    detail::require(d(i, i) == 0.0, "distance_matrix_to_delta: nonzero diagonal");
    for (index_t j = i + 1; j < n; ++j)
      detail::require(d(i, j) >= 0.0, "distance_matrix_to_delta: negative distance");
  }

  GramMatrix g;
  g.matrix = SymmetricMatrix(n);
  g.kind = GramKind::conditionally_pd;
  for (index_t i = 0; i < n; ++i)
    for (index_t j = i; j < n; ++j) g.matrix.set(i, j, -0.5 * d(i, j) * d(i, j) + bias);
  return g;
}

/// Euclidean pairwise distances of the columns of x.
inline SymmetricMatrix pairwise_distances(const Matrix& x) {
  const index_t n = x.cols();
  SymmetricMatrix d(n);
  for (index_t i = 0; i < n; ++i) {
    const auto xi = x.column(i);
    for (index_t j = i + 1; j < n; ++j)
      d.set(i, j, std::sqrt(squared_distance(xi, x.column(j))));
  }
  return d;
}

}  // namespace gramspec
