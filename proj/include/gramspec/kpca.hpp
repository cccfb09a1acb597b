#pragma once

#include <cmath>
#include <vector>

#include "gramspec/centering.hpp"
#include "gramspec/eigen.hpp"
#include "gramspec/kernels.hpp"
#include "gramspec/spectral.hpp"

namespace gramspec {

/// Coefficient scaling of the retained eigenvectors:
/// variance_preserving -> ||alpha_j||^2 = 1/lambda_j (projections keep the
/// data variance along each axis); unit_variance -> ||alpha_j||^2 =
/// 1/lambda_j^2 (projections have unit variance on each axis).
enum class Normalization { variance_preserving, unit_variance };

/// Fitted kernel principal components plus the training-kernel centering
/// statistics needed to project unseen points.
struct ComponentSet {
  Matrix coefficients;            // n x m, scaled eigenvector columns
  std::vector<real> eigenvalues;  // top-m eigenvalues of the centered Gram matrix
  Normalization normalization = Normalization::variance_preserving;
  CenteringVariant centering = CenteringVariant::mean;

  // captured at fit time: effective weights w, (K w)_i and w^T K w
  std::vector<real> weights;
  std::vector<real> row_stats;
  real grand = 0.0;

  index_t n = 0;
  index_t components() const { return eigenvalues.size(); }
};

/// Top-m eigenpairs of the (optionally centered) Gram matrix, scaled per the
/// chosen normalization. Throws when m exceeds the numerical rank.
inline ComponentSet kpca_fit(const GramMatrix& k, const CenteringScheme& scheme, index_t m,
                             Normalization normalization) {
  detail::require(m >= 1, "kpca_fit: m must be >= 1");
  const index_t n = k.size();
  const GramMatrix kc = double_center(k, scheme);
  const EigenDecomposition eig = sym_eigen(kc.matrix);

  const real lambda1 = eig.eigenvalues[0];
  index_t rank = 0;
  while (rank < n && eig.eigenvalues[rank] > 1e-8 * std::max(real{0}, lambda1)) ++rank;
  detail::require(m <= rank, "kpca_fit: m exceeds numerical rank " + std::to_string(rank));

  ComponentSet model;
  model.normalization = normalization;
  model.centering = scheme.variant();
  model.n = n;
  model.eigenvalues.assign(eig.eigenvalues.begin(), eig.eigenvalues.begin() + m);
  model.coefficients = Matrix(n, m);
  for (index_t j = 0; j < m; ++j) {
    const real lj = eig.eigenvalues[j];
    const real scale =
        normalization == Normalization::variance_preserving ? 1.0 / std::sqrt(lj) : 1.0 / lj;
    for (index_t i = 0; i < n; ++i) model.coefficients(i, j) = scale * eig.eigenvectors(i, j);
  }

  if (scheme.variant() != CenteringVariant::none) {
    model.weights = scheme.effective_weights(n);
    model.row_stats = k.matrix.multiply(model.weights);
    model.grand = dot(model.weights, model.row_stats);
  }
  return model;
}

/// Scores of a new point from its kernel column against the training set.
/// The centered variant re-applies the fit-time centering statistics, i.e.
/// the column is mapped to (phi(x) - mu)^T (phi(x_i) - mu) before projecting.
inline std::vector<real> kpca_project(const ComponentSet& model,
                                      const std::vector<real>& kernel_column) {
  detail::require(kernel_column.size() == model.n, "kpca_project: column length != n");
  std::vector<real> col = kernel_column;
  if (model.centering != CenteringVariant::none) {
    const real col_mean = dot(model.weights, kernel_column);
    for (index_t i = 0; i < model.n; ++i)
      col[i] = kernel_column[i] - model.row_stats[i] - col_mean + model.grand;
  }
  std::vector<real> scores(model.components(), 0.0);
  for (index_t j = 0; j < model.components(); ++j) {
    real acc = 0.0;
    for (index_t i = 0; i < model.n; ++i) acc += model.coefficients(i, j) * col[i];
    scores[j] = acc;
  }
  return scores;
}

/// Fit-time scores of the training samples: row i holds the scores of
/// sample i. Equal to Kc times the coefficient columns, i.e. lambda_j times
/// each scaled eigenvector.
inline Matrix kpca_training_scores(const ComponentSet& model) {
  Matrix scores(model.n, model.components());
  for (index_t j = 0; j < model.components(); ++j)
    for (index_t i = 0; i < model.n; ++i)
      scores(i, j) = model.eigenvalues[j] * model.coefficients(i, j);
  return scores;
}

}  // namespace gramspec
