#pragma once

#include <numeric>
#include <vector>

#include "gramspec/eigen.hpp"
#include "gramspec/kernels.hpp"
#include "gramspec/spectral.hpp"

namespace gramspec {

/// Composition of the quadratic Renyi entropy estimate in terms of the
/// eigenpairs of the non-centered kernel matrix: term_i =
/// lambda_i (alpha_i^T 1)^2 / n^2, summing to the squared norm of the
/// feature-space mean.
struct EntropyDecomposition {
  std::vector<real> terms;        // eigenpair order (non-increasing eigenvalues)
  real total = 0.0;
  std::vector<index_t> selected;  // all indices, by term size descending
  /// Set when the total is numerically zero; a centered Gram matrix was
  /// probably passed, which makes the density estimate null.
  bool near_zero_total = false;
};

inline EntropyDecomposition keca_decompose(const GramMatrix& k) {
  detail::require(k.kind == GramKind::psd, "keca_decompose: kernel matrix must be psd");
  const EigenPairSet pairs = analyze_gram(k, EigenSource::gram_raw);
  const index_t n = k.size();
  const real n2 = static_cast<real>(n) * static_cast<real>(n);

  EntropyDecomposition out;
  out.terms.resize(n);
  for (index_t i = 0; i < n; ++i)
    out.terms[i] = pairs.lambda(i) * pairs.ones_overlaps[i] * pairs.ones_overlaps[i] / n2;
  out.total = std::accumulate(out.terms.begin(), out.terms.end(), real{0});

  out.selected.resize(n);
  std::iota(out.selected.begin(), out.selected.end(), index_t{0});
  std::stable_sort(out.selected.begin(), out.selected.end(),
                   [&](index_t a, index_t b) { return out.terms[a] > out.terms[b]; });

  out.near_zero_total = out.total <= 1e-10;
  return out;
}

}  // namespace gramspec
