#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "gramspec/centering.hpp"
#include "gramspec/eigen.hpp"
#include "gramspec/kernels.hpp"
#include "gramspec/matrix.hpp"

namespace gramspec {

enum class EigenSource { gram_raw, gram_centered, moment_raw, moment_centered };

/// Eigendecomposition of one of the four analyzed matrices plus the
/// overlaps alpha_i^T 1 that drive the mean-norm and entropy formulas.
struct EigenPairSet {
  EigenDecomposition decomposition;
  EigenSource source = EigenSource::gram_raw;
  std::vector<real> ones_overlaps;  // alpha_i^T 1 (Gram sources only)

  index_t size() const { return decomposition.size(); }
  real lambda(index_t i) const { return decomposition.gram_scale_eigenvalue(i); }
};

inline EigenPairSet analyze_gram(const GramMatrix& k, EigenSource source) {
  EigenPairSet s;
  s.decomposition = sym_eigen(k.matrix);
  s.source = source;
  const index_t n = k.size();
  s.ones_overlaps.resize(n, 0.0);
  for (index_t i = 0; i < n; ++i) {
    real acc = 0.0;
    for (index_t r = 0; r < n; ++r) acc += s.decomposition.eigenvectors(r, i);
    s.ones_overlaps[i] = acc;
  }
  return s;
}

/// Moment matrices follow the convention C w_i = (1/n) lambda_i w_i, so the
/// stored decomposition carries source_scale = 1/n and lambda(i) returns the
/// Gram-scale eigenvalue.
inline EigenPairSet analyze_moment(const SymmetricMatrix& c, EigenSource source,
                                   index_t n_samples) {
  EigenPairSet s;
  s.decomposition = sym_eigen(c);
  s.decomposition.source_scale = 1.0 / static_cast<real>(n_samples);
  s.source = source;
  return s;
}

/// One row of the majorization-bound table: d'_i sorted non-increasing next
/// to the centered eigenvalues, with running sums of both.
struct BoundEntry {
  index_t index;  // position of this d' in the unsorted eigenpair order
  real d_prime;
  real lambda_c;
  real cumulative_d;
  real cumulative_lambda_c;
};

struct CheckResult {
  std::string name;
  /// Residual checks pass when margin <= tolerance; bound checks pass when
  /// margin >= -tolerance. `passed` is authoritative either way.
  real margin = 0.0;
  real tolerance = 0.0;
  bool passed = false;
  std::string status = "ok";  // "ok" | "degenerate"
};

struct SpectralReport {
  std::string dataset_id;
  KernelSpec kernel;
  index_t n = 0;
  std::vector<CheckResult> checks;
  std::vector<real> eigenvalues_raw;
  std::vector<real> eigenvalues_centered;
  std::vector<real> pi;    // lambda_j / tr(K)
  std::vector<real> pi_c;  // lambda_c_j / tr(Kc)
  real gamma = 0.0;        // tr(Kc) / tr(K)
  bool has_proportions = false;
  /// |alpha_{i+1}^T alpha_c_i| for the leading pairs; informational only.
  std::vector<real> shift_cosines;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// individual checks
// ---------------------------------------------------------------------------

/// tr(Kc) = tr(K) - n ||mu||^2 and the ratio form
/// tr(Kc)/tr(K) = 1 - (1^T K 1)/(n tr(K)).
inline CheckResult check_trace_lemma(const GramMatrix& k, const GramMatrix& kc,
                                     real mu_norm_sq) {
  const real n = static_cast<real>(k.size());
  const real tr_k = trace(k.matrix);
  const real tr_kc = trace(kc.matrix);
  real resid = std::abs(tr_kc - (tr_k - n * mu_norm_sq));
  if (tr_k != 0.0) {
    const real ratio_resid = std::abs(tr_kc / tr_k - (1.0 - k.matrix.grand_sum() / (n * tr_k)));
    resid = std::max(resid, ratio_resid * std::abs(tr_k));
  }
  const real tol = 1e-9 * std::max(real{1}, std::abs(tr_k));
  return {"trace_lemma", resid, tol, resid <= tol, "ok"};
}

/// lambda_{j+1} <= lambda_c_j <= lambda_j with lambda_c_n = 0.
inline CheckResult check_interlacing(const EigenPairSet& raw, const EigenPairSet& centered) {
  const index_t n = raw.size();
  detail::require(n == centered.size(), "check_interlacing: size mismatch");
  const auto& l = raw.decomposition.eigenvalues;
  const auto& lc = centered.decomposition.eigenvalues;
  real margin = std::numeric_limits<real>::infinity();
  for (index_t j = 0; j < n; ++j) {
    margin = std::min(margin, l[j] - lc[j]);
    if (j + 1 < n) margin = std::min(margin, lc[j] - l[j + 1]);
  }
  margin = std::min(margin, -std::abs(lc[n - 1]));  // lambda_c_n = 0
  const real tol = 1e-8 * std::max(real{0}, l[0]);
  return {"interlacing", margin, tol, margin >= -tol, "ok"};
}

/// pi_{j+1} <= gamma pi_c_j <= pi_j with gamma = tr(Kc)/tr(K).
inline CheckResult check_proportion_interlacing(const EigenPairSet& raw,
                                                const EigenPairSet& centered) {
  const auto& l = raw.decomposition.eigenvalues;
  const auto& lc = centered.decomposition.eigenvalues;
  const real tr_k = std::accumulate(l.begin(), l.end(), real{0});
  const real tr_kc = std::accumulate(lc.begin(), lc.end(), real{0});
  detail::require(tr_k > 0.0, "check_proportion_interlacing: trace of K must be positive");
  const real gamma = tr_kc / tr_k;
  real margin = std::numeric_limits<real>::infinity();
  for (index_t j = 0; j + 1 < l.size(); ++j) {
    const real gpc = tr_kc > 0.0 ? gamma * (lc[j] / tr_kc) : 0.0;
    margin = std::min(margin, l[j] / tr_k - gpc);
    margin = std::min(margin, gpc - l[j + 1] / tr_k);
  }
  const real tol = 1e-10;
  return {"proportion_interlacing", margin, tol, margin >= -tol, "ok"};
}

/// d'_i = lambda_i + (||mu||^2 - (2/n) lambda_i) (alpha_i^T 1)^2 in the raw
/// eigenpair order (unsorted).
inline std::vector<real> dprime_values_gram(const EigenPairSet& raw, real mu_norm_sq) {
  const index_t n = raw.size();
  std::vector<real> d(n);
  for (index_t i = 0; i < n; ++i) {
    const real li = raw.lambda(i);
    const real oi = raw.ones_overlaps[i];
    d[i] = li + (mu_norm_sq - 2.0 / static_cast<real>(n) * li) * oi * oi;
  }
  return d;
}

/// Sorts d' non-increasing (ties by original index) and lines the values up
/// against the centered eigenvalues with cumulative sums of both.
inline std::vector<BoundEntry> make_bound_entries(const std::vector<real>& d_unsorted,
                                                  const std::vector<real>& lambda_c) {
  const index_t n = d_unsorted.size();
  detail::require(lambda_c.size() == n, "make_bound_entries: size mismatch");
  std::vector<index_t> order(n);
  std::iota(order.begin(), order.end(), index_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](index_t a, index_t b) { return d_unsorted[a] > d_unsorted[b]; });
  std::vector<BoundEntry> entries(n);
  real cd = 0.0, cl = 0.0;
  for (index_t t = 0; t < n; ++t) {
    cd += d_unsorted[order[t]];
    cl += lambda_c[t];
    entries[t] = {order[t], d_unsorted[order[t]], lambda_c[t], cd, cl};
  }
  return entries;
}

inline std::vector<BoundEntry> schur_horn_dprime_gram(const EigenPairSet& raw, real mu_norm_sq,
                                                      const std::vector<real>& lambda_c) {
  return make_bound_entries(dprime_values_gram(raw, mu_norm_sq), lambda_c);
}

/// Proof identity behind the bound: d'_i equals the diagonal entry
/// alpha_i^T Kc alpha_i of the rotated centered Gram matrix.
inline CheckResult check_dprime_diagonal_identity(const EigenPairSet& raw, real mu_norm_sq,
                                                  const GramMatrix& kc) {
  const std::vector<real> d = dprime_values_gram(raw, mu_norm_sq);
  real resid = 0.0;
  for (index_t i = 0; i < raw.size(); ++i) {
    const auto ai = raw.decomposition.eigenvector(i);
    resid = std::max(resid, std::abs(d[i] - kc.matrix.quadratic_form(ai, ai)));
  }
  const real tol = 1e-9 * std::max(real{1}, raw.lambda(0));
  return {"dprime_diagonal_identity", resid, tol, resid <= tol, "ok"};
}

/// sum_{i<=t} d'_i <= sum_{i<=t} lambda_c_i for every t.
inline CheckResult check_cumulative_bounds(const std::vector<BoundEntry>& entries,
                                           real lambda1) {
  real margin = std::numeric_limits<real>::infinity();
  for (const auto& e : entries) margin = std::min(margin, e.cumulative_lambda_c - e.cumulative_d);
  const real tol = 1e-8 * std::max(real{1}, lambda1);
  return {"cumulative_dprime_bounds", margin, tol, margin >= -tol, "ok"};
}

/// Equality of the two cumulative sums at t = n (both equal tr(Kc)).
inline CheckResult check_cumulative_equality(const std::vector<BoundEntry>& entries,
                                             real trace_scale) {
  const auto& last = entries.back();
  const real resid = std::abs(last.cumulative_d - last.cumulative_lambda_c);
  const real tol = 1e-8 * std::max(real{1}, std::abs(trace_scale));
  return {"cumulative_dprime_equality", resid, tol, resid <= tol, "ok"};
}

/// Entries of every eigenvector with a non-zero eigenvalue sum to zero.
inline CheckResult check_eigvec_sum_zero(const EigenPairSet& centered) {
  const index_t n = centered.size();
  const real zero_thresh = 1e-8 * std::max(real{0}, centered.decomposition.eigenvalues[0]);
  real worst = 0.0;
  for (index_t j = 0; j < n; ++j)
    if (centered.decomposition.eigenvalues[j] > zero_thresh)
      worst = std::max(worst, std::abs(centered.ones_overlaps[j]));
  const real tol = 1e-7 * std::sqrt(static_cast<real>(n));
  return {"eigvec_sum_zero", worst, tol, worst <= tol, "ok"};
}

/// Unit-norm eigenvectors have entries in [-1, 1].
inline CheckResult check_box_constraint(const EigenPairSet& centered) {
  real maxabs = 0.0;
  const auto& v = centered.decomposition.eigenvectors;
  for (index_t i = 0; i < v.rows(); ++i)
    for (index_t j = 0; j < v.cols(); ++j) maxabs = std::max(maxabs, std::abs(v(i, j)));
  const real excess = maxabs - 1.0;
  const real tol = 1e-12;
  return {"eigvec_box_constraint", excess, tol, excess <= tol, "ok"};
}

/// A^T Kc A has the same eigenvalues as Kc (A orthonormal).
inline CheckResult check_lemma_same_eigs(const EigenPairSet& raw, const GramMatrix& kc) {
  const Matrix& a = raw.decomposition.eigenvectors;
  const Matrix rotated = a.transposed() * kc.matrix.to_matrix() * a;
  const EigenDecomposition rot_eigen = sym_eigen(SymmetricMatrix::symmetrized(rotated));
  const EigenDecomposition kc_eigen = sym_eigen(kc.matrix);
  real resid = 0.0;
  for (index_t i = 0; i < rot_eigen.size(); ++i)
    resid = std::max(resid, std::abs(rot_eigen.eigenvalues[i] - kc_eigen.eigenvalues[i]));
  const real tol = 1e-7 * std::max(real{1}, std::abs(kc_eigen.eigenvalues[0]));
  return {"rotated_gram_same_eigenvalues", resid, tol, resid <= tol, "ok"};
}

/// Two routes to ||mu||^2: grand sum of K over n^2 versus the eigen-sum
/// (1/n^2) sum lambda_i (alpha_i^T 1)^2.
inline CheckResult check_norm_mean_two_formulas(const GramMatrix& k, const EigenPairSet& raw) {
  const real n = static_cast<real>(k.size());
  const real grand_form = k.matrix.grand_sum() / (n * n);
  real eigen_form = 0.0;
  for (index_t i = 0; i < raw.size(); ++i)
    eigen_form += raw.lambda(i) * raw.ones_overlaps[i] * raw.ones_overlaps[i];
  eigen_form /= n * n;
  const real resid = std::abs(grand_form - eigen_form);
  const real tol = 1e-10 * std::max(real{1}, std::abs(grand_form));
  return {"norm_mean_two_formulas", resid, tol, resid <= tol, "ok"};
}

/// sum_i (alpha_i^T 1)^2 = n (orthonormal completeness).
inline CheckResult check_ones_completeness(const EigenPairSet& raw) {
  real acc = 0.0;
  for (real o : raw.ones_overlaps) acc += o * o;
  const real n = static_cast<real>(raw.size());
  const real resid = std::abs(acc - n);
  const real tol = 1e-9 * n;
  return {"ones_overlap_completeness", resid, tol, resid <= tol, "ok"};
}

/// lambda_1 >= (1/n) 1^T K 1 (Rayleigh quotient at v = 1).
inline CheckResult check_courant_fischer(const GramMatrix& k, const EigenPairSet& raw) {
  const real lambda1 = raw.lambda(0);
  const real margin = lambda1 - k.matrix.grand_sum() / static_cast<real>(k.size());
  const real tol = 1e-9 * std::max(real{0}, lambda1);
  return {"courant_fischer_bound", margin, tol, margin >= -tol, "ok"};
}

/// Majorization of the sorted diagonal by the eigenvalues, with equality of
/// the full sums.
inline CheckResult check_schur_horn_matrix(const SymmetricMatrix& m,
                                           const std::vector<real>& eigenvalues,
                                           const std::string& name) {
  std::vector<real> diag = m.diagonal_entries();
  std::sort(diag.begin(), diag.end(), std::greater<real>());
  real margin = std::numeric_limits<real>::infinity();
  real cd = 0.0, cl = 0.0;
  for (index_t t = 0; t < diag.size(); ++t) {
    cd += diag[t];
    cl += eigenvalues[t];
    margin = std::min(margin, cl - cd);
  }
  const real eq_resid = std::abs(cl - cd);
  const real scale = std::max(real{1}, std::abs(eigenvalues.empty() ? 0.0 : eigenvalues[0]));
  const real tol = 1e-8 * scale;
  const real eq_tol = 1e-9 * std::max(real{1}, std::abs(trace(m)));
  const bool passed = margin >= -tol && eq_resid <= eq_tol;
  return {name, margin, tol, passed, "ok"};
}

/// w_i^T mu computed on the Gram side; w_i must be X alpha_i / sqrt(lambda_i).
inline real mean_score(real lambda_gram, real alpha_ones, index_t n) {
  detail::require(lambda_gram > 0.0, "mean_score: lambda must be positive");
  return std::sqrt(lambda_gram) * alpha_ones / static_cast<real>(n);
}

namespace detail {

inline std::vector<real> matvec(const Matrix& m, const std::vector<real>& v) {
  require(v.size() == m.cols(), "matvec: length mismatch");
  std::vector<real> out(m.rows(), 0.0);
  for (index_t i = 0; i < m.rows(); ++i) {
    real acc = 0.0;
    for (index_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

}  // namespace detail

/// w_i^T mu = (sqrt(lambda_i)/n) alpha_i^T 1 for every retained eigenpair,
/// comparing the direct inner product against the Gram-side route.
inline CheckResult check_mean_score_identity(const Matrix& x, const EigenPairSet& raw,
                                             const MeanInfo& mu) {
  const index_t n = raw.size();
  const real zero_thresh = 1e-8 * std::max(real{0}, raw.lambda(0));
  real worst = 0.0;
  for (index_t i = 0; i < n; ++i) {
    const real li = raw.lambda(i);
    if (li <= zero_thresh || li <= 0.0) continue;
    std::vector<real> w = detail::matvec(x, raw.decomposition.eigenvector(i));
    for (auto& v : w) v /= std::sqrt(li);
    const real direct = dot(w, mu.mu);
    const real via_gram = mean_score(li, raw.ones_overlaps[i], n);
    worst = std::max(worst, std::abs(direct - via_gram) / std::max(real{1}, std::abs(direct)));
  }
  const real tol = 1e-9;
  return {"mean_score_identity", worst, tol, worst <= tol, "ok"};
}

/// (lambda_i - lambda_c_j) w_i^T wc_j = n (w_i^T mu)(wc_j^T mu) over all
/// pairs of moment eigenvectors.
inline CheckResult check_lemma_coupling(const EigenPairSet& raw_moment,
                                        const EigenPairSet& centered_moment, const MeanInfo& mu,
                                        index_t n_samples) {
  const index_t d = raw_moment.size();
  const real n = static_cast<real>(n_samples);
  real resid = 0.0;
  for (index_t i = 0; i < d; ++i) {
    const auto wi = raw_moment.decomposition.eigenvector(i);
    const real wi_mu = dot(wi, mu.mu);
    for (index_t j = 0; j < d; ++j) {
      const auto wcj = centered_moment.decomposition.eigenvector(j);
      const real lhs = (raw_moment.lambda(i) - centered_moment.lambda(j)) * dot(wi, wcj);
      const real rhs = n * wi_mu * dot(wcj, mu.mu);
      resid = std::max(resid, std::abs(lhs - rhs));
    }
  }
  const real tol = 1e-8 * std::max(real{1}, raw_moment.lambda(0));
  return {"eigenpair_coupling", resid, tol, resid <= tol, "ok"};
}

/// d'_i = lambda_i - n (w_i^T mu)^2 in unsorted moment eigenpair order.
inline std::vector<real> dprime_values_moment(const EigenPairSet& raw_moment, const MeanInfo& mu,
                                              index_t n_samples) {
  const index_t d = raw_moment.size();
  std::vector<real> out(d);
  for (index_t i = 0; i < d; ++i) {
    const real wi_mu = dot(raw_moment.decomposition.eigenvector(i), mu.mu);
    out[i] = raw_moment.lambda(i) - static_cast<real>(n_samples) * wi_mu * wi_mu;
  }
  return out;
}

struct CovarianceBoundChecks {
  CheckResult cumulative;
  CheckResult equality;
  CheckResult top_gap;
  CheckResult innerproduct;
  CheckResult cosine;
};

/// The covariance-side bound suite: the majorization bound on the centered
/// spectrum, the gap bound lambda_1 - lambda_c_1 <= n (w_1^T mu)^2, and the
/// two top-eigenvector inequalities (skipped as degenerate when the top
/// eigenvalue is not simple or the mean vanishes).
inline CovarianceBoundChecks check_covariance_bounds(const EigenPairSet& raw_moment,
                                                     const EigenPairSet& centered_moment,
                                                     const MeanInfo& mu, index_t n_samples) {
  const index_t d = raw_moment.size();
  const real n = static_cast<real>(n_samples);
  const real lambda1 = raw_moment.lambda(0);
  const real lambda_c1 = centered_moment.lambda(0);
  CovarianceBoundChecks out;

  std::vector<real> lambda_c(d);
  for (index_t i = 0; i < d; ++i) lambda_c[i] = centered_moment.lambda(i);
  const auto entries =
      make_bound_entries(dprime_values_moment(raw_moment, mu, n_samples), lambda_c);
  out.cumulative = check_cumulative_bounds(entries, lambda1);
  out.cumulative.name = "covariance_dprime_bounds";
  out.equality = check_cumulative_equality(entries, entries.back().cumulative_lambda_c);
  out.equality.name = "covariance_dprime_equality";

  const auto w1 = raw_moment.decomposition.eigenvector(0);
  const real w1_mu = dot(w1, mu.mu);
  {
    const real margin = n * w1_mu * w1_mu - (lambda1 - lambda_c1);
    const real tol = 1e-8 * std::max(real{0}, lambda1);
    out.top_gap = {"covariance_top_gap_bound", margin, tol, margin >= -tol, "ok"};
  }

  const real mu_norm = norm(mu.mu);
  const bool simple_raw = d < 2 || (lambda1 - raw_moment.lambda(1)) > 1e-8 * lambda1;
  const bool simple_centered =
      d < 2 || (lambda_c1 - centered_moment.lambda(1)) > 1e-8 * std::max(lambda1, real{0});
  if (mu_norm <= 1e-12 || !simple_raw || !simple_centered) {
    out.innerproduct = {"top_eigvec_innerproduct_bound", 0.0, 0.0, true, "degenerate"};
    out.cosine = {"top_eigvec_cosine_bound", 0.0, 0.0, true, "degenerate"};
    return out;
  }

  const auto wc1 = centered_moment.decomposition.eigenvector(0);
  const real wc1_mu = dot(wc1, mu.mu);
  const real w1_wc1 = dot(w1, wc1);
  const real tol = 1e-8 * std::max(real{0}, lambda1);
  {
    const real margin = w1_wc1 * w1_wc1 - (wc1_mu * wc1_mu) / (mu_norm * mu_norm);
    out.innerproduct = {"top_eigvec_innerproduct_bound", margin, tol, margin >= -tol, "ok"};
  }
  {
    const real cos_w = w1_wc1 / (norm(w1) * norm(wc1));
    const real cos_mu = wc1_mu / (norm(wc1) * mu_norm);
    const real margin = cos_w * cos_w - cos_mu * cos_mu;
    out.cosine = {"top_eigvec_cosine_bound", margin, tol, margin >= -tol, "ok"};
  }
  return out;
}

/// Gram eigenvalues and n-scaled moment eigenvalues agree on the first
/// min(d, n) positions.
inline CheckResult check_gram_moment_consistency(const EigenPairSet& raw_gram,
                                                 const EigenPairSet& raw_moment) {
  const index_t m = std::min(raw_gram.size(), raw_moment.size());
  real resid = 0.0;
  for (index_t i = 0; i < m; ++i)
    resid = std::max(resid, std::abs(raw_gram.lambda(i) - raw_moment.lambda(i)));
  const real tol = 1e-8 * std::max(real{1}, raw_gram.lambda(0));
  return {"gram_moment_consistency", resid, tol, resid <= tol, "ok"};
}

struct WeightedChecks {
  CheckResult trace;
  CheckResult dprime_identity;
  CheckResult lower_bound;
  CheckResult eigvec_constraint;
};

/// Weighted-centering suite on K and Kc = (I - Pw)^T K (I - Pw):
/// tr(Kc) = tr(K) - 2n mu_w^T mu + n ||mu_w||^2, the lower bound on
/// lambda_c_1 built from the diagonal alpha_i^T Kc alpha_i =
/// lambda_i - 2 lambda_i (alpha_i^T w)(alpha_i^T 1) + (w^T K w)(alpha_i^T 1)^2,
/// and alpha_c_j^T w = 0 for non-zero eigenvalues.
inline WeightedChecks check_weighted_bounds(const GramMatrix& k, const WeightVector& omega) {
  const index_t n = k.size();
  detail::require(omega.size() == n, "check_weighted_bounds: weight length != n");
  const auto& w = omega.omega();
  const CenteringScheme scheme = CenteringScheme::weighted(omega);
  const GramMatrix kc = double_center(k, scheme);
  const EigenPairSet raw = analyze_gram(k, EigenSource::gram_raw);
  const EigenPairSet centered = analyze_gram(kc, EigenSource::gram_centered);
  const real lambda1 = raw.lambda(0);

  WeightedChecks out;
  {
    // omega^T K 1 = n mu_w^T mu and omega^T K omega = ||mu_w||^2
    const std::vector<real> kw = k.matrix.multiply(w);
    const real wk1 = sum(kw);
    const real wkw = dot(w, kw);
    const real expected = trace(k.matrix) - 2.0 * wk1 + static_cast<real>(n) * wkw;
    const real resid = std::abs(trace(kc.matrix) - expected);
    const real tol = 1e-9 * std::max(real{1}, std::abs(trace(k.matrix)));
    out.trace = {"weighted_trace_lemma", resid, tol, resid <= tol, "ok"};
  }
  {
    const std::vector<real> kw = k.matrix.multiply(w);
    const real wkw = dot(w, kw);
    real resid = 0.0;
    real best = -std::numeric_limits<real>::infinity();
    for (index_t i = 0; i < n; ++i) {
      const auto ai = raw.decomposition.eigenvector(i);
      const real a1 = raw.ones_overlaps[i];
      const real aw = dot(ai, w);
      const real li = raw.lambda(i);
      const real formula = li - 2.0 * li * aw * a1 + wkw * a1 * a1;
      resid = std::max(resid, std::abs(formula - kc.matrix.quadratic_form(ai, ai)));
      best = std::max(best, formula);
    }
    const real id_tol = 1e-9 * std::max(real{1}, lambda1);
    out.dprime_identity = {"weighted_dprime_identity", resid, id_tol, resid <= id_tol, "ok"};
    const real margin = centered.lambda(0) - best;
    const real tol = 1e-8 * std::max(real{1}, std::abs(lambda1));
    out.lower_bound = {"weighted_lower_bound", margin, tol, margin >= -tol, "ok"};
  }
  {
    const real zero_thresh = 1e-8 * std::max(real{0}, centered.lambda(0));
    real worst = 0.0;
    for (index_t j = 0; j < n; ++j)
      if (centered.decomposition.eigenvalues[j] > zero_thresh)
        worst = std::max(worst, std::abs(dot(centered.decomposition.eigenvector(j), w)));
    const real tol = 1e-7;
    out.eigvec_constraint = {"weighted_eigvec_constraint", worst, tol, worst <= tol, "ok"};
  }
  return out;
}

/// Covariance-side analogue of the weighted bound:
/// max_i lambda_i - 2n (w_i^T mu_w)(w_i^T mu) + n (w_i^T mu_w)^2 <= lambda_c_1,
/// with (lambda_i / n, w_i) the eigenpairs of C and Cc the four-term
/// weighted-centered covariance.
inline CheckResult check_weighted_covariance_bound(const Matrix& x, const WeightVector& omega) {
  const index_t n = x.cols();
  const MeanInfo mu = mean_vector(x);
  const MeanInfo mu_w = weighted_mean(x, omega.omega());
  const SymmetricMatrix c = moment_matrix(x);
  const SymmetricMatrix cc = center_covariance(c, mu, mu_w);
  const EigenPairSet raw = analyze_moment(c, EigenSource::moment_raw, n);
  const EigenPairSet centered = analyze_moment(cc, EigenSource::moment_centered, n);

  real best = -std::numeric_limits<real>::infinity();
  for (index_t i = 0; i < raw.size(); ++i) {
    const auto wi = raw.decomposition.eigenvector(i);
    const real wm = dot(wi, mu.mu);
    const real wmw = dot(wi, mu_w.mu);
    best = std::max(best, raw.lambda(i) - 2.0 * n * wmw * wm + n * wmw * wmw);
  }
  const real margin = centered.lambda(0) - best;
  const real tol = 1e-8 * std::max(real{1}, raw.lambda(0));
  return {"weighted_covariance_bound", margin, tol, margin >= -tol, "ok"};
}

/// Informational (not gated): cosine similarity between the non-centered
/// eigenvector alpha_{i+1} and the centered eigenvector alpha_c_i, the
/// one-order shift seen when the leading non-centered component tracks the
/// data mean.
inline std::vector<real> eigenvector_shift_cosines(const EigenPairSet& raw,
                                                   const EigenPairSet& centered,
                                                   index_t count = 5) {
  std::vector<real> out;
  const index_t n = raw.size();
  for (index_t i = 0; i + 1 < n && i < count; ++i)
    out.push_back(std::abs(
        dot(raw.decomposition.eigenvector(i + 1), centered.decomposition.eigenvector(i))));
  return out;
}

// checks for the conditionally positive definite (distance) matrix

/// tr(Delta) = 0, hence the eigenvalues sum to zero.
inline CheckResult check_delta_trace_zero(const GramMatrix& delta,
                                          const EigenPairSet& delta_pairs) {
  const real eig_sum =
      std::accumulate(delta_pairs.decomposition.eigenvalues.begin(),
                      delta_pairs.decomposition.eigenvalues.end(), real{0});
  const real resid = std::max(std::abs(trace(delta.matrix)), std::abs(eig_sum));
  const real tol = 1e-9 * std::max(real{1}, delta.matrix.frobenius_norm());
  return {"delta_trace_zero", resid, tol, resid <= tol, "ok"};
}

/// sigma_{j+2}(Delta) <= sigma_j(Kc) <= sigma_j(Delta) (separation with two
/// rank-deficient projections).
inline CheckResult check_separation(const EigenPairSet& delta_pairs,
                                    const EigenPairSet& centered_pairs) {
  auto singular = [](const EigenPairSet& p) {
    std::vector<real> s(p.size());
    for (index_t i = 0; i < p.size(); ++i) s[i] = std::abs(p.decomposition.eigenvalues[i]);
    std::sort(s.begin(), s.end(), std::greater<real>());
    return s;
  };
  const std::vector<real> sd = singular(delta_pairs);
  const std::vector<real> sk = singular(centered_pairs);
  const index_t n = sd.size();
  real margin = std::numeric_limits<real>::infinity();
  for (index_t j = 0; j < n; ++j) {
    margin = std::min(margin, sd[j] - sk[j]);
    if (j + 2 < n) margin = std::min(margin, sk[j] - sd[j + 2]);
  }
  const real tol = 1e-8 * std::max(real{0}, sd.empty() ? 0.0 : sd[0]);
  return {"separation_theorem", margin, tol, margin >= -tol, "ok"};
}

/// max_i lambda_i + ((1^T Delta 1)/n^2 - (2/n) lambda_i)(alpha_i^T 1)^2
/// <= lambda_c_1, the majorization bound specialized to Delta.
inline CheckResult check_delta_lower_bound(const GramMatrix& delta,
                                           const EigenPairSet& delta_pairs, real lambda_c1) {
  const real n = static_cast<real>(delta.size());
  const real grand = delta.matrix.grand_sum();
  real best = -std::numeric_limits<real>::infinity();
  for (index_t i = 0; i < delta_pairs.size(); ++i) {
    const real li = delta_pairs.lambda(i);
    const real oi = delta_pairs.ones_overlaps[i];
    best = std::max(best, li + (grand / (n * n) - 2.0 / n * li) * oi * oi);
  }
  const real margin = lambda_c1 - best;
  const real tol = 1e-8 * std::max(real{0}, std::abs(delta_pairs.lambda(0)));
  return {"delta_lower_bound", margin, tol, margin >= -tol, "ok"};
}

// ---------------------------------------------------------------------------
// full report
// ---------------------------------------------------------------------------

struct ReportOptions {
  std::string dataset_id = "dataset";
  std::map<std::string, real> tolerance_overrides;
};

/// Runs every check applicable to the given kernel and centering scheme and
/// assembles the machine-checkable report. Covariance-side checks are only
/// run for the linear kernel, where the d-by-d moment matrices are explicit.
inline SpectralReport full_report(const Matrix& x, const KernelSpec& kspec,
                                  const CenteringScheme& scheme, const ReportOptions& opts = {}) {
  SpectralReport report;
  report.dataset_id = opts.dataset_id;
  report.kernel = kspec;
  report.n = x.cols();

  const GramMatrix k = gram_matrix(x, kspec);
  const GramMatrix kc = double_center(k, scheme);
  const EigenPairSet raw = analyze_gram(k, EigenSource::gram_raw);
  report.eigenvalues_raw = raw.decomposition.eigenvalues;

  auto apply_override = [&](CheckResult c, bool is_residual) {
    auto it = opts.tolerance_overrides.find(c.name);
    if (it != opts.tolerance_overrides.end()) {
      c.tolerance = it->second;
      c.passed = is_residual ? c.margin <= c.tolerance : c.margin >= -c.tolerance;
    }
    report.checks.push_back(c);
  };

  if (scheme.variant() == CenteringVariant::none) {
    apply_override(check_norm_mean_two_formulas(k, raw), true);
    apply_override(check_ones_completeness(raw), true);
    apply_override(check_courant_fischer(k, raw), false);
    apply_override(
        check_schur_horn_matrix(k.matrix, raw.decomposition.eigenvalues, "schur_horn_raw"),
        false);
    report.eigenvalues_centered = report.eigenvalues_raw;
    return report;
  }

  const EigenPairSet centered = analyze_gram(kc, EigenSource::gram_centered);
  report.eigenvalues_centered = centered.decomposition.eigenvalues;

  if (scheme.variant() == CenteringVariant::weighted) {
    const WeightedChecks wc = check_weighted_bounds(k, WeightVector(scheme.omega()));
    apply_override(wc.trace, true);
    apply_override(wc.dprime_identity, true);
    apply_override(wc.lower_bound, false);
    apply_override(wc.eigvec_constraint, true);
    if (kspec.kind == KernelKind::linear)
      apply_override(check_weighted_covariance_bound(x, WeightVector(scheme.omega())), false);
    apply_override(check_box_constraint(centered), true);
    apply_override(check_lemma_same_eigs(raw, kc), true);
    apply_override(check_ones_completeness(raw), true);
    apply_override(
        check_schur_horn_matrix(k.matrix, raw.decomposition.eigenvalues, "schur_horn_raw"),
        false);
    apply_override(check_schur_horn_matrix(kc.matrix, centered.decomposition.eigenvalues,
                                           "schur_horn_centered"),
                   false);
    return report;
  }

  // mean centering
  const real mu_norm_sq = mean_norm_sq_from_gram(k);

  if (k.kind == GramKind::conditionally_pd) {
    apply_override(check_trace_lemma(k, kc, mu_norm_sq), true);
    apply_override(check_delta_trace_zero(k, raw), true);
    apply_override(check_separation(raw, centered), false);
    apply_override(check_delta_lower_bound(k, raw, centered.lambda(0)), false);
    apply_override(check_eigvec_sum_zero(centered), true);
    apply_override(check_box_constraint(centered), true);
    apply_override(check_lemma_same_eigs(raw, kc), true);
    apply_override(check_ones_completeness(raw), true);
    return report;
  }

  apply_override(check_trace_lemma(k, kc, mu_norm_sq), true);
  apply_override(check_norm_mean_two_formulas(k, raw), true);
  apply_override(check_ones_completeness(raw), true);
  apply_override(check_courant_fischer(k, raw), false);
  apply_override(check_interlacing(raw, centered), false);
  if (trace(k.matrix) > 0.0)  // not applicable at zero trace
    apply_override(check_proportion_interlacing(raw, centered), false);
  apply_override(check_dprime_diagonal_identity(raw, mu_norm_sq, kc), true);
  const auto entries =
      schur_horn_dprime_gram(raw, mu_norm_sq, centered.decomposition.eigenvalues);
  apply_override(check_cumulative_bounds(entries, raw.lambda(0)), false);
  apply_override(check_cumulative_equality(entries, trace(k.matrix)), true);
  apply_override(check_eigvec_sum_zero(centered), true);
  apply_override(check_box_constraint(centered), true);
  apply_override(check_lemma_same_eigs(raw, kc), true);
  apply_override(
      check_schur_horn_matrix(k.matrix, raw.decomposition.eigenvalues, "schur_horn_raw"), false);
  apply_override(check_schur_horn_matrix(kc.matrix, centered.decomposition.eigenvalues,
                                         "schur_horn_centered"),
                 false);

  report.shift_cosines = eigenvector_shift_cosines(raw, centered);

  // proportions
  const real tr_k = trace(k.matrix);
  const real tr_kc = trace(kc.matrix);
  if (tr_k > 0.0) {
    report.has_proportions = true;
    report.gamma = tr_kc / tr_k;
    report.pi.resize(report.n);
    report.pi_c.resize(report.n);
    for (index_t i = 0; i < report.n; ++i) {
      report.pi[i] = report.eigenvalues_raw[i] / tr_k;
      report.pi_c[i] = tr_kc > 0.0 ? report.eigenvalues_centered[i] / tr_kc : 0.0;
    }
  }

  if (kspec.kind == KernelKind::linear) {
    const MeanInfo mu = mean_vector(x);
    const SymmetricMatrix c = moment_matrix(x);
    const SymmetricMatrix cc = center_covariance(c, mu);
    const EigenPairSet raw_moment = analyze_moment(c, EigenSource::moment_raw, x.cols());
    const EigenPairSet centered_moment =
        analyze_moment(cc, EigenSource::moment_centered, x.cols());

    apply_override(check_gram_moment_consistency(raw, raw_moment), true);
    apply_override(check_mean_score_identity(x, raw, mu), true);
    apply_override(check_lemma_coupling(raw_moment, centered_moment, mu, x.cols()), true);
    const CovarianceBoundChecks cb =
        check_covariance_bounds(raw_moment, centered_moment, mu, x.cols());
    apply_override(cb.cumulative, false);
    apply_override(cb.equality, true);
    apply_override(cb.top_gap, false);
    apply_override(cb.innerproduct, false);
    apply_override(cb.cosine, false);
  }

  return report;
}

}  // namespace gramspec
