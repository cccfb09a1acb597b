#include <catch2/catch.hpp>

#include <cmath>

#include "gramspec/centering.hpp"
#include "gramspec/kernels.hpp"
#include "gramspec/spectral.hpp"
#include "oracles.hpp"

using namespace gramspec;

namespace {

Matrix zero_mean_data(SplitMix64& rng, index_t d, index_t n) {
  Matrix x = oracle::random_data(rng, d, n);
  const auto mu = oracle::column_mean(x);
  for (index_t i = 0; i < d; ++i)
    for (index_t j = 0; j < n; ++j) x(i, j) -= mu[i];
  return x;
}

}  // namespace

TEST_CASE("trace lemma") {
  SECTION("identity gram, n = 2: tr(Kc) = 1") {
    Matrix x(2, 2, {1.0, 0.0, 0.0, 1.0});
    const GramMatrix k = gram_matrix(x, KernelSpec::linear());
    const GramMatrix kc = double_center(k, CenteringScheme::mean());
    CHECK(trace(kc.matrix) == Approx(1.0));
    const CheckResult r = check_trace_lemma(k, kc, mean_norm_sq_from_gram(k));
    CHECK(r.passed);
  }
  SECTION("zero-mean data keeps the trace") {
    SplitMix64 rng(2);
    const Matrix x = zero_mean_data(rng, 3, 6);
    const GramMatrix k = gram_matrix(x, KernelSpec::linear());
    const GramMatrix kc = double_center(k, CenteringScheme::mean());
    CHECK(trace(kc.matrix) == Approx(trace(k.matrix)).epsilon(1e-12));
  }
}

TEST_CASE("interlacing on a rank-one gram matrix") {
  Matrix x(1, 4, {1.0, 2.0, -1.0, 0.5});
  const GramMatrix k = gram_matrix(x, KernelSpec::linear());
  const GramMatrix kc = double_center(k, CenteringScheme::mean());
  const EigenPairSet raw = analyze_gram(k, EigenSource::gram_raw);
  const EigenPairSet centered = analyze_gram(kc, EigenSource::gram_centered);
  CHECK(raw.lambda(0) == Approx(1.0 + 4.0 + 1.0 + 0.25));
  CHECK(raw.lambda(1) == Approx(0.0).margin(1e-10));
  CHECK(centered.lambda(0) <= raw.lambda(0) + 1e-10);
  CHECK(check_interlacing(raw, centered).passed);
}

TEST_CASE("proportion interlacing reduces to plain interlacing at zero mean") {
  SplitMix64 rng(3);
  const Matrix x = zero_mean_data(rng, 2, 5);
  const GramMatrix k = gram_matrix(x, KernelSpec::linear());
  const GramMatrix kc = double_center(k, CenteringScheme::mean());
  const EigenPairSet raw = analyze_gram(k, EigenSource::gram_raw);
  const EigenPairSet centered = analyze_gram(kc, EigenSource::gram_centered);
  const real gamma = trace(kc.matrix) / trace(k.matrix);
  CHECK(gamma == Approx(1.0).epsilon(1e-12));
  CHECK(check_proportion_interlacing(raw, centered).passed);
}

TEST_CASE("d' reduces to the eigenvalues on zero-mean data") {
  SplitMix64 rng(5);
  const Matrix x = zero_mean_data(rng, 3, 6);
  const GramMatrix k = gram_matrix(x, KernelSpec::linear());
  const real mu2 = mean_norm_sq_from_gram(k);
  CHECK(mu2 <= 1e-12);
  const EigenPairSet raw = analyze_gram(k, EigenSource::gram_raw);
  const auto d = dprime_values_gram(raw, mu2);
  for (index_t i = 0; i < raw.size(); ++i) {
    if (raw.lambda(i) <= 1e-8 * raw.lambda(0)) continue;
    // K 1 = 0 forces alpha_i^T 1 = 0 for nonzero eigenvalues
    CHECK(std::abs(d[i] - raw.lambda(i)) <= 1e-9 * std::max(1.0, raw.lambda(0)));
  }
}

TEST_CASE("d' diagonal identity and cumulative bounds on random data") {
  SplitMix64 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix x = oracle::random_data(rng, 2, 10);
    const GramMatrix k = gram_matrix(x, KernelSpec::gaussian(0.9));
    const GramMatrix kc = double_center(k, CenteringScheme::mean());
    const EigenPairSet raw = analyze_gram(k, EigenSource::gram_raw);
    const EigenPairSet centered = analyze_gram(kc, EigenSource::gram_centered);
    const real mu2 = mean_norm_sq_from_gram(k);

    CHECK(check_dprime_diagonal_identity(raw, mu2, kc).passed);
    const auto entries = schur_horn_dprime_gram(raw, mu2, centered.decomposition.eigenvalues);
    CHECK(check_cumulative_bounds(entries, raw.lambda(0)).passed);
    CHECK(check_cumulative_equality(entries, trace(k.matrix)).passed);
    // d' values are non-increasing after sorting
    for (index_t t = 0; t + 1 < entries.size(); ++t)
      CHECK(entries[t].d_prime >= entries[t + 1].d_prime);
  }
}

TEST_CASE("single-sample bound table is trivial") {
  Matrix x(2, 1, {1.0, 1.0});
  const GramMatrix k = gram_matrix(x, KernelSpec::linear());
  const GramMatrix kc = double_center(k, CenteringScheme::mean());
  const EigenPairSet raw = analyze_gram(k, EigenSource::gram_raw);
  const EigenPairSet centered = analyze_gram(kc, EigenSource::gram_centered);
  const auto entries = schur_horn_dprime_gram(raw, mean_norm_sq_from_gram(k),
                                              centered.decomposition.eigenvalues);
  CHECK(entries.size() == 1);
  CHECK(entries[0].cumulative_d == Approx(0.0).margin(1e-12));
  CHECK(entries[0].cumulative_lambda_c == Approx(0.0).margin(1e-12));
}

TEST_CASE("eigenvector constraints of the centered gram matrix") {
  SplitMix64 rng(11);
  const Matrix x = oracle::random_data(rng, 2, 8);
  const GramMatrix kc =
      double_center(gram_matrix(x, KernelSpec::gaussian(0.6)), CenteringScheme::mean());
  const EigenPairSet centered = analyze_gram(kc, EigenSource::gram_centered);

  CHECK(check_eigvec_sum_zero(centered).passed);
  CHECK(check_box_constraint(centered).passed);

  // converse: 1/sqrt(n) is an eigenvector with eigenvalue 0
  const auto k1 = kc.matrix.multiply(std::vector<real>(8, 1.0));
  for (real v : k1) CHECK(std::abs(v) <= 1e-10 * std::max(1.0, kc.matrix.frobenius_norm()));

  // Cauchy-Schwarz cap on the overlaps
  for (real o : centered.ones_overlaps) CHECK(o * o <= 8.0 + 1e-9);
}

TEST_CASE("box constraint at n = 1") {
  GramMatrix k;
  k.matrix = SymmetricMatrix::diagonal({2.0});
  const EigenPairSet p = analyze_gram(k, EigenSource::gram_raw);
  CHECK(std::abs(p.decomposition.eigenvectors(0, 0)) == Approx(1.0));
  CHECK(check_box_constraint(p).passed);
}

TEST_CASE("rotated centered gram keeps its eigenvalues") {
  SplitMix64 rng(13);
  const Matrix x = oracle::random_data(rng, 3, 8);
  const GramMatrix k = gram_matrix(x, KernelSpec::linear());
  const GramMatrix kc = double_center(k, CenteringScheme::mean());
  const EigenPairSet raw = analyze_gram(k, EigenSource::gram_raw);
  CHECK(check_lemma_same_eigs(raw, kc).passed);
}

TEST_CASE("mean score identity") {
  SECTION("rejects non-positive eigenvalues") {
    CHECK_THROWS_AS(mean_score(0.0, 1.0, 3), std::invalid_argument);
  }
  SECTION("zero-mean data scores zero") {
    SplitMix64 rng(17);
    const Matrix x = zero_mean_data(rng, 2, 5);
    const GramMatrix k = gram_matrix(x, KernelSpec::linear());
    const EigenPairSet raw = analyze_gram(k, EigenSource::gram_raw);
    const MeanInfo mu = mean_vector(x);
    for (index_t i = 0; i < raw.size(); ++i) {
      if (raw.lambda(i) <= 1e-8 * raw.lambda(0)) continue;
      CHECK(std::abs(mean_score(raw.lambda(i), raw.ones_overlaps[i], 5)) <= 1e-9);
    }
    CHECK(check_mean_score_identity(x, raw, mu).passed);
  }
  SECTION("three-column example, both routes agree") {
    Matrix x(2, 3, {1.0, 0.0, 2.0, 0.0, 1.0, 2.0});
    const GramMatrix k = gram_matrix(x, KernelSpec::linear());
    const EigenPairSet raw = analyze_gram(k, EigenSource::gram_raw);
    CHECK(check_mean_score_identity(x, raw, mean_vector(x)).passed);
  }
}

TEST_CASE("coupling identity with a vanishing mean") {
  SplitMix64 rng(19);
  const Matrix x = zero_mean_data(rng, 3, 7);
  const MeanInfo mu = mean_vector(x);
  const SymmetricMatrix c = moment_matrix(x);
  const SymmetricMatrix cc = center_covariance(c, mu);
  const EigenPairSet raw = analyze_moment(c, EigenSource::moment_raw, 7);
  const EigenPairSet centered = analyze_moment(cc, EigenSource::moment_centered, 7);
  CHECK(check_lemma_coupling(raw, centered, mu, 7).passed);
}

TEST_CASE("covariance bounds with mu = 0 degenerate as expected") {
  SplitMix64 rng(23);
  const Matrix x = zero_mean_data(rng, 3, 8);
  const MeanInfo mu = mean_vector(x);
  const EigenPairSet raw = analyze_moment(moment_matrix(x), EigenSource::moment_raw, 8);
  const EigenPairSet centered =
      analyze_moment(center_covariance(moment_matrix(x), mu), EigenSource::moment_centered, 8);
  const CovarianceBoundChecks cb = check_covariance_bounds(raw, centered, mu, 8);
  CHECK(cb.cumulative.passed);
  CHECK(cb.equality.passed);
  // lambda_1 = lambda_c_1, so the gap bound holds with margin ~ 0
  CHECK(cb.top_gap.passed);
  CHECK(std::abs(raw.lambda(0) - centered.lambda(0)) <= 1e-9 * std::max(1.0, raw.lambda(0)));
  CHECK(cb.innerproduct.status == "degenerate");
  CHECK(cb.cosine.status == "degenerate");
}

TEST_CASE("covariance bound suite on random data") {
  SplitMix64 rng(29);
  for (int rep = 0; rep < 10; ++rep) {
    const index_t n = 12;
    const Matrix x = oracle::random_data(rng, 3, n);
    const MeanInfo mu = mean_vector(x);
    const SymmetricMatrix c = moment_matrix(x);
    const SymmetricMatrix cc = center_covariance(c, mu);
    const EigenPairSet raw = analyze_moment(c, EigenSource::moment_raw, n);
    const EigenPairSet centered = analyze_moment(cc, EigenSource::moment_centered, n);
    CHECK(check_lemma_coupling(raw, centered, mu, n).passed);
    const CovarianceBoundChecks cb = check_covariance_bounds(raw, centered, mu, n);
    CHECK(cb.cumulative.passed);
    CHECK(cb.equality.passed);
    CHECK(cb.top_gap.passed);
    CHECK(cb.innerproduct.passed);
    CHECK(cb.cosine.passed);
  }
}

TEST_CASE("weighted bounds") {
  SECTION("uniform weights reduce to the mean-centered bound") {
    SplitMix64 rng(31);
    const Matrix x = oracle::random_data(rng, 2, 6);
    const GramMatrix k = gram_matrix(x, KernelSpec::linear());
    const WeightedChecks wc = check_weighted_bounds(k, WeightVector::uniform(6));
    CHECK(wc.trace.passed);
    CHECK(wc.dprime_identity.passed);
    CHECK(wc.lower_bound.passed);
    CHECK(wc.eigvec_constraint.passed);

    const GramMatrix kc = double_center(k, CenteringScheme::mean());
    const EigenPairSet raw = analyze_gram(k, EigenSource::gram_raw);
    const EigenPairSet centered = analyze_gram(kc, EigenSource::gram_centered);
    const auto d = dprime_values_gram(raw, mean_norm_sq_from_gram(k));
    real best = d[0];
    for (real v : d) best = std::max(best, v);
    // same bound value as the mean-centered d' maximum
    CHECK(std::abs(wc.lower_bound.margin - (centered.lambda(0) - best)) <=
          1e-10 * std::max(1.0, raw.lambda(0)));
  }
  SECTION("all weight on the first sample kills its eigenvector entries") {
    Matrix x(2, 3, {1.0, 0.0, 2.0, 0.0, 1.0, 2.0});
    const GramMatrix k = gram_matrix(x, KernelSpec::linear());
    std::vector<real> w{1.0, 0.0, 0.0};
    const WeightedChecks wc = check_weighted_bounds(k, WeightVector(w));
    CHECK(wc.eigvec_constraint.passed);
    const GramMatrix kc = double_center(k, CenteringScheme::weighted(WeightVector(w)));
    const EigenPairSet centered = analyze_gram(kc, EigenSource::gram_centered);
    for (index_t j = 0; j < 3; ++j)
      if (centered.decomposition.eigenvalues[j] > 1e-8 * centered.lambda(0))
        CHECK(std::abs(centered.decomposition.eigenvectors(0, j)) <= 1e-9);
  }
  SECTION("weighted covariance-side bound on random data") {
    SplitMix64 rng(67);
    for (int rep = 0; rep < 10; ++rep) {
      const index_t n = 8;
      const Matrix x = oracle::random_data(rng, 3, n);
      std::vector<real> w(n);
      real s = 0.0;
      for (auto& v : w) {
        v = rng.next_unit();
        s += v;
      }
      for (auto& v : w) v /= s;
      CHECK(check_weighted_covariance_bound(x, WeightVector(w)).passed);
    }
  }
  SECTION("random positive weights on random data") {
    SplitMix64 rng(37);
    for (int rep = 0; rep < 10; ++rep) {
      const index_t n = 7;
      const Matrix x = oracle::random_data(rng, 3, n);
      std::vector<real> w(n);
      real s = 0.0;
      for (auto& v : w) {
        v = rng.next_unit();
        s += v;
      }
      for (auto& v : w) v /= s;
      const GramMatrix k = gram_matrix(x, KernelSpec::gaussian(1.1));
      const WeightedChecks wc = check_weighted_bounds(k, WeightVector(w));
      CHECK(wc.trace.passed);
      CHECK(wc.dprime_identity.passed);
      CHECK(wc.lower_bound.passed);
      CHECK(wc.eigvec_constraint.passed);
    }
  }
}

TEST_CASE("full report on the smallest nontrivial dataset") {
  Matrix x(1, 2, {0.0, 1.0});
  const SpectralReport rep = full_report(x, KernelSpec::linear(), CenteringScheme::mean());
  CHECK(rep.all_passed());
  CHECK(rep.n == 2);
}

TEST_CASE("full report: gaussian kernel skips the covariance side") {
  SplitMix64 rng(41);
  const Matrix x = oracle::random_data(rng, 2, 20);
  const SpectralReport rep = full_report(x, KernelSpec::gaussian(0.5), CenteringScheme::mean());
  CHECK(rep.all_passed());
  CHECK(rep.find("interlacing") != nullptr);
  CHECK(rep.find("eigenpair_coupling") == nullptr);
  CHECK(rep.find("mean_score_identity") == nullptr);
}

TEST_CASE("full report: linear kernel runs the covariance side") {
  SplitMix64 rng(43);
  const Matrix x = oracle::random_data(rng, 3, 15);
  const SpectralReport rep = full_report(x, KernelSpec::linear(), CenteringScheme::mean());
  CHECK(rep.all_passed());
  CHECK(rep.find("eigenpair_coupling") != nullptr);
  CHECK(rep.find("covariance_top_gap_bound") != nullptr);
  CHECK(rep.has_proportions);
  CHECK(rep.gamma > 0.0);
  CHECK(rep.gamma <= 1.0 + 1e-12);
}

TEST_CASE("full report honors tolerance overrides") {
  Matrix x(2, 3, {1.0, 0.0, 2.0, 0.0, 1.0, 2.0});
  ReportOptions opts;
  opts.tolerance_overrides["trace_lemma"] = -1.0;  // impossible to satisfy
  const SpectralReport rep = full_report(x, KernelSpec::linear(), CenteringScheme::mean(), opts);
  CHECK_FALSE(rep.all_passed());
  CHECK_FALSE(rep.find("trace_lemma")->passed);
}

TEST_CASE("full report for weighted centering") {
  SplitMix64 rng(47);
  const Matrix x = oracle::random_data(rng, 2, 6);
  std::vector<real> w(6, 1.0 / 6.0);
  const SpectralReport rep = full_report(x, KernelSpec::linear(),
                                         CenteringScheme::weighted(WeightVector(w)));
  CHECK(rep.all_passed());
  CHECK(rep.find("weighted_lower_bound") != nullptr);
  CHECK(rep.find("interlacing") == nullptr);
}

TEST_CASE("full report without centering runs the raw-side checks only") {
  SplitMix64 rng(53);
  const Matrix x = oracle::random_data(rng, 2, 6);
  const SpectralReport rep = full_report(x, KernelSpec::linear(), CenteringScheme::none());
  CHECK(rep.all_passed());
  CHECK(rep.find("courant_fischer_bound") != nullptr);
  CHECK(rep.find("interlacing") == nullptr);
}

TEST_CASE("full report for the distance kernel swaps in the separation suite") {
  SplitMix64 rng(59);
  const Matrix x = oracle::random_data(rng, 2, 9);
  const SpectralReport rep =
      full_report(x, KernelSpec::negative_half_sqdist(), CenteringScheme::mean());
  CHECK(rep.all_passed());
  CHECK(rep.find("separation_theorem") != nullptr);
  CHECK(rep.find("delta_lower_bound") != nullptr);
  CHECK(rep.find("delta_trace_zero") != nullptr);
  CHECK(rep.find("interlacing") == nullptr);
}

TEST_CASE("report margins hold across kernels on 50 random datasets") {
  SplitMix64 rng(61);
  const KernelSpec kernels[] = {KernelSpec::linear(), KernelSpec::gaussian(0.8),
                                KernelSpec::polynomial(1.0, 2)};
  for (int rep = 0; rep < 50; ++rep) {
    const index_t d = 2 + rep % 3;
    const index_t n = 5 + rep % 14;
    const Matrix x = oracle::random_data(rng, d, n);
    for (const auto& ks : kernels) {
      const SpectralReport r = full_report(x, ks, CenteringScheme::mean());
      INFO("kernel " << ks.name() << " rep " << rep);
      CHECK(r.all_passed());
    }
  }
}

TEST_CASE("full report tolerates an all-zero data matrix") {
  const Matrix x(2, 3);
  const SpectralReport rep = full_report(x, KernelSpec::linear(), CenteringScheme::mean());
  CHECK(rep.all_passed());
  CHECK(rep.find("proportion_interlacing") == nullptr);  // zero trace, not applicable
  CHECK_FALSE(rep.has_proportions);
}
