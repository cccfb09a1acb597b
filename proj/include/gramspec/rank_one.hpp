#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gramspec/eigen.hpp"
#include "gramspec/matrix.hpp"
#include "gramspec/spectral.hpp"

namespace gramspec {

/// C_{t+1} = (1 - nu) C_t + nu v v^T with nu strictly inside (0, 1).
inline SymmetricMatrix rank_one_step(const SymmetricMatrix& c, const std::vector<real>& v,
                                     real nu) {
  detail::require(nu > 0.0 && nu < 1.0, "rank_one_step: nu must be in (0, 1)");
  detail::require(v.size() == c.size(), "rank_one_step: dimension mismatch");
  SymmetricMatrix out(c.size());
  for (index_t i = 0; i < c.size(); ++i)
    for (index_t j = i; j < c.size(); ++j)
      out.set(i, j, (1.0 - nu) * c(i, j) + nu * v[i] * v[j]);
  return out;
}

/// One analyzed update step. Eigenvalues follow the moment convention
/// C w_i = (1/n) lambda_i w_i with n the matrix dimension, so lambda values
/// are n times the matrix eigenvalues.
struct RankOneStepReport {
  real nu = 0.0;
  std::vector<real> v;
  EigenDecomposition before;
  EigenDecomposition after;
  CheckResult trace_law;    // residual of the eigenvalue-sum update rule
  CheckResult lower_bound;  // margin of the bound on lambda_{1,t+1}
  CheckResult coupling;     // residual of the eigenpair coupling identity
  CheckResult cosine_bound; // margin of the angle bound on w_{1,t+1}
};

struct RankOneTrace {
  std::vector<RankOneStepReport> steps;

  bool all_passed() const {
    for (const auto& s : steps)
      if (!(s.trace_law.passed && s.lower_bound.passed && s.coupling.passed &&
            s.cosine_bound.passed))
        return false;
    return true;
  }
};

/// Evaluates the update-rule relations on one step:
///   sum lambda_{i,t+1} = (1-nu) sum lambda_{i,t} + n nu ||v||^2
///   max_i (1-nu) lambda_{i,t} + n nu (w_{i,t}^T v)^2 <= lambda_{1,t+1}
///   (lambda_{j,t+1} - (1-nu) lambda_{i,t}) w_{i,t}^T w_{j,t+1}
///       = n nu (w_{i,t}^T v)(w_{j,t+1}^T v)
///   cos(w_{i,t}, w_{1,t+1})^2 <= cos(w_{1,t+1}, v)^2 / cos(w_{i,t}, v)^2,
/// the cosine bound only where |w_{i,t}^T v| > 1e-10.
inline RankOneStepReport rank_one_analyze(const SymmetricMatrix& c, const std::vector<real>& v,
                                          real nu) {
  const SymmetricMatrix next = rank_one_step(c, v, nu);
  const index_t d = c.size();
  const real n = static_cast<real>(d);

  RankOneStepReport rep;
  rep.nu = nu;
  rep.v = v;
  rep.before = sym_eigen(c);
  rep.before.source_scale = 1.0 / n;
  rep.after = sym_eigen(next);
  rep.after.source_scale = 1.0 / n;

  auto lam_before = [&](index_t i) { return rep.before.gram_scale_eigenvalue(i); };
  auto lam_after = [&](index_t i) { return rep.after.gram_scale_eigenvalue(i); };
  const real scale = std::max({real{1}, std::abs(lam_before(0)), std::abs(lam_after(0))});

  {
    real sum_before = 0.0, sum_after = 0.0;
    for (index_t i = 0; i < d; ++i) {
      sum_before += lam_before(i);
      sum_after += lam_after(i);
    }
    const real expected = (1.0 - nu) * sum_before + n * nu * dot(v, v);
    const real resid = std::abs(sum_after - expected);
    const real tol = 1e-8 * scale;
    rep.trace_law = {"rank_one_trace_law", resid, tol, resid <= tol, "ok"};
  }
  {
    real best = -std::numeric_limits<real>::infinity();
    for (index_t i = 0; i < d; ++i) {
      const real wv = dot(rep.before.eigenvector(i), v);
      best = std::max(best, (1.0 - nu) * lam_before(i) + n * nu * wv * wv);
    }
    const real margin = lam_after(0) - best;
    const real tol = 1e-8 * scale;
    rep.lower_bound = {"rank_one_lower_bound", margin, tol, margin >= -tol, "ok"};
  }
  {
    real resid = 0.0;
    for (index_t i = 0; i < d; ++i) {
      const auto wi = rep.before.eigenvector(i);
      const real wiv = dot(wi, v);
      for (index_t j = 0; j < d; ++j) {
        const auto wj = rep.after.eigenvector(j);
        const real lhs = (lam_after(j) - (1.0 - nu) * lam_before(i)) * dot(wi, wj);
        const real rhs = n * nu * wiv * dot(wj, v);
        resid = std::max(resid, std::abs(lhs - rhs));
      }
    }
    const real tol = 1e-8 * scale;
    rep.coupling = {"rank_one_coupling", resid, tol, resid <= tol, "ok"};
  }
  {
    const auto w1_next = rep.after.eigenvector(0);
    const real w1v = dot(w1_next, v);
    real margin = std::numeric_limits<real>::infinity();
    bool any = false;
    for (index_t i = 0; i < d; ++i) {
      const real wiv = dot(rep.before.eigenvector(i), v);
      if (std::abs(wiv) <= 1e-10) continue;  // division guard
      any = true;
      const real lhs = dot(rep.before.eigenvector(i), w1_next);
      margin = std::min(margin, (w1v * w1v) / (wiv * wiv) - lhs * lhs);
    }
    const real tol = 1e-8 * scale;
    if (!any)
      rep.cosine_bound = {"rank_one_cosine_bound", 0.0, tol, true, "degenerate"};
    else
      rep.cosine_bound = {"rank_one_cosine_bound", margin, tol, margin >= -tol, "ok"};
  }
  return rep;
}

}  // namespace gramspec
