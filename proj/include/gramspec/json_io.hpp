#pragma once

#include <json.hpp>

#include "gramspec/keca.hpp"
#include "gramspec/kpca.hpp"
#include "gramspec/mds.hpp"
#include "gramspec/spectral.hpp"

namespace gramspec {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const CheckResult& c) {
  return ordered_json{{"name", c.name},
                      {"margin", c.margin},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed},
                      {"status", c.status}};
}

inline ordered_json to_json(const SpectralReport& r) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  ordered_json j{{"dataset", r.dataset_id},
                 {"kernel", r.kernel.name()},
                 {"n", r.n},
                 {"checks", checks},
                 {"eigenvalues",
                  {{"raw", r.eigenvalues_raw}, {"centered", r.eigenvalues_centered}}}};
  ordered_json props{{"pi", r.pi}, {"pi_c", r.pi_c}};
  if (r.has_proportions)
    props["gamma"] = r.gamma;
  else
    props["gamma"] = nullptr;
  j["proportions"] = props;
  j["shift_cosines"] = r.shift_cosines;
  j["all_passed"] = r.all_passed();
  return j;
}

inline ordered_json to_json(const ComponentSet& m) {
  ordered_json coeffs = ordered_json::array();
  for (index_t i = 0; i < m.coefficients.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (index_t j = 0; j < m.coefficients.cols(); ++j) row.push_back(m.coefficients(i, j));
    coeffs.push_back(row);
  }
  const char* centering = m.centering == CenteringVariant::none
                              ? "none"
                              : (m.centering == CenteringVariant::mean ? "mean" : "weighted");
  return ordered_json{
      {"type", "kpca_model"},
      {"n", m.n},
      {"m", m.components()},
      {"normalization", m.normalization == Normalization::variance_preserving
                            ? "variance_preserving"
                            : "unit_variance"},
      {"centering", centering},
      {"eigenvalues", m.eigenvalues},
      {"coefficients", coeffs},
      {"weights", m.weights},
      {"row_stats", m.row_stats},
      {"grand", m.grand}};
}

inline ordered_json to_json(const Embedding& e) {
  ordered_json pts = ordered_json::array();
  for (index_t i = 0; i < e.points.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (index_t j = 0; j < e.points.cols(); ++j) row.push_back(e.points(i, j));
    pts.push_back(row);
  }
  return ordered_json{{"type", "mds_embedding"},
                      {"m", e.dims()},
                      {"n", e.samples()},
                      {"points", pts},
                      {"retained_eigenvalues", e.retained_eigenvalues},
                      {"discarded_negative_mass", e.discarded_negative_mass},
                      {"clamped", e.clamped}};
}

inline ordered_json to_json(const EntropyDecomposition& d) {
  return ordered_json{{"type", "entropy_decomposition"},
                      {"terms", d.terms},
                      {"total", d.total},
                      {"selected", d.selected},
                      {"near_zero_total", d.near_zero_total}};
}

}  // namespace gramspec
