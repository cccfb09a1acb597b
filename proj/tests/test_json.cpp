#include <catch2/catch.hpp>

#include "gramspec/datasets.hpp"
#include "gramspec/json_io.hpp"
#include "oracles.hpp"

using namespace gramspec;

TEST_CASE("spectral report serializes with a stable schema") {
  SplitMix64 rng(3);
  const Matrix x = oracle::random_data(rng, 2, 6);
  const SpectralReport rep = full_report(x, KernelSpec::linear(), CenteringScheme::mean());
  const ordered_json j = to_json(rep);

  CHECK(j.contains("dataset"));
  CHECK(j["kernel"] == "linear");
  CHECK(j["n"] == 6);
  REQUIRE(j["checks"].is_array());
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("margin"));
    CHECK(c.contains("tolerance"));
    CHECK(c.contains("passed"));
    CHECK(c.contains("status"));
  }
  CHECK(j["eigenvalues"]["raw"].size() == 6);
  CHECK(j["eigenvalues"]["centered"].size() == 6);
  CHECK(j["proportions"].contains("gamma"));
  CHECK(j["shift_cosines"].is_array());
  CHECK(j["all_passed"] == true);

  // dumping twice is byte-identical
  CHECK(j.dump(2) == to_json(rep).dump(2));
}

TEST_CASE("kpca model serializes its centering statistics") {
  SplitMix64 rng(5);
  const Matrix x = oracle::random_data(rng, 2, 7);
  const GramMatrix k = gram_matrix(x, KernelSpec::gaussian(0.9));
  const ComponentSet model =
      kpca_fit(k, CenteringScheme::mean(), 2, Normalization::unit_variance);
  const ordered_json j = to_json(model);
  CHECK(j["type"] == "kpca_model");
  CHECK(j["normalization"] == "unit_variance");
  CHECK(j["centering"] == "mean");
  CHECK(j["coefficients"].size() == 7);
  CHECK(j["coefficients"][0].size() == 2);
  CHECK(j["weights"].size() == 7);
  CHECK(j["row_stats"].size() == 7);
}

TEST_CASE("embedding and entropy decompositions serialize") {
  SplitMix64 rng(7);
  const Matrix x = oracle::random_data(rng, 2, 5);
  const Embedding e = mds_embed(pairwise_distances(x), 2);
  const ordered_json je = to_json(e);
  CHECK(je["type"] == "mds_embedding");
  CHECK(je["points"].size() == 2);
  CHECK(je["points"][0].size() == 5);
  CHECK(je.contains("discarded_negative_mass"));

  const EntropyDecomposition dec = keca_decompose(gram_matrix(x, KernelSpec::gaussian(0.5)));
  const ordered_json jd = to_json(dec);
  CHECK(jd["terms"].size() == 5);
  CHECK(jd["selected"].size() == 5);
  CHECK(jd["total"].get<double>() == Approx(dec.total));
}
