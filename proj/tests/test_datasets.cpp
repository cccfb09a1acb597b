#include <catch2/catch.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "gramspec/datasets.hpp"

using namespace gramspec;

#ifndef GRAMSPEC_TEST_DATA_DIR
#define GRAMSPEC_TEST_DATA_DIR "data"
#endif

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = std::string("/tmp/gramspec_") + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("csv rows become data columns") {
  const std::string path = write_temp("layout.csv", "1,2\n3,4\n");
  const Dataset ds = load_csv(path);
  REQUIRE(ds.dims() == 2);
  REQUIRE(ds.samples() == 2);
  CHECK(ds.x(0, 0) == 1.0);
  CHECK(ds.x(1, 0) == 2.0);
  CHECK(ds.x(0, 1) == 3.0);
  CHECK(ds.x(1, 1) == 4.0);
}

TEST_CASE("csv header rows are auto-detected") {
  const std::string path = write_temp("header.csv", "a,b\n1,2\n3,4\n");
  const Dataset ds = load_csv(path);
  CHECK(ds.samples() == 2);
  CHECK(ds.x(0, 0) == 1.0);
}

TEST_CASE("csv error paths are distinct and located") {
  SECTION("empty file") {
    const std::string path = write_temp("empty.csv", "");
    try {
      load_csv(path);
      FAIL("expected CsvError");
    } catch (const CsvError& e) {
      CHECK(e.kind == CsvErrorKind::empty_file);
    }
  }
  SECTION("ragged row") {
    const std::string path = write_temp("ragged.csv", "1,2\n3\n");
    try {
      load_csv(path);
      FAIL("expected CsvError");
    } catch (const CsvError& e) {
      CHECK(e.kind == CsvErrorKind::ragged_row);
      CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
  }
  SECTION("malformed cell names row and column") {
    const std::string path = write_temp("badcell.csv", "1,2\n3,x4\n");
    try {
      load_csv(path);
      FAIL("expected CsvError");
    } catch (const CsvError& e) {
      CHECK(e.kind == CsvErrorKind::bad_cell);
      CHECK(std::string(e.what()).find("row 2") != std::string::npos);
      CHECK(std::string(e.what()).find("col 2") != std::string::npos);
    }
  }
  SECTION("missing file") {
    CHECK_THROWS_AS(load_csv("/tmp/gramspec_does_not_exist.csv"), CsvError);
  }
  SECTION("label column requires at least two columns") {
    const std::string path = write_temp("onecol.csv", "1\n2\n");
    CHECK_THROWS_AS(load_csv(path, true), CsvError);
  }
}

TEST_CASE("iris asset loads with the expected shape and labels") {
  const Dataset ds = load_iris(std::string(GRAMSPEC_TEST_DATA_DIR) + "/iris.csv");
  REQUIRE(ds.dims() == 4);
  REQUIRE(ds.samples() == 150);
  REQUIRE(ds.labels.has_value());
  int counts[3] = {0, 0, 0};
  for (int l : *ds.labels) {
    REQUIRE(l >= 0);
    REQUIRE(l <= 2);
    ++counts[l];
  }
  CHECK(counts[0] == 50);
  CHECK(counts[1] == 50);
  CHECK(counts[2] == 50);
  CHECK(ds.x(0, 0) == Approx(5.1));
}

TEST_CASE("iris loader verifies the checksum") {
  const std::string path = write_temp("fake_iris.csv", "1,2,3,4,0\n");
  CHECK_THROWS_AS(load_iris(path), CsvError);
}

TEST_CASE("banana generator") {
  SECTION("deterministic for a fixed seed") {
    const Dataset a = banana(50, 0.2, 9);
    const Dataset b = banana(50, 0.2, 9);
    for (index_t j = 0; j < 50; ++j) {
      CHECK(a.x(0, j) == b.x(0, j));
      CHECK(a.x(1, j) == b.x(1, j));
    }
  }
  SECTION("different seeds differ") {
    const Dataset a = banana(10, 0.2, 1);
    const Dataset b = banana(10, 0.2, 2);
    bool same = true;
    for (index_t j = 0; j < 10; ++j)
      if (a.x(0, j) != b.x(0, j)) same = false;
    CHECK_FALSE(same);
  }
  SECTION("zero noise lands on the parabola") {
    const Dataset ds = banana(30, 0.0, 5);
    for (index_t j = 0; j < 30; ++j)
      CHECK(ds.x(1, j) == Approx(ds.x(0, j) * ds.x(0, j)).margin(1e-15));
  }
  SECTION("first coordinate stays in [-1, 1]; mean of y near 1/3") {
    const Dataset ds = banana(200, 0.2, 42);
    real ymean = 0.0;
    for (index_t j = 0; j < 200; ++j) {
      CHECK(ds.x(0, j) >= -1.0);
      CHECK(ds.x(0, j) <= 1.0);
      ymean += ds.x(1, j);
    }
    ymean /= 200.0;
    CHECK(std::abs(ymean - 1.0 / 3.0) <= 0.1);  // E[z^2] = 1/3 on U[-1, 1]
  }
  SECTION("validates arguments") {
    CHECK_THROWS_AS(banana(0, 0.2, 1), std::invalid_argument);
    CHECK_THROWS_AS(banana(5, -0.1, 1), std::invalid_argument);
  }
}

TEST_CASE("csv round trip is bit-exact under %.17g formatting") {
  const Dataset src = banana(25, 0.2, 13);
  std::string csv = "x,y\n";
  char buf[64];
  for (index_t j = 0; j < 25; ++j) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", src.x(0, j), src.x(1, j));
    csv += buf;
  }
  const std::string path = write_temp("roundtrip.csv", csv);
  const Dataset back = load_csv(path);
  REQUIRE(back.samples() == 25);
  for (index_t j = 0; j < 25; ++j) {
    CHECK(back.x(0, j) == src.x(0, j));
    CHECK(back.x(1, j) == src.x(1, j));
  }
}
