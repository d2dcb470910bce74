#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bioassay/curves.hpp"
#include "bioassay/errors.hpp"
#include "bioassay/io.hpp"

using namespace bioassay;

TEST_CASE("schema detection") {
  std::istringstream a("u,y\n1,2\n");
  CHECK(io::detect_schema(a) == io::CsvSchema::regression);
  std::istringstream b("dose,n,events\n");
  CHECK(io::detect_schema(b) == io::CsvSchema::quantal);
  std::istringstream c("time,event\n");
  CHECK(io::detect_schema(c) == io::CsvSchema::survival);
  std::istringstream d("x1,x2,y\n");
  CHECK(io::detect_schema(d) == io::CsvSchema::binary);
  std::istringstream e("x1,y\n");
  CHECK(io::detect_schema(e) == io::CsvSchema::binary);
  std::istringstream f("foo,bar\n");
  CHECK_THROWS_AS(io::detect_schema(f), InvalidInput);
  std::istringstream g("");
  CHECK_THROWS_AS(io::detect_schema(g), InvalidInput);
}

TEST_CASE("readers") {
  std::istringstream q("dose,n,events\n0.5,10,3\n1,10,7\n");
  const auto groups = io::read_quantal(q);
  REQUIRE(groups.size() == 2);
  CHECK(groups[1].events == 7);
  std::istringstream bad("dose,n,events\n0.5,10,11\n");
  CHECK_THROWS_AS(io::read_quantal(bad), InvalidInput);
  std::istringstream s("time,event\n1.5,1\n2,0\n");
  const auto obs = io::read_survival(s);
  CHECK(obs.size() == 2);
  CHECK_FALSE(obs[1].event);
  std::istringstream bin("x1,y\n0.2,1\n-1,0\n");
  const auto rows = io::read_binary(bin);
  CHECK_FALSE(rows[0].x2.has_value());
  std::istringstream badbin("x1,y\n0.2,2\n");
  CHECK_THROWS_AS(io::read_binary(badbin), InvalidInput);
  try {
    std::istringstream r("u,y\n1,2\n\n3,x\n");
    io::read_regression(r);
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("theta parsing") {
  CHECK(io::parse_theta("1,2.5,-3") == ParamVector{1, 2.5, -3});
  CHECK_THROWS_AS(io::parse_theta("1,,2"), InvalidInput);
  CHECK_THROWS_AS(io::parse_theta("1,abc"), InvalidInput);
  CHECK_THROWS_AS(io::parse_theta(""), InvalidInput);
}

TEST_CASE("polyptych JSON") {
  std::istringstream in(R"({
    "attributes": [{"name": "a", "domain": ["x", "y"]}, {"name": "b", "domain": [1, 2, 3]}],
    "variable": {"name": "n", "type": "nonneg-integer"},
    "tables": [{"scheme": ["a", "b"], "cells": [{"coords": ["y", 3], "value": 4}]}],
    "structural_zeros": [["x", 1]]
  })");
  const Polyptych p = io::read_polyptych(in);
  REQUIRE(p.tables.size() == 1);
  CHECK(p.tables[0].cells() == std::vector<double>{0, 0, 0, 0, 0, 4});
  CHECK(p.structural_zeros[0] == std::vector<std::string>{"x", "1"});
  const Polyptych back = [&] {
    std::istringstream again(io::polyptych_json(p).dump());
    return io::read_polyptych(again);
  }();
  CHECK(back.tables[0].cells() == p.tables[0].cells());
  std::istringstream broken("{\"tables\": 3");
  CHECK_THROWS_AS(io::read_polyptych(broken), InvalidInput);
}

TEST_CASE("grids and curves") {
  const Grid g = parse_grid("0:1:5");
  CHECK(grid_points(g) == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
  CHECK_THROWS_AS(parse_grid("0:1"), InvalidInput);
  CHECK_THROWS_AS(parse_grid("0:1:1"), InvalidInput);
  CHECK_THROWS_AS(parse_grid("0:1:2.5"), InvalidInput);

  const CurveSet clipped = sample_curves({"janoschek"}, {}, parse_grid("-1:1:5"));
  CHECK(clipped.u == std::vector<double>{0.5, 1.0});
  CHECK(clipped.warnings.size() == 1);
  CHECK_THROWS_AS(sample_curves({"janoschek"}, {}, parse_grid("-2:-1:5")), InvalidInput);

  const CurveSet overflow = sample_curves({"gompertz"}, {}, Grid{});
  CHECK(overflow.u.size() == 500);
  CHECK(std::isinf(overflow.values[0].back()));
  CHECK(curves_csv(overflow).find(",inf\n") != std::string::npos);
  CHECK(curve_presets().size() == 12);
  CHECK_THROWS_AS(find_preset("no-such-preset"), InvalidInput);
}
