#include <doctest.h>

#include <cmath>

#include "gtherm/json_io.hpp"

using namespace gtherm;
using nlohmann::json;

TEST_CASE("hermitian_from_json") {
  SUBCASE("real matrix without an imaginary block") {
    const json j = {{"dim", 2}, {"re", {{0.0, 1.0}, {1.0, 0.0}}}};
    const HermitianOperator h = hermitian_from_json(j);
    CHECK(h.dim() == 2);
    CHECK(h.mat(0, 1).real() == doctest::Approx(1.0));
    CHECK(h.mat(0, 1).imag() == 0.0);
  }
  SUBCASE("complex Hermitian matrix") {
    const json j = {{"dim", 2},
                    {"re", {{1.0, 0.0}, {0.0, -1.0}}},
                    {"im", {{0.0, -0.5}, {0.5, 0.0}}}};
    const HermitianOperator h = hermitian_from_json(j);
    CHECK(h.mat(0, 1) == Complex(0.0, -0.5));
    CHECK(h.mat(1, 0) == Complex(0.0, 0.5));
  }
  SUBCASE("rejections name the offending entry") {
    const json bad_entry = {{"dim", 2}, {"re", {{0.0, "x"}, {1.0, 0.0}}}};
    CHECK_THROWS_WITH_AS(hermitian_from_json(bad_entry), doctest::Contains("re[0][1]"),
                         Error);
    const json bad_row = {{"dim", 2}, {"re", {{0.0, 1.0}, {1.0}}}};
    CHECK_THROWS_WITH_AS(hermitian_from_json(bad_row), doctest::Contains("re[1]"), Error);
    const json non_herm = {{"dim", 2}, {"re", {{0.0, 1.0}, {0.0, 0.0}}}};
    CHECK_THROWS_WITH_AS(hermitian_from_json(non_herm), doctest::Contains("(0,1)"), Error);
    const json no_dim = {{"re", {{0.0}}}};
    CHECK_THROWS_AS(hermitian_from_json(no_dim), Error);
  }
}

TEST_CASE("density_from_json validates the state") {
  const json good = {{"dim", 2}, {"re", {{0.5, 0.0}, {0.0, 0.5}}}};
  CHECK(density_from_json(good).dim() == 2);
  const json bad_trace = {{"dim", 2}, {"re", {{0.9, 0.0}, {0.0, 0.5}}}};
  CHECK_THROWS_AS(density_from_json(bad_trace), Error);
  const json not_psd = {{"dim", 2}, {"re", {{1.5, 0.0}, {0.0, -0.5}}}};
  CHECK_THROWS_AS(density_from_json(not_psd), Error);
}

TEST_CASE("protocol_grid_from_json wires everything together") {
  const json j = {
      {"times", {0.0, 0.5, 1.0}},
      {"hamiltonians",
       {{{"dim", 2}, {"re", {{0.0, 0.1}, {0.1, 0.0}}}},
        {{"dim", 2}, {"re", {{0.1, 0.1}, {0.1, -0.1}}}},
        {{"dim", 2}, {"re", {{0.2, 0.1}, {0.1, -0.2}}}}}},
      {"initial_state", {{"dim", 2}, {"re", {{1.0, 0.0}, {0.0, 0.0}}}}}};
  const ProtocolGrid grid = protocol_grid_from_json(j);
  CHECK(grid.times.size() == 3);
  CHECK(grid.hamiltonians.size() == 3);
  CHECK(grid.initial_state.mat(0, 0).real() == doctest::Approx(1.0));

  json missing = j;
  missing.erase("initial_state");
  CHECK_THROWS_AS(protocol_grid_from_json(missing), Error);
}
