#include "doctest.h"
#include "oracle.hpp"

#include "cayspec/config.hpp"
#include "cayspec/error.hpp"

using namespace cayspec;
using nlohmann::json;

namespace {

std::string config_error(const json& j) {
  try {
    parse_job_config(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("group specifications") {
  CHECK(parse_group(json{{"type", "cyclic"}, {"n", 6}}).order() == 6);
  CHECK(parse_group(json{{"type", "abelian"}, {"orders", {2, 3}}}).order() == 6);
  CHECK(parse_group(json{{"type", "dihedral"}, {"n", 5}}).order() == 10);
  CHECK(parse_group(json{{"type", "metacyclic"}, {"m", 7}, {"l", 3}, {"r", 2}}).order() == 21);
  const json sd = {{"type", "semidirect"}, {"m", 7}, {"h", {{"type", "dihedral"}, {"n", 3}}}, {"action", {1, 6}}};
  CHECK(parse_group(sd).order() == 42);
  CHECK(parse_group(json{{"type", "permutation"}, {"degree", 3}, {"generators", {{1, 0, 2}, {1, 2, 0}}}}).order() == 6);

  CHECK_THROWS_AS(parse_group(json{{"type", "metacyclic"}, {"m", 5}, {"l", 3}, {"r", 2}}), InvalidAction);
  CHECK_THROWS_WITH_AS(parse_group(json{{"type", "cyclic"}}), "group.n: missing", ConfigError);
  CHECK_THROWS_WITH_AS(parse_group(json{{"type", "cyclic"}, {"n", "six"}}), "group.n: expected an integer",
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_group(json{{"type", "klein"}}), "group.type: unknown group type 'klein'", ConfigError);
  CHECK_THROWS_AS(parse_group(json{{"type", "cyclic"}, {"n", 100}, {"max_order", 50}}), CapacityExceeded);
}

TEST_CASE("connection modes") {
  const json group = {{"type", "metacyclic"}, {"m", 3}, {"l", 2}, {"r", 2}};
  const auto set = parse_job_config(json{{"group", group}, {"connection", {{"mode", "set"}, {"elements", {{0, 1}, {1, 0}}}}}});
  CHECK(set.mode == ConnectionMode::set);
  CHECK(set.alpha->support().size() == 2);

  const auto layers = parse_job_config(json{{"group", group}, {"connection", {{"mode", "layers"}, {"layers", {{1, 2}, {0}}}}}});
  CHECK(layers.mode == ConnectionMode::layers);
  CHECK(layers.alpha->support().size() == 3);

  const json entry = {{"element", {1, 2}}, {"value", {0.5, -1.0}}};
  const auto color = parse_job_config(json{{"group", group}, {"connection", {{"mode", "color"}, {"entries", {entry}}}}});
  CHECK((*color.alpha)(5) == cd{0.5, -1.0});

  CHECK(config_error(json{{"group", group}, {"connection", {{"mode", "set"}, {"elements", {{0, 3}}}}}})
            .rfind("connection.elements[0]", 0) == 0);
  CHECK(config_error(json{{"group", group},
                          {"connection", {{"mode", "set"}, {"elements", json::array()}, {"layers", json::array()}}}}) ==
        "connection: exactly one of elements, layers, entries must be present");
  CHECK(config_error(json{{"group", {{"type", "cyclic"}, {"n", 3}}},
                          {"connection", {{"mode", "layers"}, {"layers", {{1}}}}}}) ==
        "connection.layers: layers mode needs a metacyclic group");
  CHECK(config_error(json{{"group", group}, {"options", {{"format", "xml"}}}}) == "options.format: expected json or csv");
  CHECK(config_error(json{{"group", group}, {"options", {{"tolerance", -1.0}}}}) == "options.tolerance: must be positive");
}

TEST_CASE("user irrep tables are read row-major") {
  json mats = json::array();
  // Quarter turns of the plane; only the storage layout is checked here.
  mats.push_back({{1, 0}, {0, 0}, {0, 0}, {1, 0}});
  mats.push_back({{0, 0}, {-1, 0}, {1, 0}, {0, 0}});
  mats.push_back({{-1, 0}, {0, 0}, {0, 0}, {-1, 0}});
  mats.push_back({{0, 0}, {1, 0}, {-1, 0}, {0, 0}});
  const json j = {{"group", {{"type", "cyclic"}, {"n", 4}}},
                  {"irreps", {{{"label", "rot"}, {"degree", 2}, {"matrices", mats}}}}};
  const auto cfg = parse_job_config(j);
  REQUIRE(cfg.irreps.has_value());
  const auto& rho = cfg.irreps->front();
  CHECK(rho.coefficient(1, 0, 1) == cd{-1.0, 0.0});
  CHECK(rho.coefficient(1, 1, 0) == cd{1.0, 0.0});

  json short_table = j;
  short_table["irreps"][0]["matrices"].erase(3);
  CHECK(config_error(short_table) == "irreps[0].matrices: expected one matrix per element (4)");
}

TEST_CASE("number formatting") {
  CHECK(round15(0.1 + 0.2) == 0.3);
  CHECK(std::signbit(round15(-0.0)) == false);
  CHECK(complex_json(cd{-1e-17, 2.0}).dump() == "[0.0,2.0]");
  CHECK(complex_json(cd{1.0 / 3.0, 0.0}).dump() == "[0.333333333333333,0.0]");
}

TEST_CASE("family config") {
  const auto j = family_config(7, 3, 2);
  CHECK(j["group"]["m"] == 7);
  CHECK(j["connection"]["layers"] == json({{1, 2, 3, 4, 5, 6}, {0}, {0}}));
  CHECK_THROWS_AS(family_config(7, 3, 1), InvalidAction);
}
