#include <catch2/catch_amalgamated.hpp>

#include "lassokit/contraction.hpp"
#include "lassokit/dot.hpp"
#include "lassokit/json_io.hpp"
#include "support/fixtures.hpp"

using namespace lassokit;
using namespace fixtures;

TEST_CASE("instance round trip") {
  const auto samples = {path3(), make_rgraph(2, {{0, 1}}),
                        make_cgraph(2, 2, {{{0, 1}}, {}}),
                        Instance(petri_schema(), {1, 2, 1, 1, 0},
                                 {{0}, {1}, {0}, {}, {}})};
  for (const auto& x : samples) {
    auto j = instance_to_json(x);
    REQUIRE(instance_from_json(j) == x);
    // Serialization is deterministic.
    REQUIRE(j.dump() == instance_to_json(x).dump());
  }
}

TEST_CASE("builtin schemas serialize by name, custom ones inline") {
  auto j = instance_to_json(path3());
  REQUIRE(j.at("schema") == "Grph");

  SchemaPresentation p{"arrows", {"A", "B"}, {{"f", "A", "B"}}, {}};
  auto schema = std::make_shared<SchemaPresentation>(p);
  Instance x(schema, {2, 1}, {{0, 0}});
  auto round = instance_from_json(instance_to_json(x));
  REQUIRE(round == x);
  REQUIRE(instance_to_json(x).at("schema").is_object());
}

TEST_CASE("hom round trip validates shapes") {
  auto f = fig1_f();
  REQUIRE(hom_from_json(hom_to_json(f)) == f);

  auto j = hom_to_json(f);
  j["components"]["V"] = std::vector<std::size_t>{0};
  REQUIRE_THROWS_AS(hom_from_json(j), ParseError);
}

TEST_CASE("decomposition round trip") {
  for (const auto& d : {fig1_decomposition(), star_decomposition(),
                        triangle_decomposition()}) {
    auto j = decomposition_to_json(d);
    auto r = decomposition_from_json(j);
    REQUIRE(r.shape == d.shape);
    REQUIRE(r.bags == d.bags);
    REQUIRE(r.adhesions == d.adhesions);
    REQUIRE(r.legs == d.legs);
  }
}

TEST_CASE("contraction and pushforward serialization") {
  auto cc = lasso_cc();
  auto sub = make_hom(single_edge(), path3(), {{0, 1}, {0}});
  auto c = contract(path3(), sub, cc);
  auto j = contraction_to_json(c);
  REQUIRE(instance_from_json(j.at("result")) == c.result);
  REQUIRE(hom_from_json(j.at("quotient")) == c.quotient);

  auto r = pushforward_span(fig1_decomposition(), sub, cc);
  auto pj = pushforward_to_json(r, /*with_intermediates=*/true);
  REQUIRE(pj.contains("intermediates"));
  auto out = decomposition_from_json(pj.at("decomposition"));
  REQUIRE(out.bags == r.output.bags);
}

TEST_CASE("malformed input is a parse error") {
  REQUIRE_THROWS_AS(instance_from_json(json{{"schema", "Nope"}}), ParseError);
  REQUIRE_THROWS_AS(instance_from_json(json{{"schema", "Grph"}}), ParseError);
  REQUIRE_THROWS_AS(
      instance_from_json(json{{"schema", "Grph"},
                              {"carriers", {{"V", 1}, {"E", 1}}},
                              {"actions", {{"s", {0}}, {"t", {5}}}}}),
      ParseError);
  REQUIRE_THROWS_AS(schema_from_json(json{{"objects", {"V", "V"}},
                                          {"morphisms", json::array()}}),
                    ParseError);
}

TEST_CASE("dot export") {
  SECTION("decompositions render bags as clusters with dashed adhesion links") {
    auto dot = to_dot(fig1_decomposition());
    REQUIRE(dot.find("subgraph cluster_bag0") != std::string::npos);
    REQUIRE(dot.find("subgraph cluster_bag1") != std::string::npos);
    REQUIRE(dot.find("style=dashed") != std::string::npos);
  }
  SECTION("quotients list their preimages") {
    auto cc = lasso_cc();
    auto dot = to_dot_quotient(cc.eta(path3()));
    REQUIRE(dot.find("{0,1,2}") != std::string::npos);
  }
  SECTION("non-graph schemas fall back to element rendering") {
    Instance x(petri_schema(), {1, 1, 1, 1, 1}, {{0}, {0}, {0}, {0}, {0}});
    auto dot = to_dot(x);
    REQUIRE(dot.find("Token0") != std::string::npos);
  }
}
