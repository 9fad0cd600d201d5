#include <catch2/catch_amalgamated.hpp>

#include "lassokit/schema.hpp"

using namespace lassokit;

TEST_CASE("builtin schemas match their presentations") {
  SECTION("Grph") {
    auto s = builtin_schema("Grph");
    REQUIRE(s->objects.size() == 2);
    REQUIRE(s->generators.size() == 2);
    REQUIRE(s->equations.empty());
    REQUIRE(validate_schema(*s).ok());
  }
  SECTION("RGrph carries the reflexivity equations") {
    auto s = builtin_schema("RGrph");
    REQUIRE(s->generators.size() == 3);
    REQUIRE(s->equations.size() == 2);
    REQUIRE(s->equations[0] == PathEquation{{"l", "s"}, {}});
    REQUIRE(s->equations[1] == PathEquation{{"l", "t"}, {}});
    REQUIRE(validate_schema(*s).ok());
  }
  SECTION("CGr_3 has a vertex sort plus one edge sort per colour") {
    auto s = builtin_schema("CGr_3");
    REQUIRE(s->objects.size() == 4);
    REQUIRE(s->generators.size() == 6);
    REQUIRE(validate_schema(*s).ok());
  }
  SECTION("Petri") {
    auto s = builtin_schema("Petri");
    REQUIRE(s->objects.size() == 5);
    REQUIRE(s->generators.size() == 5);
    REQUIRE(validate_schema(*s).ok());
  }
  SECTION("unknown names and k = 0 are rejected") {
    REQUIRE_THROWS_AS(builtin_schema("Simplicial"), PreconditionError);
    REQUIRE_THROWS_AS(builtin_schema("CGr_0"), PreconditionError);
    REQUIRE_THROWS_AS(builtin_schema("CGr_x"), PreconditionError);
  }
}

TEST_CASE("validate_schema reports every violation") {
  SECTION("dangling sort") {
    SchemaPresentation p{"bad", {"V", "E"}, {{"s", "E", "V"}, {"t", "E", "W"}}, {}};
    auto r = validate_schema(p);
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.errors.size() == 1);
    REQUIRE(r.errors[0].find("dangling") != std::string::npos);
  }
  SECTION("duplicate generator") {
    SchemaPresentation p{"bad", {"V", "E"}, {{"s", "E", "V"}, {"s", "E", "V"}}, {}};
    REQUIRE_FALSE(validate_schema(p).ok());
  }
  SECTION("non-composable equation path") {
    SchemaPresentation p{"bad",
                         {"V", "E"},
                         {{"s", "E", "V"}, {"t", "E", "V"}},
                         {{{"s", "s"}, {}}}};
    auto r = validate_schema(p);
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.errors[0].find("composable") != std::string::npos);
  }
  SECTION("non-parallel sides") {
    SchemaPresentation p{"bad",
                         {"V", "E"},
                         {{"s", "E", "V"}, {"l", "V", "E"}},
                         {{{"s"}, {"l"}}}};
    REQUIRE_FALSE(validate_schema(p).ok());
  }
  SECTION("multiple violations are all listed") {
    SchemaPresentation p{"bad",
                         {"V", "V"},
                         {{"s", "E", "V"}, {"s", "E", "W"}},
                         {}};
    auto r = validate_schema(p);
    REQUIRE(r.errors.size() >= 3);
  }
}

TEST_CASE("validation is pure and idempotent") {
  auto s = builtin_schema("RGrph");
  auto r1 = validate_schema(*s);
  auto r2 = validate_schema(*s);
  REQUIRE(r1.ok());
  REQUIRE(r1.errors == r2.errors);
}

TEST_CASE("schema equality is structural") {
  SchemaPresentation copy = *grph_schema();
  copy.name = "renamed";
  REQUIRE(schema_equal(copy, *grph_schema()));
  copy.generators[0].name = "src";
  REQUIRE_FALSE(schema_equal(copy, *grph_schema()));
}
