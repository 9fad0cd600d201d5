#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "lassokit/hom_search.hpp"
#include "lassokit/instance.hpp"
#include "support/fixtures.hpp"

using namespace lassokit;
using namespace fixtures;

TEST_CASE("instance construction validates actions and equations") {
  REQUIRE_NOTHROW(make_graph(2, {{0, 1}}));
  SECTION("action out of range") {
    REQUIRE_THROWS_AS(Instance(grph_schema(), {1, 1}, {{0}, {1}}), PreconditionError);
  }
  SECTION("wrong action length") {
    REQUIRE_THROWS_AS(Instance(grph_schema(), {1, 2}, {{0}, {0, 0}}), PreconditionError);
  }
  SECTION("reflexivity equations are enforced") {
    // l picks a loop whose source is the wrong vertex.
    REQUIRE_THROWS_AS(
        Instance(rgrph_schema(), {2, 2}, {{0, 1}, {0, 1}, {1, 0}}),
        PreconditionError);
    REQUIRE_NOTHROW(make_rgraph(2, {{0, 1}}));
  }
}

TEST_CASE("check_hom validates naturality squares") {
  SECTION("identity is natural") {
    REQUIRE(check_hom(identity_hom(path3())).ok());
    REQUIRE(check_hom(identity_hom(redge())).ok());
  }
  SECTION("edge sent across a mismatched source") {
    auto e = single_edge();
    // Send the edge to itself but swap the vertices.
    auto h = make_hom(e, e, {{1, 0}, {0}});
    auto r = check_hom(h);
    REQUIRE_FALSE(r.ok());
    REQUIRE(std::any_of(r.violations.begin(), r.violations.end(),
                        [](const HomViolation& v) { return v.generator == "s"; }));
  }
  SECTION("the path3 covering map is natural") {
    REQUIRE(check_hom(fig1_f()).ok());
  }
  SECTION("schema mismatch throws") {
    auto g = path3();
    auto r = rterminal();
    REQUIRE_THROWS_AS(check_hom(Hom{g, r, {}}), SchemaMismatchError);
  }
}

TEST_CASE("mono, epi and iso are pointwise") {
  SECTION("identity is mono, epi and iso") {
    auto id = identity_hom(path3());
    REQUIRE(is_mono(id));
    REQUIRE(is_epi(id));
    REQUIRE(is_iso(id));
  }
  SECTION("collapsing two vertices is epi but not mono") {
    auto h = make_hom(discrete(2), discrete(1), {{0, 0}, {}});
    REQUIRE(is_epi(h));
    REQUIRE_FALSE(is_mono(h));
    REQUIRE_FALSE(is_iso(h));
  }
  SECTION("mono and epi together imply iso") {
    // All homs between small fixtures.
    const auto objs = {path3(), single_edge(), loop_vertex(), two_loops(), discrete(2)};
    for (const auto& a : objs)
      for (const auto& b : objs)
        for (const auto& h : enumerate_homs(a, b))
          REQUIRE(is_iso(h) == (is_mono(h) && is_epi(h)));
  }
}

TEST_CASE("find_isomorphism") {
  SECTION("an instance is isomorphic to itself via the identity") {
    auto g = path3();
    auto iso = find_isomorphism(g, g);
    REQUIRE(iso);
    REQUIRE(*iso == identity_hom(g));
  }
  SECTION("different loop counts are not isomorphic") {
    REQUIRE_FALSE(find_isomorphism(loop_vertex(), two_loops()));
  }
  SECTION("renamings of path3 are isomorphic; lex-least bijection is found") {
    // Same path with vertices listed z, y, x and edges reversed in order.
    auto renamed = make_graph(3, {{1, 0}, {2, 1}});
    auto iso = find_isomorphism(path3(), renamed);
    REQUIRE(iso);
    REQUIRE(check_hom(*iso).ok());
    REQUIRE(is_iso(*iso));

    // Independent oracle: try all 3! vertex bijections with both edge maps.
    std::vector<Hom> witnesses;
    std::vector<std::size_t> perm{0, 1, 2};
    std::sort(perm.begin(), perm.end());
    do {
      for (std::vector<std::size_t> eperm : {std::vector<std::size_t>{0, 1},
                                             std::vector<std::size_t>{1, 0}}) {
        Hom cand = make_hom(path3(), renamed, {perm, eperm});
        if (check_hom(cand).ok()) witnesses.push_back(cand);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    REQUIRE(witnesses.size() == 1);  // the path has no symmetries
    REQUIRE(*iso == witnesses[0]);
  }
  SECTION("existence is symmetric") {
    auto renamed = make_graph(3, {{1, 0}, {2, 1}});
    REQUIRE(find_isomorphism(path3(), renamed).has_value() ==
            find_isomorphism(renamed, path3()).has_value());
    REQUIRE(find_isomorphism(path3(), single_edge()).has_value() ==
            find_isomorphism(single_edge(), path3()).has_value());
  }
}

TEST_CASE("enumerate_homs") {
  SECTION("exactly two maps from the terminal reflexive graph to an edge") {
    auto homs = enumerate_homs(rterminal(), redge());
    REQUIRE(homs.size() == 2);
    for (const auto& h : homs) REQUIRE(check_hom(h).ok());
  }
  SECTION("exactly one map into the terminal object") {
    auto terminal = two_loops();  // not terminal; the terminal graph is 1 loop
    auto t = loop_vertex();
    for (const auto& g : {path3(), single_edge(), two_loops(), discrete(3)})
      REQUIRE(enumerate_homs(g, t).size() == 1);
    (void)terminal;
  }
  SECTION("single edge to single edge: only the identity") {
    auto homs = enumerate_homs(single_edge(), single_edge());
    REQUIRE(homs.size() == 1);
    REQUIRE(homs[0] == identity_hom(single_edge()));
  }
  SECTION("pruned search agrees with the raw exhaustive filter") {
    // Raw oracle: every component family, filtered by check_hom.
    const auto raw_count = [](const Instance& a, const Instance& b) {
      std::size_t count = 0;
      std::vector<std::vector<std::size_t>> comps(a.sorts());
      const auto total = [&]() {
        std::size_t n = 1;
        for (std::size_t s = 0; s < a.sorts(); ++s)
          for (std::size_t i = 0; i < a.carrier(s); ++i) n *= b.carrier(s);
        return n;
      }();
      for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t s = 0; s < a.sorts(); ++s) {
          comps[s].assign(a.carrier(s), 0);
          for (std::size_t i = 0; i < a.carrier(s); ++i) {
            comps[s][i] = c % b.carrier(s);
            c /= b.carrier(s);
          }
        }
        if (check_hom(Hom{a, b, comps}).ok()) ++count;
      }
      return count;
    };
    const auto pairs = {std::pair{path3(), single_edge()},
                        std::pair{single_edge(), path3()},
                        std::pair{two_loops(), two_loops()},
                        std::pair{path3(), path3()},
                        std::pair{redge(), redge()},
                        std::pair{rextra_loop(), redge()}};
    for (const auto& [a, b] : pairs) {
      auto homs = enumerate_homs(a, b);
      REQUIRE(homs.size() == raw_count(a, b));
      std::set<std::vector<std::vector<std::size_t>>> distinct;
      for (const auto& h : homs) {
        REQUIRE(check_hom(h).ok());
        distinct.insert(h.components);
      }
      REQUIRE(distinct.size() == homs.size());
    }
  }
  SECTION("the carrier ceiling is enforced") {
    SearchLimits tight;
    tight.max_carrier = 2;
    REQUIRE_THROWS_AS(enumerate_homs(path3(), path3(), tight), BoundExceededError);
  }
  SECTION("LASSOKIT_MAX_CARRIER overrides the ceiling") {
    setenv("LASSOKIT_MAX_CARRIER", "3", 1);
    REQUIRE(default_search_limits().max_carrier == 3);
    unsetenv("LASSOKIT_MAX_CARRIER");
    REQUIRE(default_search_limits().max_carrier == 10);
  }
  SECTION("naturality search works beyond graph schemas") {
    // A Petri net with one transition consuming one species and producing
    // another; maps to itself only via the identity.
    Instance net(petri_schema(), {0, 2, 1, 1, 1}, {{}, {0}, {0}, {1}, {0}});
    auto homs = enumerate_homs(net, net);
    REQUIRE(homs.size() == 1);
    REQUIRE(homs[0] == identity_hom(net));
    // Forgetting the wiring leaves the species free to swap.
    Instance loose(petri_schema(), {0, 2, 1, 0, 0}, {{}, {}, {}, {}, {}});
    REQUIRE(enumerate_homs(loose, loose).size() == 4);
  }
}
