#pragma once

// Shared fixture instances used across the test suites.

#include <utility>
#include <vector>

#include "lassokit/decomposition.hpp"
#include "lassokit/instance.hpp"

namespace fixtures {

using namespace lassokit;

inline Hom make_hom(const Instance& dom, const Instance& cod,
                    std::vector<std::vector<std::size_t>> comps) {
  return Hom{dom, cod, std::move(comps)};
}

// The directed path on three vertices: x -> y -> z.
inline Instance path3() { return make_graph(3, {{0, 1}, {1, 2}}); }

inline Instance single_edge() { return make_graph(2, {{0, 1}}); }

inline Instance loop_vertex() { return make_graph(1, {{0, 0}}); }

// One vertex carrying two loops.
inline Instance two_loops() { return make_graph(1, {{0, 0}, {0, 0}}); }

inline Instance discrete(std::size_t n) { return make_graph(n, {}); }

// Two vertices, a loop on each, one edge in each direction between them.
inline Instance full_two() {
  return make_graph(2, {{0, 1}, {1, 0}, {0, 0}, {1, 1}});
}

// Tree decomposition of path3 with bags {x,y}, {y,z} and adhesion {y}.
inline StructuredDecomposition fig1_decomposition() {
  StructuredDecomposition d;
  d.shape = ShapeGraph{2, {{0, 1}}};
  d.bags = {single_edge(), single_edge()};
  d.adhesions = {discrete(1)};
  d.legs = {{make_hom(d.adhesions[0], d.bags[0], {{1}, {}}),
             make_hom(d.adhesions[0], d.bags[1], {{0}, {}})}};
  return d;
}

// The graph living over path3: vertices x'1, x'2, y', z' with edges
// x'1 -> y', x'2 -> y', y' -> z'.
inline Instance fig1_G() {
  return make_graph(4, {{0, 2}, {1, 2}, {2, 3}});
}

// x'1, x'2 |-> x; y' |-> y; z' |-> z, with the unique edge action.
inline Hom fig1_f() {
  return make_hom(fig1_G(), path3(), {{0, 0, 1, 2}, {0, 0, 1}});
}

// Star-shaped decomposition assembling full_two from a discrete centre, two
// single-edge bags glued in opposite directions, and two loop bags.
inline StructuredDecomposition star_decomposition() {
  StructuredDecomposition d;
  d.shape = ShapeGraph{5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}};
  d.bags = {discrete(2), single_edge(), single_edge(), loop_vertex(), loop_vertex()};
  d.adhesions = {discrete(2), discrete(2), discrete(1), discrete(1)};
  d.legs = {
      {make_hom(d.adhesions[0], d.bags[0], {{0, 1}, {}}),
       make_hom(d.adhesions[0], d.bags[1], {{0, 1}, {}})},
      {make_hom(d.adhesions[1], d.bags[0], {{0, 1}, {}}),
       make_hom(d.adhesions[1], d.bags[2], {{1, 0}, {}})},
      {make_hom(d.adhesions[2], d.bags[0], {{0}, {}}),
       make_hom(d.adhesions[2], d.bags[3], {{0}, {}})},
      {make_hom(d.adhesions[3], d.bags[0], {{1}, {}}),
       make_hom(d.adhesions[3], d.bags[4], {{0}, {}})},
  };
  return d;
}

// Triangle-shaped decomposition: three 2-vertex discrete bags sharing one
// vertex per adhesion.
inline StructuredDecomposition triangle_decomposition() {
  StructuredDecomposition d;
  d.shape = ShapeGraph{3, {{0, 1}, {1, 2}, {2, 0}}};
  d.bags = {discrete(2), discrete(2), discrete(2)};
  d.adhesions = {discrete(1), discrete(1), discrete(1)};
  d.legs = {{make_hom(d.adhesions[0], d.bags[0], {{1}, {}}),
             make_hom(d.adhesions[0], d.bags[1], {{0}, {}})},
            {make_hom(d.adhesions[1], d.bags[1], {{1}, {}}),
             make_hom(d.adhesions[1], d.bags[2], {{0}, {}})},
            {make_hom(d.adhesions[2], d.bags[2], {{1}, {}}),
             make_hom(d.adhesions[2], d.bags[0], {{0}, {}})}};
  return d;
}

// Reflexive graphs. Edge carrier convention: distinguished loops first.

// Terminal reflexive graph: one vertex, its distinguished loop.
inline Instance rterminal() { return make_rgraph(1, {}); }

// Two vertices with a single edge 0 -> 1 (plus distinguished loops).
inline Instance redge() { return make_rgraph(2, {{0, 1}}); }

// One vertex with one extra loop besides the distinguished one.
inline Instance rextra_loop() { return make_rgraph(1, {{0, 0}}); }

}  // namespace fixtures
