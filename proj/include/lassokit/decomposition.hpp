#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lassokit/colimit.hpp"
#include "lassokit/errors.hpp"
#include "lassokit/hom_search.hpp"
#include "lassokit/instance.hpp"

namespace lassokit {

// The shape of a structured decomposition. Loops and parallel edges are
// allowed; the underlying graph is treated as undirected where treeness
// matters.
struct ShapeGraph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  friend bool operator==(const ShapeGraph&, const ShapeGraph&) = default;

  bool is_forest() const {
    detail::UnionFind uf(vertices);
    for (auto [a, b] : edges) {
      if (uf.find(a) == uf.find(b)) return false;
      uf.unite(a, b);
    }
    return true;
  }
};

// Bags at shape vertices, adhesions at shape edges, one span of legs per
// edge (adhesion -> source bag, adhesion -> target bag).
struct StructuredDecomposition {
  ShapeGraph shape;
  std::vector<Instance> bags;
  std::vector<Instance> adhesions;
  std::vector<std::pair<Hom, Hom>> legs;
};

struct DecompositionReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline DecompositionReport validate_decomposition(const StructuredDecomposition& d) {
  DecompositionReport report;
  if (d.bags.size() != d.shape.vertices)
    report.violations.push_back("bag count does not match shape vertices");
  if (d.adhesions.size() != d.shape.edges.size())
    report.violations.push_back("adhesion count does not match shape edges");
  if (d.legs.size() != d.shape.edges.size())
    report.violations.push_back("leg count does not match shape edges");
  if (!report.ok()) return report;

  for (std::size_t e = 0; e < d.shape.edges.size(); ++e) {
    const auto [sv, tv] = d.shape.edges[e];
    if (sv >= d.shape.vertices || tv >= d.shape.vertices) {
      report.violations.push_back("shape edge " + std::to_string(e) +
                                  " has an endpoint out of range");
      continue;
    }
    const auto& [ls, lt] = d.legs[e];
    if (!(ls.dom == d.adhesions[e]) || !(ls.cod == d.bags[sv]))
      report.violations.push_back("edge " + std::to_string(e) +
                                  ": source leg endpoints are wrong");
    else if (!check_hom(ls).ok())
      report.violations.push_back("edge " + std::to_string(e) +
                                  ": source leg is not natural");
    else if (!is_mono(ls))
      report.violations.push_back("edge " + std::to_string(e) +
                                  ": source leg is not monic");
    if (!(lt.dom == d.adhesions[e]) || !(lt.cod == d.bags[tv]))
      report.violations.push_back("edge " + std::to_string(e) +
                                  ": target leg endpoints are wrong");
    else if (!check_hom(lt).ok())
      report.violations.push_back("edge " + std::to_string(e) +
                                  ": target leg is not natural");
    else if (!is_mono(lt))
      report.violations.push_back("edge " + std::to_string(e) +
                                  ": target leg is not monic");
  }
  for (std::size_t b = 1; b < d.bags.size(); ++b)
    if (!same_schema(d.bags[b].schema_ptr(), d.bags[0].schema_ptr()))
      report.violations.push_back("bag " + std::to_string(b) +
                                  " lives over a different schema");
  return report;
}

// Nodes: bags first, then adhesions; per shape edge e the two arrows
// (n_bags + e) -> src and (n_bags + e) -> tgt.
inline FiniteDiagram to_diagram(const StructuredDecomposition& d) {
  FiniteDiagram out;
  out.nodes = d.bags;
  out.nodes.insert(out.nodes.end(), d.adhesions.begin(), d.adhesions.end());
  const std::size_t nb = d.bags.size();
  for (std::size_t e = 0; e < d.shape.edges.size(); ++e) {
    out.arrows.push_back({nb + e, d.shape.edges[e].first, d.legs[e].first});
    out.arrows.push_back({nb + e, d.shape.edges[e].second, d.legs[e].second});
  }
  return out;
}

inline Cocone decomposition_colimit(const StructuredDecomposition& d) {
  if (d.bags.empty() && d.adhesions.empty())
    throw PreconditionError("decomposition_colimit of an empty shape needs a schema");
  return colimit(to_diagram(d));
}

// Per-sort maximum bag cardinality.
using WidthVector = std::vector<std::size_t>;

inline WidthVector width_vector(const StructuredDecomposition& d) {
  if (d.bags.empty()) return {};
  WidthVector w(d.bags[0].sorts(), 0);
  for (const auto& b : d.bags)
    for (std::size_t s = 0; s < b.sorts(); ++s) w[s] = std::max(w[s], b.carrier(s));
  return w;
}

// measure: a sort name, or "total" for the largest bag by element count.
inline std::size_t width_scalar(const StructuredDecomposition& d,
                                const std::string& measure) {
  if (d.bags.empty()) return 0;
  if (measure == "total") {
    std::size_t w = 0;
    for (const auto& b : d.bags) w = std::max(w, b.total_elements());
    return w;
  }
  const auto idx = d.bags[0].schema().object_index(measure);
  if (!idx) throw PreconditionError("unknown sort name '" + measure + "'");
  return width_vector(d)[*idx];
}

inline bool width_leq(const WidthVector& a, const WidthVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t s = 0; s < a.size(); ++s)
    if (a[s] > b[s]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Diagram of images

struct DiagramOfImages {
  FiniteDiagram diagram;       // node i = image of cocone leg i
  std::vector<Hom> node_epis;  // original node i ->> image i
  std::vector<Hom> node_monos; // image i >-> cocone apex
};

// Pointwise image factorization of a cocone's legs; arrows become the unique
// mediating monos between images.
inline DiagramOfImages diagram_of_images(const FiniteDiagram& d, const Cocone& c) {
  if (c.legs.size() != d.nodes.size())
    throw PreconditionError("diagram_of_images: cocone legs do not match nodes");
  DiagramOfImages out;
  std::vector<ImageFactorization> facts;
  facts.reserve(d.nodes.size());
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    facts.push_back(image_factorization(c.legs[i]));
    out.diagram.nodes.push_back(facts.back().image);
    out.node_epis.push_back(facts.back().epi);
    out.node_monos.push_back(facts.back().mono);
  }
  const std::size_t nsorts = c.apex.sorts();
  for (const auto& a : d.arrows) {
    // Image of leg(src) sits inside image of leg(dst); the mediator is the
    // inclusion of apex elements.
    std::vector<std::vector<std::size_t>> apex_to_dst(nsorts);
    for (std::size_t s = 0; s < nsorts; ++s) {
      apex_to_dst[s].assign(c.apex.carrier(s), static_cast<std::size_t>(-1));
      const auto& m = facts[a.dst].mono.components[s];
      for (std::size_t i = 0; i < m.size(); ++i) apex_to_dst[s][m[i]] = i;
    }
    std::vector<std::vector<std::size_t>> comps(nsorts);
    for (std::size_t s = 0; s < nsorts; ++s) {
      const auto& m = facts[a.src].mono.components[s];
      comps[s].reserve(m.size());
      for (auto apex_elem : m) {
        const auto j = apex_to_dst[s][apex_elem];
        if (j == static_cast<std::size_t>(-1))
          throw InternalError("diagram_of_images: legs do not factor (not a cocone?)");
        comps[s].push_back(j);
      }
    }
    out.diagram.arrows.push_back(
        {a.src, a.dst, Hom{facts[a.src].image, facts[a.dst].image, std::move(comps)}});
  }
  return out;
}

// Reassembles a structured decomposition of the original shape from a
// diagram over to_diagram()'s node order.
inline StructuredDecomposition decomposition_from_diagram(const ShapeGraph& shape,
                                                          const FiniteDiagram& d) {
  const std::size_t nb = shape.vertices;
  StructuredDecomposition out;
  out.shape = shape;
  out.bags.assign(d.nodes.begin(), d.nodes.begin() + nb);
  out.adhesions.assign(d.nodes.begin() + nb, d.nodes.end());
  out.legs.reserve(shape.edges.size());
  for (std::size_t e = 0; e < shape.edges.size(); ++e)
    out.legs.push_back({d.arrows[2 * e].hom, d.arrows[2 * e + 1].hom});
  return out;
}

// ---------------------------------------------------------------------------
// Pullback of a decomposition along an arbitrary morphism

struct PullbackDecomposition {
  StructuredDecomposition result;      // decomposes dom(delta)
  std::vector<Hom> node_to_domain;     // pullback node -> dom(delta), bags then adhesions
  std::vector<Hom> node_to_base;       // pullback node -> original node
};

// Pointwise pullback of delta against the (aligned) colimit cocone legs of d.
// The shape is preserved exactly.
inline PullbackDecomposition pullback_decomposition_full(const StructuredDecomposition& d,
                                                         const Hom& delta) {
  const auto report = validate_decomposition(d);
  if (!report.ok())
    throw PreconditionError("pullback_decomposition: invalid decomposition: " +
                            report.violations.front());
  auto cocone = decomposition_colimit(d);
  const auto iso = find_isomorphism(cocone.apex, delta.cod);
  if (!iso)
    throw ColimitMismatchError(
        "decomposition colimit is not isomorphic to the morphism codomain");

  const std::size_t nb = d.bags.size();
  const std::size_t nnodes = cocone.legs.size();
  PullbackDecomposition out;
  out.result.shape = d.shape;

  std::vector<PullbackResult> pbs;
  pbs.reserve(nnodes);
  for (std::size_t n = 0; n < nnodes; ++n) {
    const Hom aligned = compose(*iso, cocone.legs[n]);
    pbs.push_back(pullback(delta, aligned));
    out.node_to_domain.push_back(pbs.back().to_left);
    out.node_to_base.push_back(pbs.back().to_right);
  }
  out.result.bags.reserve(nb);
  for (std::size_t b = 0; b < nb; ++b) out.result.bags.push_back(pbs[b].apex);
  for (std::size_t e = 0; e < d.shape.edges.size(); ++e)
    out.result.adhesions.push_back(pbs[nb + e].apex);

  // Induced legs: (x, a) in the adhesion fiber goes to (x, leg(a)) in the
  // bag fiber; uniqueness comes from the pullback property.
  const auto induced = [&](std::size_t adh_node, std::size_t bag_node,
                           const Hom& leg) -> Hom {
    const std::size_t nsorts = delta.cod.sorts();
    std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> index(nsorts);
    for (std::size_t s = 0; s < nsorts; ++s)
      for (std::size_t i = 0; i < pbs[bag_node].apex.carrier(s); ++i)
        index[s][{pbs[bag_node].to_left.components[s][i],
                  pbs[bag_node].to_right.components[s][i]}] = i;
    std::vector<std::vector<std::size_t>> comps(nsorts);
    for (std::size_t s = 0; s < nsorts; ++s) {
      comps[s].reserve(pbs[adh_node].apex.carrier(s));
      for (std::size_t i = 0; i < pbs[adh_node].apex.carrier(s); ++i) {
        const auto key = std::make_pair(pbs[adh_node].to_left.components[s][i],
                                        leg.components[s][pbs[adh_node].to_right.components[s][i]]);
        const auto it = index[s].find(key);
        if (it == index[s].end())
          throw InternalError("pullback_decomposition: induced leg misses the fiber");
        comps[s].push_back(it->second);
      }
    }
    return Hom{pbs[adh_node].apex, pbs[bag_node].apex, std::move(comps)};
  };

  for (std::size_t e = 0; e < d.shape.edges.size(); ++e) {
    const auto [sv, tv] = d.shape.edges[e];
    out.result.legs.push_back({induced(nb + e, sv, d.legs[e].first),
                               induced(nb + e, tv, d.legs[e].second)});
  }

  const auto out_report = validate_decomposition(out.result);
  if (!out_report.ok())
    throw InternalError("pullback_decomposition produced an invalid result: " +
                        out_report.violations.front());
  return out;
}

inline StructuredDecomposition pullback_decomposition(const StructuredDecomposition& d,
                                                      const Hom& delta) {
  return pullback_decomposition_full(d, delta).result;
}

}  // namespace lassokit
