#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lassokit/colimit.hpp"
#include "lassokit/decomposition.hpp"
#include "lassokit/errors.hpp"
#include "lassokit/lasso.hpp"
#include "lassokit/universe.hpp"

namespace lassokit {

// The contraction of base along a monic subobject: the pushout of the
// subobject against the lasso unit at its domain.
struct Contraction {
  Instance base;      // Y
  Hom sub;            // f : X >-> Y
  std::string lasso;
  Instance lambda_x;  // image of X under the lasso
  Hom eta_x;          // X ->> lambda_x
  Instance result;    // Y/f
  Hom quotient;       // Y ->> Y/f
  Hom co_leg;         // lambda_x -> Y/f
};

inline Contraction contract(const Instance& base, const Hom& sub, const Lasso& L) {
  if (!same_schema(base.schema_ptr(), L.schema))
    throw SchemaMismatchError("contract: lasso schema differs from the instance schema");
  if (!(sub.cod == base))
    throw PreconditionError("contract: subobject codomain is not the base instance");
  if (!is_mono(sub)) {
    for (std::size_t s = 0; s < sub.components.size(); ++s) {
      std::vector<bool> seen(sub.cod.carrier(s), false);
      for (auto y : sub.components[s]) {
        if (seen[y])
          throw PreconditionError("contract: subobject is not monic at sort '" +
                                  base.schema().objects[s] + "'");
        seen[y] = true;
      }
    }
  }
  auto eta = L.eta(sub.dom);
  auto po = pushout(Span(sub.dom, eta, sub),
                    ColimitOptions{/*require_consistent=*/false});
  if (!is_epi(po.right_leg))
    throw InternalError("contract: quotient map is not epi");
  return Contraction{base,          sub,
                     L.name,        eta.cod,
                     std::move(eta), std::move(po.apex),
                     std::move(po.right_leg), std::move(po.left_leg)};
}

struct PushforwardIntermediates {
  StructuredDecomposition pulled_back;  // pointwise fibers over the subobject
  FiniteDiagram q;                      // their images inside lambda_x
  FiniteDiagram h;                      // pointwise pushouts q +_x d
  std::vector<Hom> h_to_result;         // cocone legs h(i) -> contraction result
};

struct PushforwardResult {
  std::string method;  // "images" or "span"
  StructuredDecomposition input;
  Contraction contraction;
  StructuredDecomposition output;
  std::vector<Hom> bag_maps;       // input bag ->> output bag
  std::vector<Hom> adhesion_maps;  // input adhesion ->> output adhesion
  std::optional<PushforwardIntermediates> intermediates;
};

namespace detail {

struct AlignedDecomposition {
  Cocone cocone;            // over to_diagram(d)
  std::vector<Hom> legs;    // node -> cod(sub), cocone legs through the iso
};

inline AlignedDecomposition align_colimit(const StructuredDecomposition& d,
                                          const Instance& target) {
  auto cocone = decomposition_colimit(d);
  const auto iso = find_isomorphism(cocone.apex, target);
  if (!iso)
    throw ColimitMismatchError(
        "decomposition colimit is not isomorphic to the contraction base");
  AlignedDecomposition out{std::move(cocone), {}};
  for (const auto& leg : out.cocone.legs) out.legs.push_back(compose(*iso, leg));
  return out;
}

inline void check_pushforward_invariants(const PushforwardResult& r) {
  if (!(r.output.shape == r.input.shape))
    throw InternalError("pushforward changed the decomposition shape");
  if (!width_leq(width_vector(r.output), width_vector(r.input)))
    throw InternalError("pushforward increased the width");
  for (const auto& m : r.bag_maps)
    if (!is_epi(m)) throw InternalError("pushforward bag map is not epi");
  const auto report = validate_decomposition(r.output);
  if (!report.ok())
    throw InternalError("pushforward output is invalid: " + report.violations.front());
}

}  // namespace detail

// Pushforward by images: factor every (contraction . cocone leg) through its
// image and connect the images with the unique mediating monos.
inline PushforwardResult pushforward_images(const StructuredDecomposition& d,
                                            const Hom& sub, const Lasso& L) {
  const auto dreport = validate_decomposition(d);
  if (!dreport.ok())
    throw PreconditionError("pushforward: invalid decomposition: " +
                            dreport.violations.front());
  const auto aligned = detail::align_colimit(d, sub.cod);
  auto ctr = contract(sub.cod, sub, L);

  const auto diagram = to_diagram(d);
  std::vector<Hom> legs;
  legs.reserve(aligned.legs.size());
  for (const auto& leg : aligned.legs) legs.push_back(compose(ctr.quotient, leg));
  const auto di = diagram_of_images(diagram, Cocone{diagram, ctr.result, legs});

  PushforwardResult result{
      "images",
      d,
      std::move(ctr),
      decomposition_from_diagram(d.shape, di.diagram),
      {di.node_epis.begin(), di.node_epis.begin() + static_cast<long>(d.bags.size())},
      {di.node_epis.begin() + static_cast<long>(d.bags.size()), di.node_epis.end()},
      std::nullopt};
  detail::check_pushforward_invariants(result);
  return result;
}

// Pushforward as a pushout of diagrams: pull the subobject back pointwise,
// image the fibers inside lambda_x, push out pointwise, and take the diagram
// of images of the resulting colimit cocone.
inline PushforwardResult pushforward_span(const StructuredDecomposition& d,
                                          const Hom& sub, const Lasso& L) {
  const auto dreport = validate_decomposition(d);
  if (!dreport.ok())
    throw PreconditionError("pushforward: invalid decomposition: " +
                            dreport.violations.front());
  if (!d.shape.is_forest() && L.declared_strength != Strength::strong)
    throw PreconditionError(
        "pushforward along a cyclic shape requires a strong lasso; '" + L.name +
        "' is not known to be strong");
  const auto aligned = detail::align_colimit(d, sub.cod);
  auto ctr = contract(sub.cod, sub, L);
  const auto diagram = to_diagram(d);
  const std::size_t nnodes = diagram.nodes.size();
  const ColimitOptions lenient{/*require_consistent=*/false};

  // Fibers x(i) = X x_Y d(i) with their projections.
  const auto pulled = pullback_decomposition_full(d, sub);
  const auto xdiagram = to_diagram(pulled.result);

  // q(i): images of the fibers inside lambda_x under eta . projection.
  std::vector<Hom> q_legs;
  for (std::size_t i = 0; i < nnodes; ++i)
    q_legs.push_back(compose(ctr.eta_x, pulled.node_to_domain[i]));
  const auto qdi = diagram_of_images(xdiagram, Cocone{xdiagram, ctr.lambda_x, q_legs});

  // h(i) = q(i) +_{x(i)} d(i), as a three-node colimit to keep all legs.
  std::vector<Cocone> h_cocones;
  h_cocones.reserve(nnodes);
  for (std::size_t i = 0; i < nnodes; ++i) {
    FiniteDiagram three{{xdiagram.nodes[i], qdi.diagram.nodes[i], diagram.nodes[i]},
                        {{0, 1, qdi.node_epis[i]}, {0, 2, pulled.node_to_base[i]}}};
    h_cocones.push_back(colimit(three, lenient));
  }

  // Arrows of h, induced on the pointwise pushouts. The three diagrams share
  // arrow order, one pair per shape edge.
  FiniteDiagram hdiagram;
  for (const auto& c : h_cocones) hdiagram.nodes.push_back(c.apex);
  for (std::size_t ai = 0; ai < diagram.arrows.size(); ++ai) {
    const auto& a = diagram.arrows[ai];
    const Hom& qa = qdi.diagram.arrows[ai].hom;
    const Hom& xa = xdiagram.arrows[ai].hom;
    std::vector<Hom> target_legs{
        compose(h_cocones[a.dst].legs[0], xa),
        compose(h_cocones[a.dst].legs[1], qa),
        compose(h_cocones[a.dst].legs[2], a.hom)};
    const auto med = mediating_map(h_cocones[a.src], h_cocones[a.dst].apex, target_legs);
    if (!med)
      throw InternalError("pushforward: pointwise pushout arrow is ill-defined");
    hdiagram.arrows.push_back({a.src, a.dst, *med});
  }

  // Colimit of h and the comparison iso onto the contraction result.
  const auto omega = colimit(hdiagram, lenient);
  std::vector<Hom> into_result;
  into_result.reserve(nnodes);
  for (std::size_t i = 0; i < nnodes; ++i) {
    std::vector<Hom> target_legs{
        compose(ctr.quotient, compose(aligned.legs[i], pulled.node_to_base[i])),
        compose(ctr.co_leg, qdi.node_monos[i]),
        compose(ctr.quotient, aligned.legs[i])};
    const auto leg = mediating_map(h_cocones[i], ctr.result, target_legs);
    if (!leg) throw InternalError("pushforward: no map from h(i) to the contraction");
    into_result.push_back(*leg);
  }
  const auto comparison = mediating_map(omega, ctr.result, into_result);
  if (!comparison || !is_iso(*comparison))
    throw InternalError("pushforward: colimit of h is not the contraction result");

  // Final diagram of images, taken directly inside the contraction result.
  std::vector<Hom> final_legs;
  final_legs.reserve(nnodes);
  for (std::size_t i = 0; i < nnodes; ++i)
    final_legs.push_back(compose(*comparison, omega.legs[i]));
  const auto final_di =
      diagram_of_images(hdiagram, Cocone{hdiagram, ctr.result, final_legs});

  std::vector<Hom> bag_maps, adhesion_maps;
  for (std::size_t i = 0; i < nnodes; ++i) {
    // d(i) -> h(i) ->> image; the first factor is a pushout of an epi.
    Hom to_image = compose(final_di.node_epis[i], h_cocones[i].legs[2]);
    if (i < d.bags.size())
      bag_maps.push_back(std::move(to_image));
    else
      adhesion_maps.push_back(std::move(to_image));
  }
  PushforwardResult result{
      "span",
      d,
      std::move(ctr),
      decomposition_from_diagram(d.shape, final_di.diagram),
      std::move(bag_maps),
      std::move(adhesion_maps),
      PushforwardIntermediates{pulled.result, qdi.diagram, hdiagram, final_legs}};
  detail::check_pushforward_invariants(result);
  return result;
}

struct EquivalenceReport {
  bool equal = false;
  std::vector<std::size_t> differing_nodes;  // node ids in diagram order
};

// The two constructions agree node by node: both produce the images of the
// contracted cocone legs inside the same contraction result.
inline EquivalenceReport equivalence_check(const StructuredDecomposition& d,
                                           const Hom& sub, const Lasso& L) {
  const auto a = pushforward_images(d, sub, L);
  const auto b = pushforward_span(d, sub, L);
  EquivalenceReport report;
  report.equal = true;
  const std::size_t nb = d.bags.size();
  for (std::size_t i = 0; i < nb; ++i)
    if (!(a.output.bags[i] == b.output.bags[i])) {
      report.equal = false;
      report.differing_nodes.push_back(i);
    }
  for (std::size_t e = 0; e < d.adhesions.size(); ++e) {
    const bool same = a.output.adhesions[e] == b.output.adhesions[e] &&
                      a.output.legs[e].first == b.output.legs[e].first &&
                      a.output.legs[e].second == b.output.legs[e].second;
    if (!same) {
      report.equal = false;
      report.differing_nodes.push_back(nb + e);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Composite-contraction search

struct Conjecture52Result {
  bool found = false;
  std::optional<Hom> witness;      // subobject X >-> Y realizing the composite
  std::optional<Hom> comparison;   // iso Y/X -> (Y/f1)/f2
  std::size_t subobjects_tried = 0;
};

// Searches the subobjects of the base for one whose single contraction equals
// the composite of two successive contractions, quotient maps included.
inline Conjecture52Result conjecture52_probe(const Instance& base, const Hom& f1,
                                             const Hom& f2, const Lasso& L,
                                             std::size_t max_total_elements = 16) {
  const auto c1 = contract(base, f1, L);
  if (!(f2.cod == c1.result))
    throw PreconditionError("second subobject must map into the first contraction");
  const auto c2 = contract(c1.result, f2, L);
  const auto composite = compose(c2.quotient, c1.quotient);

  Conjecture52Result result;
  for (const auto& sub : enumerate_subobjects(base, max_total_elements)) {
    ++result.subobjects_tried;
    const auto c = contract(base, sub, L);
    // The comparison iso is forced by the quotients being epi.
    std::vector<std::vector<std::size_t>> comps(c.result.sorts());
    bool ok = true;
    for (std::size_t s = 0; s < comps.size() && ok; ++s) {
      comps[s].assign(c.result.carrier(s), static_cast<std::size_t>(-1));
      for (std::size_t y = 0; y < base.carrier(s) && ok; ++y) {
        auto& slot = comps[s][c.quotient.components[s][y]];
        if (slot == static_cast<std::size_t>(-1))
          slot = composite.components[s][y];
        else if (slot != composite.components[s][y])
          ok = false;
      }
    }
    if (!ok) continue;
    Hom comparison{c.result, c2.result, std::move(comps)};
    if (!is_iso(comparison) || !check_hom(comparison).ok()) continue;
    result.found = true;
    result.witness = sub;
    result.comparison = std::move(comparison);
    break;
  }
  return result;
}

}  // namespace lassokit
