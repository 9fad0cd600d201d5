#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lassokit/errors.hpp"
#include "lassokit/hom_search.hpp"
#include "lassokit/instance.hpp"

namespace lassokit {

namespace detail {

// Union-find whose class representative is always the least member index.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  mutable std::vector<std::size_t> parent_;
};

}  // namespace detail

// A span of homs out of a shared apex.
struct Span {
  Instance apex;
  Hom left;
  Hom right;
  bool monic;

  Span(Instance apex_, Hom left_, Hom right_)
      : apex(std::move(apex_)), left(std::move(left_)), right(std::move(right_)) {
    if (!(left.dom == apex) || !(right.dom == apex))
      throw PreconditionError("span legs must share the apex as domain");
    if (!same_schema(left.cod.schema_ptr(), right.cod.schema_ptr()) ||
        !same_schema(apex.schema_ptr(), left.cod.schema_ptr()))
      throw SchemaMismatchError("span feet live over different schemas");
    monic = is_mono(left) && is_mono(right);
  }
};

struct FiniteDiagram {
  struct Arrow {
    std::size_t src;
    std::size_t dst;
    Hom hom;
  };

  std::vector<Instance> nodes;
  std::vector<Arrow> arrows;

  void validate() const {
    for (const auto& a : arrows) {
      if (a.src >= nodes.size() || a.dst >= nodes.size())
        throw PreconditionError("diagram arrow endpoint out of range");
      if (!(a.hom.dom == nodes[a.src]) || !(a.hom.cod == nodes[a.dst]))
        throw PreconditionError("diagram arrow hom does not match its endpoints");
    }
    for (std::size_t i = 1; i < nodes.size(); ++i)
      if (!same_schema(nodes[i].schema_ptr(), nodes[0].schema_ptr()))
        throw SchemaMismatchError("diagram nodes live over different schemas");
  }
};

struct Cocone {
  FiniteDiagram diagram;
  Instance apex;
  std::vector<Hom> legs;  // one per diagram node

  // leg_j . d(a) == leg_i for every arrow a : i -> j.
  bool commutes() const {
    for (const auto& a : diagram.arrows)
      if (!(compose(legs[a.dst], a.hom) == legs[a.src])) return false;
    return true;
  }
};

struct ColimitOptions {
  // With require_consistent the induced action on a quotient class is
  // verified across all class members; a mismatch cannot occur for natural
  // arrow data and signals an internal bug. Without it the value at the
  // class representative (least member) wins.
  bool require_consistent = true;
};

// Colimit of a finite diagram: disjoint union of the nodes quotiented by the
// equivalence generated by x ~ h(x) for every arrow hom h, with actions
// induced on classes. The single quotient engine; pushout and coequalizer
// are wrappers.
inline Cocone colimit(const FiniteDiagram& d,
                      const ColimitOptions& options = {}) {
  d.validate();
  if (d.nodes.empty())
    throw PreconditionError("colimit of a diagram with no nodes needs a schema");
  const SchemaPtr schema = d.nodes[0].schema_ptr();
  const auto& p = *schema;
  const std::size_t nsorts = p.objects.size();

  std::vector<std::vector<std::size_t>> offset(d.nodes.size(),
                                               std::vector<std::size_t>(nsorts, 0));
  std::vector<std::size_t> total(nsorts, 0);
  for (std::size_t k = 0; k < d.nodes.size(); ++k)
    for (std::size_t s = 0; s < nsorts; ++s) {
      offset[k][s] = total[s];
      total[s] += d.nodes[k].carrier(s);
    }

  std::vector<detail::UnionFind> uf;
  uf.reserve(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s) uf.emplace_back(total[s]);

  for (const auto& a : d.arrows)
    for (std::size_t s = 0; s < nsorts; ++s)
      for (std::size_t x = 0; x < d.nodes[a.src].carrier(s); ++x)
        uf[s].unite(offset[a.src][s] + x, offset[a.dst][s] + a.hom.components[s][x]);

  // Dense class ids in increasing order of least representative.
  std::vector<std::vector<std::size_t>> class_of(nsorts);
  std::vector<std::size_t> carriers(nsorts, 0);
  for (std::size_t s = 0; s < nsorts; ++s) {
    class_of[s].assign(total[s], 0);
    std::vector<std::size_t> rep_to_class(total[s], static_cast<std::size_t>(-1));
    for (std::size_t x = 0; x < total[s]; ++x) {
      const auto r = uf[s].find(x);
      if (rep_to_class[r] == static_cast<std::size_t>(-1))
        rep_to_class[r] = carriers[s]++;
      class_of[s][x] = rep_to_class[r];
    }
  }

  const auto decode = [&](std::size_t sort, std::size_t global)
      -> std::pair<std::size_t, std::size_t> {
    std::size_t k = d.nodes.size() - 1;
    while (offset[k][sort] > global) --k;
    return {k, global - offset[k][sort]};
  };

  std::vector<std::vector<std::size_t>> actions(p.generators.size());
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    const auto ds = *p.object_index(p.generators[g].dom);
    const auto cs = *p.object_index(p.generators[g].cod);
    actions[g].assign(carriers[ds], static_cast<std::size_t>(-1));
    for (std::size_t x = 0; x < total[ds]; ++x) {
      const auto [k, local] = decode(ds, x);
      const auto value = class_of[cs][offset[k][cs] + d.nodes[k].action(g)[local]];
      auto& slot = actions[g][class_of[ds][x]];
      if (slot == static_cast<std::size_t>(-1)) {
        slot = value;  // classes are scanned rep-first, so this is the rep value
      } else if (options.require_consistent && slot != value) {
        throw InternalError("colimit: induced action '" + p.generators[g].name +
                            "' is ill-defined on a quotient class");
      }
    }
  }

  Instance apex = [&] {
    try {
      return Instance(schema, carriers, std::move(actions));
    } catch (const PreconditionError& e) {
      if (options.require_consistent)
        throw InternalError(std::string("colimit: quotient violates equations: ") +
                            e.what());
      throw;
    }
  }();

  std::vector<Hom> legs;
  legs.reserve(d.nodes.size());
  for (std::size_t k = 0; k < d.nodes.size(); ++k) {
    std::vector<std::vector<std::size_t>> comps(nsorts);
    for (std::size_t s = 0; s < nsorts; ++s) {
      comps[s].resize(d.nodes[k].carrier(s));
      for (std::size_t x = 0; x < d.nodes[k].carrier(s); ++x)
        comps[s][x] = class_of[s][offset[k][s] + x];
    }
    legs.push_back(Hom{d.nodes[k], apex, std::move(comps)});
  }

  return Cocone{d, std::move(apex), std::move(legs)};
}

struct PushoutResult {
  Instance apex;
  Hom left_leg;   // left foot  -> apex
  Hom right_leg;  // right foot -> apex
};

inline PushoutResult pushout(const Span& s, const ColimitOptions& options = {}) {
  FiniteDiagram d{{s.apex, s.left.cod, s.right.cod},
                  {{0, 1, s.left}, {0, 2, s.right}}};
  auto cocone = colimit(d, options);
  PushoutResult result{std::move(cocone.apex), std::move(cocone.legs[1]),
                       std::move(cocone.legs[2])};
  // Monos are stable under pushout; a violation is a bug in the engine.
  if (s.monic && options.require_consistent &&
      (!is_mono(result.left_leg) || !is_mono(result.right_leg)))
    throw InternalError("pushout of a monic span produced a non-monic leg");
  return result;
}

struct CoequalizerResult {
  Instance apex;
  Hom proj;  // shared codomain -> apex
};

inline CoequalizerResult coequalizer(const Hom& a, const Hom& b,
                                     const ColimitOptions& options = {}) {
  if (!(a.dom == b.dom) || !(a.cod == b.cod))
    throw PreconditionError("coequalizer needs a parallel pair");
  FiniteDiagram d{{a.dom, a.cod}, {{0, 1, a}, {0, 1, b}}};
  auto cocone = colimit(d, options);
  return CoequalizerResult{std::move(cocone.apex), std::move(cocone.legs[1])};
}

struct PullbackResult {
  Instance apex;
  Hom to_left;   // apex -> dom(f)
  Hom to_right;  // apex -> dom(g)
};

// Pointwise fiber product of a cospan f : A -> C <- B : g, pairs in
// lexicographic order.
inline PullbackResult pullback(const Hom& f, const Hom& g) {
  if (!(f.cod == g.cod))
    throw PreconditionError("pullback needs a shared codomain");
  const SchemaPtr schema = f.dom.schema_ptr();
  const auto& p = *schema;
  const std::size_t nsorts = p.objects.size();

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(nsorts);
  std::vector<std::size_t> carriers(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s) {
    for (std::size_t x = 0; x < f.dom.carrier(s); ++x)
      for (std::size_t y = 0; y < g.dom.carrier(s); ++y)
        if (f.components[s][x] == g.components[s][y]) pairs[s].push_back({x, y});
    carriers[s] = pairs[s].size();
  }

  const auto index_of = [&](std::size_t s, std::size_t x, std::size_t y) {
    const auto it = std::lower_bound(pairs[s].begin(), pairs[s].end(),
                                     std::make_pair(x, y));
    if (it == pairs[s].end() || *it != std::make_pair(x, y))
      throw InternalError("pullback: actions do not restrict to the fiber product");
    return static_cast<std::size_t>(it - pairs[s].begin());
  };

  std::vector<std::vector<std::size_t>> actions(p.generators.size());
  for (std::size_t gidx = 0; gidx < p.generators.size(); ++gidx) {
    const auto ds = *p.object_index(p.generators[gidx].dom);
    const auto cs = *p.object_index(p.generators[gidx].cod);
    actions[gidx].reserve(carriers[ds]);
    for (const auto& [x, y] : pairs[ds])
      actions[gidx].push_back(
          index_of(cs, f.dom.action(gidx)[x], g.dom.action(gidx)[y]));
  }

  Instance apex(schema, carriers, std::move(actions));
  std::vector<std::vector<std::size_t>> pl(nsorts), pr(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s)
    for (const auto& [x, y] : pairs[s]) {
      pl[s].push_back(x);
      pr[s].push_back(y);
    }
  return PullbackResult{apex, Hom{apex, f.dom, std::move(pl)},
                        Hom{apex, g.dom, std::move(pr)}};
}

struct ImageFactorization {
  Hom epi;        // dom(h) ->> image
  Instance image;
  Hom mono;       // image >-> cod(h)
};

// Epi-mono factorization through the pointwise image; image elements keep
// the order they have in the codomain.
inline ImageFactorization image_factorization(const Hom& h) {
  const SchemaPtr schema = h.dom.schema_ptr();
  const auto& p = *schema;
  const std::size_t nsorts = p.objects.size();

  std::vector<std::vector<std::size_t>> img_elems(nsorts);  // cod indices, ascending
  std::vector<std::vector<std::size_t>> cod_to_img(nsorts);
  std::vector<std::size_t> carriers(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s) {
    std::vector<bool> hit(h.cod.carrier(s), false);
    for (auto y : h.components[s]) hit[y] = true;
    cod_to_img[s].assign(h.cod.carrier(s), static_cast<std::size_t>(-1));
    for (std::size_t y = 0; y < hit.size(); ++y)
      if (hit[y]) {
        cod_to_img[s][y] = img_elems[s].size();
        img_elems[s].push_back(y);
      }
    carriers[s] = img_elems[s].size();
  }

  std::vector<std::vector<std::size_t>> actions(p.generators.size());
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    const auto ds = *p.object_index(p.generators[g].dom);
    const auto cs = *p.object_index(p.generators[g].cod);
    actions[g].reserve(carriers[ds]);
    for (auto y : img_elems[ds]) {
      const auto target = cod_to_img[cs][h.cod.action(g)[y]];
      if (target == static_cast<std::size_t>(-1))
        throw InternalError("image of a non-natural hom is not action-closed");
      actions[g].push_back(target);
    }
  }

  Instance image(schema, carriers, std::move(actions));
  std::vector<std::vector<std::size_t>> epi_comps(nsorts), mono_comps(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s) {
    epi_comps[s].reserve(h.components[s].size());
    for (auto y : h.components[s]) epi_comps[s].push_back(cod_to_img[s][y]);
    mono_comps[s] = img_elems[s];
  }
  return ImageFactorization{Hom{h.dom, image, std::move(epi_comps)}, image,
                            Hom{image, h.cod, std::move(mono_comps)}};
}

// The map out of the canonical colimit induced by an arbitrary cocone over
// the same diagram; nullopt when the legs do not agree on a quotient class
// (i.e. the candidate legs do not form a cocone).
inline std::optional<Hom> mediating_map(const Cocone& canonical,
                                        const Instance& apex,
                                        const std::vector<Hom>& legs) {
  const std::size_t nsorts = canonical.apex.sorts();
  std::vector<std::vector<std::size_t>> med(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s)
    med[s].assign(canonical.apex.carrier(s), static_cast<std::size_t>(-1));
  for (std::size_t k = 0; k < canonical.legs.size(); ++k)
    for (std::size_t s = 0; s < nsorts; ++s)
      for (std::size_t x = 0; x < canonical.legs[k].dom.carrier(s); ++x) {
        const auto cls = canonical.legs[k].components[s][x];
        const auto value = legs[k].components[s][x];
        if (med[s][cls] == static_cast<std::size_t>(-1))
          med[s][cls] = value;
        else if (med[s][cls] != value)
          return std::nullopt;
      }
  return Hom{canonical.apex, apex, std::move(med)};
}

// True iff the cocone is colimiting: the canonical mediating map to its apex
// is an isomorphism.
inline bool is_colimit_cocone(const Cocone& c) {
  if (c.legs.size() != c.diagram.nodes.size()) return false;
  if (!c.commutes()) return false;
  const auto canonical = colimit(c.diagram);
  const auto med = mediating_map(canonical, c.apex, c.legs);
  return med && is_iso(*med);
}

}  // namespace lassokit
