#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lassokit/colimit.hpp"
#include "lassokit/errors.hpp"
#include "lassokit/instance.hpp"
#include "lassokit/universe.hpp"

namespace lassokit {

enum class Strength { strong, weak, unknown };

// A functor-with-unit pair: an object action, a hom action, and one epi
// component per instance. Whether the pair actually satisfies the lasso
// axioms is the business of the checkers, not the type.
struct Lasso {
  std::string name;
  SchemaPtr schema;
  Strength declared_strength = Strength::unknown;
  std::function<Instance(const Instance&)> on_object;
  std::function<Hom(const Instance&)> eta;    // X -> on_object(X)
  std::function<Hom(const Hom&)> on_hom;
};

namespace detail {

using KernelFn = std::function<Kernel(const Instance&)>;

// Quotient lasso: the object action quotients by the kernel (actions taken
// at class representatives), eta is the projection, and the hom action is
// the unique map commuting with the projections. Non-uniqueness cannot
// happen (eta is epi); non-existence is a loud failure.
inline Lasso make_quotient_lasso(std::string name, SchemaPtr schema,
                                 KernelFn kernel_fn, Strength strength) {
  Lasso L;
  L.name = std::move(name);
  L.schema = std::move(schema);
  L.declared_strength = strength;
  L.on_object = [kernel_fn](const Instance& x) {
    return quotient_by_kernel(x, normalize_kernel(kernel_fn(x))).cod;
  };
  L.eta = [kernel_fn](const Instance& x) {
    return quotient_by_kernel(x, normalize_kernel(kernel_fn(x)));
  };
  L.on_hom = [kernel_fn, name = L.name](const Hom& f) {
    const auto qd = quotient_by_kernel(f.dom, normalize_kernel(kernel_fn(f.dom)));
    const auto qc = quotient_by_kernel(f.cod, normalize_kernel(kernel_fn(f.cod)));
    std::vector<std::vector<std::size_t>> comps(qd.cod.sorts());
    for (std::size_t s = 0; s < comps.size(); ++s) {
      comps[s].assign(qd.cod.carrier(s), static_cast<std::size_t>(-1));
      for (std::size_t x = 0; x < f.dom.carrier(s); ++x) {
        const auto cls = qd.components[s][x];
        const auto value = qc.components[s][f.components[s][x]];
        if (comps[s][cls] == static_cast<std::size_t>(-1))
          comps[s][cls] = value;
        else if (comps[s][cls] != value)
          throw InternalError("lasso '" + name +
                              "': hom action is not well-defined on classes");
      }
    }
    return Hom{qd.cod, qc.cod, std::move(comps)};
  };
  return L;
}

// Connectivity classes of the vertex sort, generated by all edge-like
// generators (every pair of generators out of a shared sort into V).
inline std::vector<std::size_t> vertex_components(const Instance& x,
                                                  std::size_t vertex_sort) {
  const auto& p = x.schema();
  UnionFind uf(x.carrier(vertex_sort));
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    const auto gd = *p.object_index(p.generators[g].dom);
    const auto gc = *p.object_index(p.generators[g].cod);
    if (gc != vertex_sort) continue;
    for (std::size_t h = 0; h < p.generators.size(); ++h) {
      if (h == g) continue;
      const auto hd = *p.object_index(p.generators[h].dom);
      const auto hc = *p.object_index(p.generators[h].cod);
      if (hd != gd || hc != vertex_sort) continue;
      for (std::size_t e = 0; e < x.carrier(gd); ++e)
        uf.unite(x.action(g)[e], x.action(h)[e]);
    }
  }
  std::vector<std::size_t> cls(x.carrier(vertex_sort));
  std::vector<std::size_t> relabel(x.carrier(vertex_sort), static_cast<std::size_t>(-1));
  std::size_t next = 0;
  for (std::size_t v = 0; v < cls.size(); ++v) {
    const auto r = uf.find(v);
    if (relabel[r] == static_cast<std::size_t>(-1)) relabel[r] = next++;
    cls[v] = relabel[r];
  }
  return cls;
}

inline std::vector<std::size_t> discrete_classes(std::size_t n) {
  std::vector<std::size_t> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = i;
  return cls;
}

// Groups the elements of a carrier by a key; class ids in first-appearance
// order.
inline std::vector<std::size_t> group_by(std::size_t n,
                                         const std::function<long long(std::size_t)>& key) {
  std::vector<std::size_t> cls(n);
  std::vector<long long> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = key(i);
    auto it = std::find(seen.begin(), seen.end(), k);
    if (it == seen.end()) {
      cls[i] = seen.size();
      seen.push_back(k);
    } else {
      cls[i] = static_cast<std::size_t>(it - seen.begin());
    }
  }
  return cls;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Built-in lassos

inline Lasso lasso_trivial(SchemaPtr schema) {
  Lasso L;
  L.name = "trivial";
  L.schema = std::move(schema);
  L.declared_strength = Strength::strong;
  L.on_object = [](const Instance& x) { return x; };
  L.eta = [](const Instance& x) { return identity_hom(x); };
  L.on_hom = [](const Hom& f) { return f; };
  return L;
}

// Connected components on directed multigraphs: vertices collapse to their
// components, edges are untouched and become loops.
inline Lasso lasso_cc() {
  return detail::make_quotient_lasso(
      "cc", grph_schema(),
      [](const Instance& x) {
        return Kernel{detail::vertex_components(x, 0),
                      detail::discrete_classes(x.carrier(1))};
      },
      Strength::strong);
}

enum class RGrphLasso {
  cc,              // collapse vertices to components, edges untouched
  deloop,          // identify loops sharing their endvertex
  source,          // collapse vertices; identify edges sharing a source
  target,          // collapse vertices; identify edges sharing a target
  gather,          // collapse vertices; identify loops inside one component
  cc_then_deloop,  // deloop first, then cc
  deloop_then_cc,  // cc first, then deloop: the terminal lasso
};

Lasso compose_lassos(const Lasso& outer, const Lasso& inner);

inline Lasso lasso_rgrph(RGrphLasso kind) {
  const auto schema = rgrph_schema();
  const auto components = [](const Instance& x) {
    return detail::vertex_components(x, 0);
  };
  switch (kind) {
    case RGrphLasso::cc:
      return detail::make_quotient_lasso(
          "rgrph:cc", schema,
          [components](const Instance& x) {
            return Kernel{components(x), detail::discrete_classes(x.carrier(1))};
          },
          Strength::unknown);
    case RGrphLasso::deloop:
      return detail::make_quotient_lasso(
          "rgrph:deloop", schema,
          [](const Instance& x) {
            const auto& s = x.action(0);
            const auto& t = x.action(1);
            return Kernel{detail::discrete_classes(x.carrier(0)),
                          detail::group_by(x.carrier(1), [&](std::size_t e) {
                            // loops key on their vertex; other edges stay apart
                            return s[e] == t[e]
                                       ? static_cast<long long>(s[e])
                                       : -static_cast<long long>(e) - 1;
                          })};
          },
          Strength::weak);
    case RGrphLasso::source:
      return detail::make_quotient_lasso(
          "rgrph:source", schema,
          [components](const Instance& x) {
            const auto& s = x.action(0);
            return Kernel{components(x),
                          detail::group_by(x.carrier(1), [&](std::size_t e) {
                            return static_cast<long long>(s[e]);
                          })};
          },
          Strength::unknown);
    case RGrphLasso::target:
      return detail::make_quotient_lasso(
          "rgrph:target", schema,
          [components](const Instance& x) {
            const auto& t = x.action(1);
            return Kernel{components(x),
                          detail::group_by(x.carrier(1), [&](std::size_t e) {
                            return static_cast<long long>(t[e]);
                          })};
          },
          Strength::unknown);
    case RGrphLasso::gather:
      return detail::make_quotient_lasso(
          "rgrph:gather", schema,
          [components](const Instance& x) {
            const auto comp = components(x);
            const auto& s = x.action(0);
            const auto& t = x.action(1);
            return Kernel{comp, detail::group_by(x.carrier(1), [&](std::size_t e) {
                            return s[e] == t[e]
                                       ? static_cast<long long>(comp[s[e]])
                                       : -static_cast<long long>(e) - 1;
                          })};
          },
          Strength::unknown);
    case RGrphLasso::cc_then_deloop:
      return compose_lassos(lasso_rgrph(RGrphLasso::cc),
                            lasso_rgrph(RGrphLasso::deloop));
    case RGrphLasso::deloop_then_cc: {
      // All edges inside one component collapse to a single loop.
      auto L = detail::make_quotient_lasso(
          "rgrph:terminal", schema,
          [components](const Instance& x) {
            const auto comp = components(x);
            const auto& s = x.action(0);
            return Kernel{comp, detail::group_by(x.carrier(1), [&](std::size_t e) {
                            return static_cast<long long>(comp[s[e]]);
                          })};
          },
          Strength::unknown);
      return L;
    }
  }
  throw PreconditionError("unknown RGrph lasso kind");
}

// Negative fixture: identify parallel edges (including parallel loops). Not
// a lasso; it fails monic pushout preservation.
inline Lasso rgrph_smoothing_fixture() {
  return detail::make_quotient_lasso(
      "smoothing", rgrph_schema(),
      [](const Instance& x) {
        const auto& s = x.action(0);
        const auto& t = x.action(1);
        const auto n = static_cast<long long>(x.carrier(0));
        return Kernel{detail::discrete_classes(x.carrier(0)),
                      detail::group_by(x.carrier(1), [&](std::size_t e) {
                        return static_cast<long long>(s[e]) * n +
                               static_cast<long long>(t[e]);
                      })};
      },
      Strength::unknown);
}

// Collapse vertices joined by edges of the selected colours.
inline Lasso lasso_color(std::size_t k, const std::set<std::size_t>& colors) {
  if (colors.empty()) throw PreconditionError("colour set must be nonempty");
  for (auto c : colors)
    if (c < 1 || c > k)
      throw PreconditionError("colour " + std::to_string(c) + " out of range");
  std::string name = "color:{";
  for (auto c : colors) name += (name.back() == '{' ? "" : ",") + std::to_string(c);
  name += "}";
  return detail::make_quotient_lasso(
      name, cgr_schema(k),
      [k, colors](const Instance& x) {
        detail::UnionFind uf(x.carrier(0));
        for (auto c : colors)
          for (std::size_t e = 0; e < x.carrier(c); ++e)
            uf.unite(x.action(2 * (c - 1))[e], x.action(2 * (c - 1) + 1)[e]);
        std::vector<std::size_t> cls(x.carrier(0));
        std::vector<std::size_t> relabel(x.carrier(0), static_cast<std::size_t>(-1));
        std::size_t next = 0;
        for (std::size_t v = 0; v < cls.size(); ++v) {
          const auto r = uf.find(v);
          if (relabel[r] == static_cast<std::size_t>(-1)) relabel[r] = next++;
          cls[v] = relabel[r];
        }
        Kernel kr{std::move(cls)};
        for (std::size_t c = 1; c <= k; ++c)
          kr.push_back(detail::discrete_classes(x.carrier(c)));
        return kr;
      },
      Strength::unknown);
}

// Composition applies the inner lasso first: eta is the inner projection
// followed by the outer projection at the inner image.
inline Lasso compose_lassos(const Lasso& outer, const Lasso& inner) {
  if (!same_schema(outer.schema, inner.schema))
    throw SchemaMismatchError("lasso composition needs a shared schema");
  Lasso L;
  L.name = outer.name + "." + inner.name;
  L.schema = outer.schema;
  L.declared_strength = (outer.declared_strength == Strength::strong &&
                         inner.declared_strength == Strength::strong)
                            ? Strength::strong
                            : Strength::unknown;
  auto out_obj = outer.on_object;
  auto out_eta = outer.eta;
  auto out_hom = outer.on_hom;
  auto in_obj = inner.on_object;
  auto in_eta = inner.eta;
  auto in_hom = inner.on_hom;
  L.on_object = [out_obj, in_obj](const Instance& x) { return out_obj(in_obj(x)); };
  L.eta = [out_eta, in_eta](const Instance& x) {
    auto first = in_eta(x);
    auto second = out_eta(first.cod);
    return compose(second, first);
  };
  L.on_hom = [out_hom, in_hom](const Hom& f) { return out_hom(in_hom(f)); };
  return L;
}

}  // namespace lassokit
