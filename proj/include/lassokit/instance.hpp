#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lassokit/errors.hpp"
#include "lassokit/schema.hpp"

namespace lassokit {

// A finite copresheaf on a schema: one dense carrier 0..n-1 per sort, one
// total function per generator. Equation validity is checked at
// construction; an Instance value is immutable afterwards.
class Instance {
 public:
  Instance(SchemaPtr schema, std::vector<std::size_t> carriers,
           std::vector<std::vector<std::size_t>> actions)
      : schema_(std::move(schema)),
        carriers_(std::move(carriers)),
        actions_(std::move(actions)) {
    validate();
  }

  const SchemaPresentation& schema() const { return *schema_; }
  const SchemaPtr& schema_ptr() const { return schema_; }
  std::size_t sorts() const { return carriers_.size(); }
  std::size_t carrier(std::size_t sort) const { return carriers_.at(sort); }
  const std::vector<std::size_t>& carriers() const { return carriers_; }
  const std::vector<std::size_t>& action(std::size_t gen) const {
    return actions_.at(gen);
  }
  const std::vector<std::vector<std::size_t>>& actions() const { return actions_; }

  std::size_t total_elements() const {
    std::size_t n = 0;
    for (auto c : carriers_) n += c;
    return n;
  }

  // Structural equality: equal presentations, identical carriers and actions.
  friend bool operator==(const Instance& a, const Instance& b) {
    return same_schema(a.schema_, b.schema_) && a.carriers_ == b.carriers_ &&
           a.actions_ == b.actions_;
  }

 private:
  void validate() const {
    if (!schema_) throw PreconditionError("instance without schema");
    const auto& p = *schema_;
    if (carriers_.size() != p.objects.size())
      throw PreconditionError("carrier count does not match sort count");
    if (actions_.size() != p.generators.size())
      throw PreconditionError("action count does not match generator count");
    for (std::size_t g = 0; g < actions_.size(); ++g) {
      const auto dom = *p.object_index(p.generators[g].dom);
      const auto cod = *p.object_index(p.generators[g].cod);
      if (actions_[g].size() != carriers_[dom])
        throw PreconditionError("action '" + p.generators[g].name +
                                "' has wrong domain size");
      for (auto y : actions_[g])
        if (y >= carriers_[cod])
          throw PreconditionError("action '" + p.generators[g].name +
                                  "' maps outside its codomain carrier");
    }
    for (std::size_t e = 0; e < p.equations.size(); ++e) {
      if (!equation_holds(p.equations[e]))
        throw PreconditionError("schema equation " + std::to_string(e) +
                                " fails on instance");
    }
  }

  bool equation_holds(const PathEquation& eq) const {
    const auto& p = *schema_;
    // Both paths share their endpoints (validated schema); apply elementwise.
    std::size_t dom_sort;
    if (!eq.lhs.empty())
      dom_sort = *p.object_index(p.generators[*p.generator_index(eq.lhs.front())].dom);
    else if (!eq.rhs.empty())
      dom_sort = *p.object_index(p.generators[*p.generator_index(eq.rhs.front())].dom);
    else
      return true;
    for (std::size_t x = 0; x < carriers_[dom_sort]; ++x)
      if (apply_path(eq.lhs, x) != apply_path(eq.rhs, x)) return false;
    return true;
  }

  std::size_t apply_path(const std::vector<std::string>& path, std::size_t x) const {
    const auto& p = *schema_;
    for (const auto& g : path) x = actions_[*p.generator_index(g)][x];
    return x;
  }

  SchemaPtr schema_;
  std::vector<std::size_t> carriers_;
  std::vector<std::vector<std::size_t>> actions_;
};

// A morphism of instances as raw data: one component function per sort.
// Values are constructible in any state; check_hom reports whether the
// naturality squares actually commute.
struct Hom {
  Instance dom;
  Instance cod;
  std::vector<std::vector<std::size_t>> components;

  std::size_t operator()(std::size_t sort, std::size_t x) const {
    return components[sort][x];
  }

  friend bool operator==(const Hom& a, const Hom& b) {
    return a.dom == b.dom && a.cod == b.cod && a.components == b.components;
  }
};

inline Hom identity_hom(const Instance& x) {
  std::vector<std::vector<std::size_t>> comps(x.sorts());
  for (std::size_t s = 0; s < x.sorts(); ++s) {
    comps[s].resize(x.carrier(s));
    for (std::size_t i = 0; i < x.carrier(s); ++i) comps[s][i] = i;
  }
  return Hom{x, x, std::move(comps)};
}

// g after f. Requires cod(f) == dom(g) structurally.
inline Hom compose(const Hom& g, const Hom& f) {
  if (!(f.cod == g.dom))
    throw PreconditionError("compose: middle objects differ");
  std::vector<std::vector<std::size_t>> comps(f.components.size());
  for (std::size_t s = 0; s < comps.size(); ++s) {
    comps[s].resize(f.components[s].size());
    for (std::size_t i = 0; i < comps[s].size(); ++i)
      comps[s][i] = g.components[s][f.components[s][i]];
  }
  return Hom{f.dom, g.cod, std::move(comps)};
}

struct HomViolation {
  std::string generator;
  std::size_t element;  // offending element of the generator's dom carrier
};

struct HomReport {
  std::vector<std::string> shape_errors;   // sizes or ranges are wrong
  std::vector<HomViolation> violations;    // naturality square failures
  bool ok() const { return shape_errors.empty() && violations.empty(); }
};

// Checks that h is a well-formed natural family. Throws on schema mismatch;
// everything else is reported, not thrown.
inline HomReport check_hom(const Hom& h) {
  if (!same_schema(h.dom.schema_ptr(), h.cod.schema_ptr()))
    throw SchemaMismatchError("hom endpoints live over different schemas");
  HomReport report;
  const auto& p = h.dom.schema();
  if (h.components.size() != p.objects.size()) {
    report.shape_errors.push_back("component count does not match sort count");
    return report;
  }
  for (std::size_t s = 0; s < p.objects.size(); ++s) {
    if (h.components[s].size() != h.dom.carrier(s)) {
      report.shape_errors.push_back("component '" + p.objects[s] +
                                    "' has wrong domain size");
      continue;
    }
    for (auto y : h.components[s])
      if (y >= h.cod.carrier(s)) {
        report.shape_errors.push_back("component '" + p.objects[s] +
                                      "' maps outside the codomain carrier");
        break;
      }
  }
  if (!report.shape_errors.empty()) return report;
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    const auto dom_sort = *p.object_index(p.generators[g].dom);
    const auto cod_sort = *p.object_index(p.generators[g].cod);
    for (std::size_t x = 0; x < h.dom.carrier(dom_sort); ++x) {
      const auto via_dom = h.components[cod_sort][h.dom.action(g)[x]];
      const auto via_cod = h.cod.action(g)[h.components[dom_sort][x]];
      if (via_dom != via_cod)
        report.violations.push_back({p.generators[g].name, x});
    }
  }
  return report;
}

// Pointwise criteria; valid in any copresheaf category.
inline bool is_mono(const Hom& h) {
  for (std::size_t s = 0; s < h.components.size(); ++s) {
    std::vector<bool> seen(h.cod.carrier(s), false);
    for (auto y : h.components[s]) {
      if (seen[y]) return false;
      seen[y] = true;
    }
  }
  return true;
}

inline bool is_epi(const Hom& h) {
  for (std::size_t s = 0; s < h.components.size(); ++s) {
    std::vector<bool> seen(h.cod.carrier(s), false);
    for (auto y : h.components[s]) seen[y] = true;
    for (bool b : seen)
      if (!b) return false;
  }
  return true;
}

inline bool is_iso(const Hom& h) {
  for (std::size_t s = 0; s < h.components.size(); ++s)
    if (h.dom.carrier(s) != h.cod.carrier(s)) return false;
  return is_mono(h) && is_epi(h);
}

// ---------------------------------------------------------------------------
// Convenience builders for the graph-like schemas.

inline Instance make_graph(std::size_t vertices,
                           const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> src, tgt;
  for (auto [s, t] : edges) {
    src.push_back(s);
    tgt.push_back(t);
  }
  return Instance(grph_schema(), {vertices, edges.size()},
                  {std::move(src), std::move(tgt)});
}

// Reflexive graph with edge carrier [l_0, .., l_{n-1}, real edges...]:
// element v of E is the distinguished loop of vertex v.
inline Instance make_rgraph(std::size_t vertices,
                            const std::vector<std::pair<std::size_t, std::size_t>>& real_edges) {
  std::vector<std::size_t> src, tgt, unit;
  for (std::size_t v = 0; v < vertices; ++v) {
    src.push_back(v);
    tgt.push_back(v);
    unit.push_back(v);
  }
  for (auto [s, t] : real_edges) {
    src.push_back(s);
    tgt.push_back(t);
  }
  return Instance(rgrph_schema(), {vertices, vertices + real_edges.size()},
                  {std::move(src), std::move(tgt), std::move(unit)});
}

// k-coloured graph; edges given per colour.
inline Instance make_cgraph(
    std::size_t k, std::size_t vertices,
    const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& edges_by_colour) {
  if (edges_by_colour.size() != k)
    throw PreconditionError("make_cgraph: need one edge list per colour");
  std::vector<std::size_t> carriers{vertices};
  std::vector<std::vector<std::size_t>> actions;
  for (std::size_t i = 0; i < k; ++i) carriers.push_back(edges_by_colour[i].size());
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::size_t> src, tgt;
    for (auto [s, t] : edges_by_colour[i]) {
      src.push_back(s);
      tgt.push_back(t);
    }
    actions.push_back(std::move(src));
    actions.push_back(std::move(tgt));
  }
  return Instance(cgr_schema(k), std::move(carriers), std::move(actions));
}

}  // namespace lassokit
