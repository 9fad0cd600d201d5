#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lassokit/colimit.hpp"
#include "lassokit/lasso.hpp"
#include "lassokit/universe.hpp"

namespace lassokit {

inline std::string describe(const Instance& x) {
  std::string out = "(";
  for (std::size_t s = 0; s < x.sorts(); ++s) {
    if (s) out += ",";
    out += x.schema().objects[s] + "=" + std::to_string(x.carrier(s));
  }
  out += ";";
  for (std::size_t g = 0; g < x.schema().generators.size(); ++g) {
    if (g) out += ";";
    out += x.schema().generators[g].name + "=[";
    for (std::size_t i = 0; i < x.action(g).size(); ++i) {
      if (i) out += ",";
      out += std::to_string(x.action(g)[i]);
    }
    out += "]";
  }
  return out + ")";
}

struct LassoCheckFailure {
  std::string kind;
  std::string detail;
};

// All finite-universe verdicts are necessary-condition results only: they
// quantify over the enumerated instances, not over the whole category.
struct AxiomReport {
  std::string lasso;
  std::string bounds;
  std::size_t universe_size = 0;
  std::size_t homs_checked = 0;
  std::size_t spans_checked = 0;
  std::vector<LassoCheckFailure> epi_failures;         // L2: eta components epi
  std::vector<LassoCheckFailure> naturality_failures;  // eta squares; hom action
  std::vector<LassoCheckFailure> l1_failures;          // monic pushout preservation
  bool pass() const {
    return epi_failures.empty() && naturality_failures.empty() && l1_failures.empty();
  }
};

// One enumeration shared by every check: the instances up to iso within the
// bounds, in canonical order.
struct LassoUniverse {
  SchemaPtr schema;
  std::string bounds_description;
  std::vector<Instance> instances;
};

inline LassoUniverse make_universe(const SchemaPtr& schema, const Bounds& bounds) {
  return LassoUniverse{schema, bounds.describe(*schema),
                       enumerate_instances(schema, bounds)};
}

namespace detail {

struct UniverseCache {
  std::vector<Instance> lasso_objects;  // on_object per instance
  std::vector<Hom> etas;
};

inline UniverseCache build_cache(const Lasso& L, const std::vector<Instance>& universe) {
  UniverseCache cache;
  for (const auto& g : universe) {
    cache.lasso_objects.push_back(L.on_object(g));
    cache.etas.push_back(L.eta(g));
  }
  return cache;
}

}  // namespace detail

inline AxiomReport check_lasso_axioms(const Lasso& L, const LassoUniverse& uni,
                                      const SearchLimits& limits = default_search_limits()) {
  AxiomReport report;
  report.lasso = L.name;
  report.bounds = uni.bounds_description;
  const auto& universe = uni.instances;
  report.universe_size = universe.size();
  const auto cache = detail::build_cache(L, universe);

  // L2: every unit component is an epimorphism onto the lasso image.
  for (std::size_t i = 0; i < universe.size(); ++i) {
    const auto& eta = cache.etas[i];
    if (!(eta.dom == universe[i]) || !(eta.cod == cache.lasso_objects[i]))
      report.epi_failures.push_back({"eta-endpoints", describe(universe[i])});
    else if (!is_epi(eta))
      report.epi_failures.push_back({"eta-not-epi", describe(universe[i])});
  }

  // Naturality of the unit against every enumerated hom; the hom action is
  // recovered by factorization, so a failure here is a genuine naturality
  // defect.
  std::vector<std::vector<std::vector<Hom>>> hom_cache(universe.size());
  for (std::size_t i = 0; i < universe.size(); ++i) {
    hom_cache[i].resize(universe.size());
    for (std::size_t j = 0; j < universe.size(); ++j)
      hom_cache[i][j] = enumerate_homs(universe[i], universe[j], limits);
  }
  for (std::size_t i = 0; i < universe.size(); ++i)
    for (std::size_t j = 0; j < universe.size(); ++j)
      for (const auto& f : hom_cache[i][j]) {
        ++report.homs_checked;
        try {
          const auto lf = L.on_hom(f);
          if (!(compose(lf, cache.etas[i]).components ==
                compose(cache.etas[j], f).components))
            report.naturality_failures.push_back(
                {"eta-square", describe(universe[i]) + " -> " + describe(universe[j])});
        } catch (const InternalError& e) {
          report.naturality_failures.push_back(
              {"hom-action", std::string(e.what()) + " at " + describe(universe[i]) +
                                 " -> " + describe(universe[j])});
        }
      }

  // L1: pushouts of monic spans are preserved up to isomorphism. Spans are
  // enumerated up to the left/right swap.
  std::vector<std::vector<std::vector<Hom>>> mono_cache(universe.size());
  for (std::size_t c = 0; c < universe.size(); ++c) {
    mono_cache[c].resize(universe.size());
    for (std::size_t a = 0; a < universe.size(); ++a)
      for (const auto& h : hom_cache[c][a])
        if (is_mono(h)) mono_cache[c][a].push_back(h);
  }
  for (std::size_t c = 0; c < universe.size(); ++c)
    for (std::size_t a = 0; a < universe.size(); ++a)
      for (std::size_t fa = 0; fa < mono_cache[c][a].size(); ++fa)
        for (std::size_t b = a; b < universe.size(); ++b)
          for (std::size_t gb = (a == b ? fa : 0); gb < mono_cache[c][b].size(); ++gb) {
            ++report.spans_checked;
            const Span span(universe[c], mono_cache[c][a][fa], mono_cache[c][b][gb]);
            const auto po = pushout(span);
            const auto expected = L.on_object(po.apex);
            try {
              const Span image_span(cache.lasso_objects[c],
                                    L.on_hom(span.left), L.on_hom(span.right));
              const auto image_po =
                  pushout(image_span, ColimitOptions{/*require_consistent=*/false});
              if (!isomorphic(image_po.apex, expected))
                report.l1_failures.push_back(
                    {"monic-pushout",
                     "span " + describe(universe[c]) + " -> " + describe(universe[a]) +
                         ", " + describe(universe[b])});
            } catch (const std::exception& e) {
              report.l1_failures.push_back(
                  {"monic-pushout",
                   std::string("image span has no quotient: ") + e.what() + " at " +
                       describe(universe[c])});
            }
          }
  return report;
}

inline AxiomReport check_lasso_axioms(const Lasso& L, const Bounds& bounds,
                                      const SearchLimits& limits = default_search_limits()) {
  return check_lasso_axioms(L, make_universe(L.schema, bounds), limits);
}

struct StrongReport {
  std::string lasso;
  std::string bounds;
  std::size_t universe_size = 0;
  std::size_t spans_checked = 0;
  std::size_t parallel_pairs_checked = 0;
  std::vector<LassoCheckFailure> failures;
  bool pass() const { return failures.empty(); }
};

// Preservation of colimits of monic diagrams, probed over monic spans and
// monic parallel pairs (the coequalizer-inducing shapes).
inline StrongReport check_strong(const Lasso& L, const LassoUniverse& uni,
                                 const SearchLimits& limits = default_search_limits()) {
  StrongReport report;
  report.lasso = L.name;
  report.bounds = uni.bounds_description;
  const auto& universe = uni.instances;
  report.universe_size = universe.size();
  const auto cache = detail::build_cache(L, universe);

  const auto axioms = check_lasso_axioms(L, uni, limits);
  report.spans_checked = axioms.spans_checked;
  for (const auto& f : axioms.l1_failures) report.failures.push_back(f);

  for (std::size_t c = 0; c < universe.size(); ++c)
    for (std::size_t d = 0; d < universe.size(); ++d) {
      const auto monos = enumerate_monos(universe[c], universe[d], limits);
      for (std::size_t i = 0; i < monos.size(); ++i)
        for (std::size_t j = i; j < monos.size(); ++j) {
          ++report.parallel_pairs_checked;
          const auto coeq = coequalizer(monos[i], monos[j]);
          const auto expected = L.on_object(coeq.apex);
          try {
            const auto image_coeq =
                coequalizer(L.on_hom(monos[i]), L.on_hom(monos[j]),
                            ColimitOptions{/*require_consistent=*/false});
            if (!isomorphic(image_coeq.apex, expected))
              report.failures.push_back(
                  {"monic-coequalizer", "pair " + describe(universe[c]) + " => " +
                                            describe(universe[d])});
          } catch (const std::exception& e) {
            report.failures.push_back(
                {"monic-coequalizer",
                 std::string("image pair has no quotient: ") + e.what()});
          }
        }
    }
  return report;
}

inline StrongReport check_strong(const Lasso& L, const Bounds& bounds,
                                 const SearchLimits& limits = default_search_limits()) {
  return check_strong(L, make_universe(L.schema, bounds), limits);
}

// ---------------------------------------------------------------------------
// Morphisms in the category of lassos

struct LassoMorphismResult {
  bool exists = false;
  std::string from;
  std::string to;
  std::optional<std::string> witness;  // instance on which factorization fails
  std::vector<Hom> components;         // per universe instance when it exists
};

// A morphism exists when, on every universe instance, the target unit
// factors through the source unit; the factor is unique because units are
// epi.
inline LassoMorphismResult lasso_morphism_exists(const Lasso& from, const Lasso& to,
                                                 const LassoUniverse& uni) {
  if (!same_schema(from.schema, to.schema))
    throw SchemaMismatchError("lasso morphism needs a shared schema");
  LassoMorphismResult result;
  result.from = from.name;
  result.to = to.name;
  for (const auto& g : uni.instances) {
    const auto ef = from.eta(g);
    const auto et = to.eta(g);
    std::vector<std::vector<std::size_t>> comps(ef.cod.sorts());
    for (std::size_t s = 0; s < comps.size(); ++s) {
      comps[s].assign(ef.cod.carrier(s), static_cast<std::size_t>(-1));
      for (std::size_t x = 0; x < g.carrier(s); ++x) {
        auto& slot = comps[s][ef.components[s][x]];
        if (slot == static_cast<std::size_t>(-1)) {
          slot = et.components[s][x];
        } else if (slot != et.components[s][x]) {
          result.witness = describe(g);
          return result;
        }
      }
    }
    result.components.push_back(Hom{ef.cod, et.cod, std::move(comps)});
  }
  result.exists = true;
  return result;
}

inline LassoMorphismResult lasso_morphism_exists(const Lasso& from, const Lasso& to,
                                                 const Bounds& bounds) {
  return lasso_morphism_exists(from, to, make_universe(from.schema, bounds));
}

// ---------------------------------------------------------------------------
// Canonicity probe

struct ProbeSurvivor {
  std::vector<Kernel> kernels;  // one kernel per universe instance
  std::string label;            // matching known lasso, or "unidentified"
};

struct ProbeReport {
  std::string schema;
  std::string bounds;
  std::size_t universe_size = 0;
  std::size_t candidate_assignments = 0;  // naturality-surviving families
  std::vector<ProbeSurvivor> survivors;
};

// Exhaustive search for unit-like families: one compatible quotient per
// universe instance, natural against every enumerated hom, preserving every
// enumerated monic pushout that lands back inside the universe. Survival is
// a necessary condition for extending to a lasso, never sufficient; callers
// must treat extra survivors as findings.
inline ProbeReport canonicity_probe(const SchemaPtr& schema, const Bounds& bounds,
                                    const std::vector<Lasso>& known = {},
                                    const SearchLimits& limits = default_search_limits()) {
  ProbeReport report;
  report.schema = schema->name;
  report.bounds = bounds.describe(*schema);
  const auto universe = enumerate_instances(schema, bounds);
  report.universe_size = universe.size();
  const std::size_t n = universe.size();

  std::vector<std::vector<std::vector<Hom>>> homs(n);
  for (std::size_t i = 0; i < n; ++i) {
    homs[i].resize(n);
    for (std::size_t j = 0; j < n; ++j)
      homs[i][j] = enumerate_homs(universe[i], universe[j], limits);
  }

  std::vector<std::vector<Kernel>> candidates;
  candidates.reserve(n);
  for (const auto& g : universe) candidates.push_back(enumerate_quotient_kernels(g));

  // Monic spans whose pushout is again a universe instance.
  struct CachedSpan {
    std::size_t c, a, b;
    const Hom* f;
    const Hom* g;
    std::size_t pushout_class;
  };
  std::vector<CachedSpan> spans;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t a = 0; a < n; ++a)
      for (const auto& f : homs[c][a]) {
        if (!is_mono(f)) continue;
        for (std::size_t b = a; b < n; ++b)
          for (const auto& g : homs[c][b]) {
            if (!is_mono(g)) continue;
            if (a == b && &g < &f) continue;
            const auto po = pushout(Span(universe[c], f, g));
            for (std::size_t p = 0; p < n; ++p)
              if (isomorphic(po.apex, universe[p])) {
                spans.push_back({c, a, b, &f, &g, p});
                break;
              }
          }
      }

  // ker(q_src) must refine ker(q_dst . f).
  const auto refines = [&](const Kernel& ks, const Hom& f, const Kernel& kd) {
    for (std::size_t s = 0; s < ks.size(); ++s) {
      std::vector<std::size_t> value;
      for (std::size_t x = 0; x < ks[s].size(); ++x) {
        const auto cls = ks[s][x];
        if (cls >= value.size()) value.resize(cls + 1, static_cast<std::size_t>(-1));
        const auto v = kd[s][f.components[s][x]];
        if (value[cls] == static_cast<std::size_t>(-1))
          value[cls] = v;
        else if (value[cls] != v)
          return false;
      }
    }
    return true;
  };

  std::vector<const Kernel*> chosen(n, nullptr);
  std::vector<ProbeSurvivor> survivors;

  const auto l1_holds = [&](const std::vector<const Kernel*>& family) {
    for (const auto& sp : spans) {
      const auto qc = quotient_by_kernel(universe[sp.c], *family[sp.c]);
      const auto qa = quotient_by_kernel(universe[sp.a], *family[sp.a]);
      const auto qb = quotient_by_kernel(universe[sp.b], *family[sp.b]);
      const auto induce = [&](const Hom& base, const Hom& qsrc, const Hom& qdst) {
        std::vector<std::vector<std::size_t>> comps(qsrc.cod.sorts());
        for (std::size_t s = 0; s < comps.size(); ++s) {
          comps[s].assign(qsrc.cod.carrier(s), 0);
          for (std::size_t x = 0; x < base.dom.carrier(s); ++x)
            comps[s][qsrc.components[s][x]] = qdst.components[s][base.components[s][x]];
        }
        return Hom{qsrc.cod, qdst.cod, std::move(comps)};
      };
      const auto po = pushout(
          Span(qc.cod, induce(*sp.f, qc, qa), induce(*sp.g, qc, qb)),
          ColimitOptions{/*require_consistent=*/false});
      const auto expected = quotient_by_kernel(universe[sp.pushout_class],
                                               *family[sp.pushout_class]);
      if (!isomorphic(po.apex, expected.cod)) return false;
    }
    return true;
  };

  const std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i == n) {
      ++report.candidate_assignments;
      if (!l1_holds(chosen)) return;
      ProbeSurvivor s;
      for (const auto* k : chosen) s.kernels.push_back(*k);
      s.label = "unidentified";
      survivors.push_back(std::move(s));
      return;
    }
    for (const auto& k : candidates[i]) {
      bool ok = true;
      for (std::size_t j = 0; j <= i && ok; ++j) {
        if (!chosen[j] && j != i) continue;
        const Kernel& kj = (j == i) ? k : *chosen[j];
        for (const auto& f : homs[j][i])
          if (!refines(kj, f, k)) {
            ok = false;
            break;
          }
        if (!ok) break;
        for (const auto& f : homs[i][j])
          if (!refines(k, f, kj)) {
            ok = false;
            break;
          }
      }
      if (!ok) continue;
      chosen[i] = &k;
      assign(i + 1);
      chosen[i] = nullptr;
    }
  };
  assign(0);

  // Label survivors against the supplied lassos.
  for (auto& s : survivors) {
    for (const auto& L : known) {
      bool match = true;
      for (std::size_t i = 0; i < n && match; ++i)
        match = (kernel_of_hom(L.eta(universe[i])) == s.kernels[i]);
      if (match) {
        s.label = L.name;
        break;
      }
    }
  }
  report.survivors = std::move(survivors);
  return report;
}

}  // namespace lassokit
