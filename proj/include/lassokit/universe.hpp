#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lassokit/errors.hpp"
#include "lassokit/hom_search.hpp"
#include "lassokit/instance.hpp"

namespace lassokit {

// Per-sort carrier ceilings for universe enumeration.
struct Bounds {
  std::vector<std::size_t> per_sort;

  // Graph-like convenience: a vertex bound plus one bound for every other
  // sort (edges, colour classes...).
  static Bounds graph(const SchemaPresentation& schema, std::size_t max_vertices,
                      std::size_t max_edges) {
    Bounds b;
    for (const auto& obj : schema.objects)
      b.per_sort.push_back(obj == "V" ? max_vertices : max_edges);
    return b;
  }

  std::string describe(const SchemaPresentation& schema) const {
    std::string out;
    for (std::size_t s = 0; s < per_sort.size(); ++s) {
      if (s) out += ", ";
      out += schema.objects[s] + " <= " + std::to_string(per_sort[s]);
    }
    return out;
  }
};

namespace detail {

// Odometer over all action tuples for a fixed carrier vector; visits
// instances in lexicographic action order, skipping equation violations.
template <typename Visit>
void visit_instances_with_carriers(const SchemaPtr& schema,
                                   const std::vector<std::size_t>& carriers,
                                   Visit&& visit) {
  const auto& p = *schema;
  std::vector<std::size_t> dom_size(p.generators.size()), cod_size(p.generators.size());
  std::size_t positions = 0;
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    dom_size[g] = carriers[*p.object_index(p.generators[g].dom)];
    cod_size[g] = carriers[*p.object_index(p.generators[g].cod)];
    if (dom_size[g] > 0 && cod_size[g] == 0) return;  // no total function exists
    positions += dom_size[g];
  }
  std::vector<std::vector<std::size_t>> actions(p.generators.size());
  for (std::size_t g = 0; g < p.generators.size(); ++g)
    actions[g].assign(dom_size[g], 0);

  while (true) {
    try {
      visit(Instance(schema, carriers, actions));
    } catch (const PreconditionError&) {
      // equations fail for this action tuple; skip it
    }
    // Increment the odometer.
    std::size_t g = 0, i = 0;
    bool carried = true;
    for (g = 0; g < actions.size() && carried; ++g)
      for (i = 0; i < actions[g].size() && carried; ++i) {
        if (++actions[g][i] < cod_size[g]) {
          carried = false;
        } else {
          actions[g][i] = 0;
        }
      }
    if (carried) return;
  }
}

}  // namespace detail

// All instances with carriers within the bounds, one representative per
// isomorphism class, in a deterministic order (carriers, then actions of the
// first representative encountered).
inline std::vector<Instance> enumerate_instances(const SchemaPtr& schema,
                                                 const Bounds& bounds,
                                                 double max_raw = 5e6) {
  const auto& p = *schema;
  if (bounds.per_sort.size() != p.objects.size())
    throw PreconditionError("bounds must give one ceiling per sort");

  const auto raw_count = [&](const std::vector<std::size_t>& carriers) {
    double raw = 1.0;
    for (std::size_t g = 0; g < p.generators.size(); ++g) {
      const auto ds = carriers[*p.object_index(p.generators[g].dom)];
      const auto cs = carriers[*p.object_index(p.generators[g].cod)];
      for (std::size_t i = 0; i < ds; ++i) raw *= static_cast<double>(cs ? cs : 1);
    }
    return raw;
  };

  // Budget the whole enumeration before doing any of it.
  {
    double total = 0.0;
    std::vector<std::size_t> carriers(p.objects.size(), 0);
    while (true) {
      total += raw_count(carriers);
      if (total > max_raw)
        throw BoundExceededError("universe enumeration exceeds the raw ceiling");
      std::size_t s = 0;
      bool carried = true;
      for (s = 0; s < carriers.size() && carried; ++s) {
        if (++carriers[s] <= bounds.per_sort[s]) {
          carried = false;
        } else {
          carriers[s] = 0;
        }
      }
      if (carried) break;
    }
  }

  std::vector<Instance> reps;
  std::vector<std::size_t> carriers(p.objects.size(), 0);

  // Odometer over carrier vectors, each sort 0..bound.
  while (true) {
    const std::size_t first_new = reps.size();
    detail::visit_instances_with_carriers(schema, carriers, [&](Instance inst) {
      for (std::size_t i = first_new; i < reps.size(); ++i)
        if (isomorphic(reps[i], inst)) return;
      reps.push_back(std::move(inst));
    });

    std::size_t s = 0;
    bool carried = true;
    for (s = 0; s < carriers.size() && carried; ++s) {
      if (++carriers[s] <= bounds.per_sort[s]) {
        carried = false;
      } else {
        carriers[s] = 0;
      }
    }
    if (carried) break;
  }
  return reps;
}

// All subobject inclusions of x: element subsets closed under the actions,
// in ascending bitmask order per sort.
inline std::vector<Hom> enumerate_subobjects(const Instance& x,
                                             std::size_t max_total_elements = 16) {
  if (x.total_elements() > max_total_elements)
    throw BoundExceededError("subobject enumeration bound exceeded");
  const auto& p = x.schema();
  const std::size_t nsorts = p.objects.size();

  std::vector<std::uint64_t> mask(nsorts, 0);
  std::vector<Hom> out;
  while (true) {
    bool closed = true;
    for (std::size_t g = 0; g < p.generators.size() && closed; ++g) {
      const auto ds = *p.object_index(p.generators[g].dom);
      const auto cs = *p.object_index(p.generators[g].cod);
      for (std::size_t i = 0; i < x.carrier(ds) && closed; ++i)
        if ((mask[ds] >> i) & 1)
          closed = (mask[cs] >> x.action(g)[i]) & 1;
    }
    if (closed) {
      std::vector<std::vector<std::size_t>> elems(nsorts), index(nsorts);
      std::vector<std::size_t> carriers(nsorts);
      for (std::size_t s = 0; s < nsorts; ++s) {
        index[s].assign(x.carrier(s), 0);
        for (std::size_t i = 0; i < x.carrier(s); ++i)
          if ((mask[s] >> i) & 1) {
            index[s][i] = elems[s].size();
            elems[s].push_back(i);
          }
        carriers[s] = elems[s].size();
      }
      std::vector<std::vector<std::size_t>> actions(p.generators.size());
      for (std::size_t g = 0; g < p.generators.size(); ++g) {
        const auto ds = *p.object_index(p.generators[g].dom);
        const auto cs = *p.object_index(p.generators[g].cod);
        for (auto i : elems[ds]) actions[g].push_back(index[cs][x.action(g)[i]]);
      }
      Instance sub(x.schema_ptr(), carriers, std::move(actions));
      out.push_back(Hom{sub, x, elems});
    }
    // Next mask tuple.
    std::size_t s = 0;
    bool carried = true;
    for (s = 0; s < nsorts && carried; ++s) {
      mask[s] = (mask[s] + 1) & ((std::uint64_t{1} << x.carrier(s)) - 1);
      carried = (mask[s] == 0);
    }
    if (carried) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quotients

// A per-sort partition in restricted-growth form: classes numbered densely
// in order of first appearance.
using Kernel = std::vector<std::vector<std::size_t>>;

inline Kernel normalize_kernel(Kernel k) {
  for (auto& sort : k) {
    std::vector<std::size_t> relabel(sort.size(), static_cast<std::size_t>(-1));
    std::size_t next = 0;
    for (auto& cls : sort) {
      if (relabel[cls] == static_cast<std::size_t>(-1)) relabel[cls] = next++;
      cls = relabel[cls];
    }
  }
  return k;
}

inline Kernel kernel_of_hom(const Hom& h) {
  return normalize_kernel(h.components);
}

// True when every generator action descends to the classes.
inline bool kernel_compatible(const Instance& x, const Kernel& k) {
  const auto& p = x.schema();
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    const auto ds = *p.object_index(p.generators[g].dom);
    const auto cs = *p.object_index(p.generators[g].cod);
    // Class representative check: first member fixes the value.
    std::vector<std::size_t> value;
    for (std::size_t i = 0; i < x.carrier(ds); ++i) {
      const auto cls = k[ds][i];
      if (cls >= value.size()) value.resize(cls + 1, static_cast<std::size_t>(-1));
      const auto v = k[cs][x.action(g)[i]];
      if (value[cls] == static_cast<std::size_t>(-1))
        value[cls] = v;
      else if (value[cls] != v)
        return false;
    }
  }
  return true;
}

// Quotient instance and projection for a compatible kernel.
inline Hom quotient_by_kernel(const Instance& x, const Kernel& kernel) {
  const auto& p = x.schema();
  const std::size_t nsorts = p.objects.size();
  std::vector<std::size_t> carriers(nsorts, 0);
  for (std::size_t s = 0; s < nsorts; ++s)
    for (auto cls : kernel[s]) carriers[s] = std::max(carriers[s], cls + 1);
  std::vector<std::vector<std::size_t>> actions(p.generators.size());
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    const auto ds = *p.object_index(p.generators[g].dom);
    const auto cs = *p.object_index(p.generators[g].cod);
    actions[g].assign(carriers[ds], static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < x.carrier(ds); ++i)
      if (actions[g][kernel[ds][i]] == static_cast<std::size_t>(-1))
        actions[g][kernel[ds][i]] = kernel[cs][x.action(g)[i]];
  }
  Instance q(x.schema_ptr(), carriers, std::move(actions));
  return Hom{x, std::move(q), kernel};
}

// All compatible quotient kernels of x, in lexicographic restricted-growth
// order (sorts nested left to right).
inline std::vector<Kernel> enumerate_quotient_kernels(const Instance& x) {
  const std::size_t nsorts = x.sorts();
  // Per-sort restricted growth strings.
  std::vector<std::vector<std::vector<std::size_t>>> per_sort(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s) {
    const std::size_t n = x.carrier(s);
    std::vector<std::size_t> rgs(n, 0);
    if (n == 0) {
      per_sort[s].push_back({});
      continue;
    }
    while (true) {
      per_sort[s].push_back(rgs);
      // Next RGS: increment from the right; digit i may reach
      // max(previous digits) + 1.
      std::size_t i = n;
      for (i = n; i-- > 1;) {
        std::size_t cap = 0;
        for (std::size_t j = 0; j < i; ++j) cap = std::max(cap, rgs[j]);
        if (rgs[i] <= cap) {
          ++rgs[i];
          for (std::size_t j = i + 1; j < n; ++j) rgs[j] = 0;
          break;
        }
      }
      if (i == 0) break;
    }
  }
  std::vector<Kernel> out;
  std::vector<std::size_t> pick(nsorts, 0);
  while (true) {
    Kernel k(nsorts);
    for (std::size_t s = 0; s < nsorts; ++s) k[s] = per_sort[s][pick[s]];
    if (kernel_compatible(x, k)) out.push_back(std::move(k));
    std::size_t s = nsorts;
    bool carried = true;
    for (s = nsorts; s-- > 0;) {
      if (++pick[s] < per_sort[s].size()) {
        carried = false;
        break;
      }
      pick[s] = 0;
    }
    if (carried) break;
  }
  return out;
}

}  // namespace lassokit
