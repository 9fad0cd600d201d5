#pragma once

#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lassokit/errors.hpp"
#include "lassokit/instance.hpp"

namespace lassokit {

struct SearchLimits {
  std::size_t max_carrier = 10;   // per-sort ceiling on either side
  double max_candidates = 1e9;    // product of |cod_s|^|dom_s| before pruning
};

// LASSOKIT_MAX_CARRIER overrides the per-sort enumeration ceiling.
inline SearchLimits default_search_limits() {
  SearchLimits limits;
  if (const char* env = std::getenv("LASSOKIT_MAX_CARRIER")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) limits.max_carrier = v;
  }
  return limits;
}

namespace detail {

// Backtracking over component assignments in (sort, element) order with
// early naturality pruning. Calls visit on every complete natural family;
// enumeration order is lexicographic on the concatenated components, so the
// first visit is the lexicographically least solution.
class HomSearch {
 public:
  HomSearch(const Instance& a, const Instance& b, bool bijective)
      : a_(a), b_(b), bijective_(bijective) {
    const auto& p = a.schema();
    comps_.resize(a.sorts());
    used_.resize(a.sorts());
    for (std::size_t s = 0; s < a.sorts(); ++s) {
      comps_[s].assign(a.carrier(s), kUnset);
      used_[s].assign(b.carrier(s), false);
    }
    for (std::size_t g = 0; g < p.generators.size(); ++g) {
      gen_dom_.push_back(*p.object_index(p.generators[g].dom));
      gen_cod_.push_back(*p.object_index(p.generators[g].cod));
    }
  }

  // visit returns false to stop the whole search.
  void run(const std::function<bool(const std::vector<std::vector<std::size_t>>&)>& visit) {
    visit_ = &visit;
    stopped_ = false;
    extend(0, 0);
  }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  void extend(std::size_t sort, std::size_t elem) {
    if (stopped_) return;
    while (sort < a_.sorts() && elem >= a_.carrier(sort)) {
      ++sort;
      elem = 0;
    }
    if (sort == a_.sorts()) {
      if (!(*visit_)(comps_)) stopped_ = true;
      return;
    }
    for (std::size_t y = 0; y < b_.carrier(sort); ++y) {
      if (bijective_ && used_[sort][y]) continue;
      comps_[sort][elem] = y;
      if (consistent(sort, elem)) {
        if (bijective_) used_[sort][y] = true;
        extend(sort, elem + 1);
        if (bijective_) used_[sort][y] = false;
        if (stopped_) break;
      }
    }
    comps_[sort][elem] = kUnset;
  }

  // Checks every naturality square both of whose participants are assigned
  // and which involves position (sort, elem).
  bool consistent(std::size_t sort, std::size_t elem) const {
    const auto& p = a_.schema();
    for (std::size_t g = 0; g < p.generators.size(); ++g) {
      const auto ds = gen_dom_[g], cs = gen_cod_[g];
      if (ds == sort) {
        const auto img = comps_[cs][a_.action(g)[elem]];
        if (img != kUnset && b_.action(g)[comps_[sort][elem]] != img) return false;
      }
      if (cs == sort) {
        for (std::size_t x = 0; x < a_.carrier(ds); ++x) {
          if (a_.action(g)[x] != elem) continue;
          const auto fx = comps_[ds][x];
          if (fx != kUnset && b_.action(g)[fx] != comps_[sort][elem]) return false;
        }
      }
    }
    return true;
  }

  const Instance& a_;
  const Instance& b_;
  bool bijective_;
  std::vector<std::vector<std::size_t>> comps_;
  std::vector<std::vector<bool>> used_;
  std::vector<std::size_t> gen_dom_, gen_cod_;
  const std::function<bool(const std::vector<std::vector<std::size_t>>&)>* visit_ = nullptr;
  bool stopped_ = false;
};

inline void require_within_limits(const Instance& a, const Instance& b,
                                  const SearchLimits& limits) {
  double candidates = 1.0;
  for (std::size_t s = 0; s < a.sorts(); ++s) {
    if (a.carrier(s) > limits.max_carrier || b.carrier(s) > limits.max_carrier)
      throw BoundExceededError("carrier exceeds enumeration ceiling (" +
                               std::to_string(limits.max_carrier) + ")");
    for (std::size_t i = 0; i < a.carrier(s); ++i) {
      candidates *= static_cast<double>(b.carrier(s) == 0 ? 1 : b.carrier(s));
      if (candidates > limits.max_candidates)
        throw BoundExceededError("candidate family count exceeds ceiling");
    }
    if (a.carrier(s) > 0 && b.carrier(s) == 0)
      return;  // no hom can exist; search will terminate immediately anyway
  }
}

}  // namespace detail

// All natural families a -> b, duplicate-free, in lexicographic order.
inline std::vector<Hom> enumerate_homs(const Instance& a, const Instance& b,
                                       const SearchLimits& limits = default_search_limits()) {
  if (!same_schema(a.schema_ptr(), b.schema_ptr()))
    throw SchemaMismatchError("enumerate_homs: different schemas");
  detail::require_within_limits(a, b, limits);
  std::vector<Hom> out;
  detail::HomSearch search(a, b, /*bijective=*/false);
  search.run([&](const std::vector<std::vector<std::size_t>>& comps) {
    out.push_back(Hom{a, b, comps});
    return true;
  });
  return out;
}

inline std::vector<Hom> enumerate_monos(const Instance& a, const Instance& b,
                                        const SearchLimits& limits = default_search_limits()) {
  std::vector<Hom> out;
  for (auto& h : enumerate_homs(a, b, limits))
    if (is_mono(h)) out.push_back(std::move(h));
  return out;
}

// Lexicographically least isomorphism a -> b, or nullopt.
inline std::optional<Hom> find_isomorphism(const Instance& a, const Instance& b) {
  if (!same_schema(a.schema_ptr(), b.schema_ptr()))
    throw SchemaMismatchError("find_isomorphism: different schemas");
  for (std::size_t s = 0; s < a.sorts(); ++s)
    if (a.carrier(s) != b.carrier(s)) return std::nullopt;
  std::optional<Hom> found;
  detail::HomSearch search(a, b, /*bijective=*/true);
  search.run([&](const std::vector<std::vector<std::size_t>>& comps) {
    found = Hom{a, b, comps};
    return false;  // first hit is the lex-least bijection
  });
  return found;
}

inline bool isomorphic(const Instance& a, const Instance& b) {
  return find_isomorphism(a, b).has_value();
}

}  // namespace lassokit
