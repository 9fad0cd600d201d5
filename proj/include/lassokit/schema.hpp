#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lassokit/errors.hpp"

namespace lassokit {

struct GeneratorDecl {
  std::string name;
  std::string dom;
  std::string cod;

  friend bool operator==(const GeneratorDecl&, const GeneratorDecl&) = default;
};

// A pair of parallel generator paths. Paths are written in application
// order: {"l","s"} is the map "first l, then s". The empty path is the
// identity.
struct PathEquation {
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;

  friend bool operator==(const PathEquation&, const PathEquation&) = default;
};

// A finite category presentation: the schema of a copresheaf category.
struct SchemaPresentation {
  std::string name;  // display label, not part of structural identity
  std::vector<std::string> objects;
  std::vector<GeneratorDecl> generators;
  std::vector<PathEquation> equations;

  std::optional<std::size_t> object_index(std::string_view s) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == s) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> generator_index(std::string_view g) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i].name == g) return i;
    return std::nullopt;
  }
};

// Structural equality of presentations; display names are ignored.
inline bool schema_equal(const SchemaPresentation& a, const SchemaPresentation& b) {
  return a.objects == b.objects && a.generators == b.generators &&
         a.equations == b.equations;
}

using SchemaPtr = std::shared_ptr<const SchemaPresentation>;

inline bool same_schema(const SchemaPtr& a, const SchemaPtr& b) {
  return a == b || (a && b && schema_equal(*a, *b));
}

struct SchemaReport {
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

namespace detail {

// Walks a generator path and reports (dom, cod), or nullopt if the path is
// not composable. The empty path yields nullopt (its endpoints are free).
inline std::optional<std::pair<std::size_t, std::size_t>> path_endpoints(
    const SchemaPresentation& p, const std::vector<std::string>& path,
    std::string* error) {
  std::optional<std::pair<std::size_t, std::size_t>> result;
  for (const auto& g : path) {
    auto gi = p.generator_index(g);
    if (!gi) {
      if (error) *error = "unknown generator '" + g + "' in equation path";
      return std::nullopt;
    }
    auto d = p.object_index(p.generators[*gi].dom);
    auto c = p.object_index(p.generators[*gi].cod);
    if (!d || !c) {
      if (error) *error = "generator '" + g + "' has a dangling sort";
      return std::nullopt;
    }
    if (!result) {
      result = {*d, *c};
    } else if (result->second != *d) {
      if (error) *error = "equation path is not composable at generator '" + g + "'";
      return std::nullopt;
    } else {
      result->second = *c;
    }
  }
  return result;
}

}  // namespace detail

inline SchemaReport validate_schema(const SchemaPresentation& p) {
  SchemaReport report;
  for (std::size_t i = 0; i < p.objects.size(); ++i)
    for (std::size_t j = i + 1; j < p.objects.size(); ++j)
      if (p.objects[i] == p.objects[j])
        report.errors.push_back("duplicate sort name '" + p.objects[i] + "'");

  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    const auto& g = p.generators[i];
    for (std::size_t j = i + 1; j < p.generators.size(); ++j)
      if (g.name == p.generators[j].name)
        report.errors.push_back("duplicate generator name '" + g.name + "'");
    if (!p.object_index(g.dom))
      report.errors.push_back("generator '" + g.name + "' has dangling dom sort '" +
                              g.dom + "'");
    if (!p.object_index(g.cod))
      report.errors.push_back("generator '" + g.name + "' has dangling cod sort '" +
                              g.cod + "'");
  }

  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    const auto& eq = p.equations[i];
    std::string err;
    auto l = detail::path_endpoints(p, eq.lhs, &err);
    if (!l && !eq.lhs.empty()) {
      report.errors.push_back("equation " + std::to_string(i) + ": " + err);
      continue;
    }
    auto r = detail::path_endpoints(p, eq.rhs, &err);
    if (!r && !eq.rhs.empty()) {
      report.errors.push_back("equation " + std::to_string(i) + ": " + err);
      continue;
    }
    if (l && r && *l != *r)
      report.errors.push_back("equation " + std::to_string(i) +
                              ": sides are not parallel");
    // One side empty: the other must be an endomorphism path.
    if (l && eq.rhs.empty() && l->first != l->second)
      report.errors.push_back("equation " + std::to_string(i) +
                              ": identity side forces matching dom and cod");
    if (r && eq.lhs.empty() && r->first != r->second)
      report.errors.push_back("equation " + std::to_string(i) +
                              ": identity side forces matching dom and cod");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Built-in schemas

inline SchemaPtr grph_schema() {
  static const SchemaPtr s = std::make_shared<SchemaPresentation>(SchemaPresentation{
      "Grph",
      {"V", "E"},
      {{"s", "E", "V"}, {"t", "E", "V"}},
      {}});
  return s;
}

inline SchemaPtr rgrph_schema() {
  static const SchemaPtr s = std::make_shared<SchemaPresentation>(SchemaPresentation{
      "RGrph",
      {"V", "E"},
      {{"s", "E", "V"}, {"t", "E", "V"}, {"l", "V", "E"}},
      {{{"l", "s"}, {}}, {{"l", "t"}, {}}}});
  return s;
}

// k-edge-coloured graphs: one edge sort per colour.
inline SchemaPtr cgr_schema(std::size_t k) {
  if (k == 0) throw PreconditionError("CGr_k requires k >= 1");
  static std::vector<SchemaPtr> cache;  // index k
  if (cache.size() <= k) cache.resize(k + 1);
  if (!cache[k]) {
    SchemaPresentation p;
    p.name = "CGr_" + std::to_string(k);
    p.objects.push_back("V");
    for (std::size_t i = 1; i <= k; ++i)
      p.objects.push_back("E" + std::to_string(i));
    for (std::size_t i = 1; i <= k; ++i) {
      p.generators.push_back({"s" + std::to_string(i), "E" + std::to_string(i), "V"});
      p.generators.push_back({"t" + std::to_string(i), "E" + std::to_string(i), "V"});
    }
    cache[k] = std::make_shared<SchemaPresentation>(std::move(p));
  }
  return cache[k];
}

inline SchemaPtr petri_schema() {
  static const SchemaPtr s = std::make_shared<SchemaPresentation>(SchemaPresentation{
      "Petri",
      {"Token", "Species", "Transition", "Input", "Output"},
      {{"ts", "Token", "Species"},
       {"is", "Input", "Species"},
       {"it", "Input", "Transition"},
       {"os", "Output", "Species"},
       {"ot", "Output", "Transition"}},
      {}});
  return s;
}

// Resolves a builtin schema by name: Grph, RGrph, Petri, CGr_k (k >= 1).
inline SchemaPtr builtin_schema(const std::string& name) {
  if (name == "Grph") return grph_schema();
  if (name == "RGrph") return rgrph_schema();
  if (name == "Petri") return petri_schema();
  if (name.rfind("CGr_", 0) == 0) {
    const std::string suffix = name.substr(4);
    if (suffix.empty() ||
        suffix.find_first_not_of("0123456789") != std::string::npos)
      throw PreconditionError("bad colour count in schema name '" + name + "'");
    std::size_t k = std::stoul(suffix);
    return cgr_schema(k);
  }
  throw PreconditionError("unknown builtin schema '" + name + "'");
}

}  // namespace lassokit
