#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lassokit/contraction.hpp"
#include "lassokit/decomposition.hpp"
#include "lassokit/errors.hpp"
#include "lassokit/instance.hpp"
#include "lassokit/lasso_checks.hpp"

namespace lassokit {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Schema

inline json schema_to_json(const SchemaPresentation& p) {
  json morphisms = json::array();
  for (const auto& g : p.generators)
    morphisms.push_back({{"name", g.name}, {"dom", g.dom}, {"cod", g.cod}});
  json equations = json::array();
  for (const auto& e : p.equations) equations.push_back(json::array({e.lhs, e.rhs}));
  return json{{"objects", p.objects}, {"morphisms", morphisms}, {"equations", equations}};
}

// The compact form: a builtin name whenever the presentation matches one.
inline std::optional<std::string> builtin_schema_name(const SchemaPresentation& p) {
  for (const char* name : {"Grph", "RGrph", "Petri"})
    if (schema_equal(p, *builtin_schema(name))) return std::string(name);
  if (p.objects.size() >= 2) {
    const auto k = p.objects.size() - 1;
    try {
      if (schema_equal(p, *cgr_schema(k))) return "CGr_" + std::to_string(k);
    } catch (const PreconditionError&) {
    }
  }
  return std::nullopt;
}

inline json schema_to_json_compact(const SchemaPtr& p) {
  if (auto name = builtin_schema_name(*p)) return *name;
  return schema_to_json(*p);
}

inline SchemaPtr schema_from_json(const json& j) {
  try {
    if (j.is_string()) return builtin_schema(j.get<std::string>());
    SchemaPresentation p;
    p.name = j.value("name", "");
    p.objects = j.at("objects").get<std::vector<std::string>>();
    for (const auto& m : j.at("morphisms"))
      p.generators.push_back({m.at("name").get<std::string>(),
                              m.at("dom").get<std::string>(),
                              m.at("cod").get<std::string>()});
    if (j.contains("equations"))
      for (const auto& e : j.at("equations"))
        p.equations.push_back({e.at(0).get<std::vector<std::string>>(),
                               e.at(1).get<std::vector<std::string>>()});
    auto report = validate_schema(p);
    if (!report.ok()) throw ParseError("invalid schema: " + report.errors.front());
    if (auto name = builtin_schema_name(p)) return builtin_schema(*name);
    return std::make_shared<SchemaPresentation>(std::move(p));
  } catch (const json::exception& e) {
    throw ParseError(std::string("schema: ") + e.what());
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("schema: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Instances and homs

inline json instance_to_json(const Instance& x) {
  const auto& p = x.schema();
  json carriers = json::object();
  for (std::size_t s = 0; s < p.objects.size(); ++s)
    carriers[p.objects[s]] = x.carrier(s);
  json actions = json::object();
  for (std::size_t g = 0; g < p.generators.size(); ++g)
    actions[p.generators[g].name] = x.action(g);
  return json{{"schema", schema_to_json_compact(x.schema_ptr())},
              {"carriers", carriers},
              {"actions", actions}};
}

inline Instance instance_from_json(const json& j) {
  try {
    auto schema = schema_from_json(j.at("schema"));
    const auto& p = *schema;
    std::vector<std::size_t> carriers(p.objects.size(), 0);
    for (const auto& [key, value] : j.at("carriers").items()) {
      const auto idx = p.object_index(key);
      if (!idx) throw ParseError("carriers: unknown sort '" + key + "'");
      carriers[*idx] = value.get<std::size_t>();
    }
    std::vector<std::vector<std::size_t>> actions(p.generators.size());
    for (const auto& [key, value] : j.at("actions").items()) {
      const auto idx = p.generator_index(key);
      if (!idx) throw ParseError("actions: unknown generator '" + key + "'");
      actions[*idx] = value.get<std::vector<std::size_t>>();
    }
    return Instance(schema, std::move(carriers), std::move(actions));
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

inline json hom_to_json(const Hom& h) {
  const auto& p = h.dom.schema();
  json comps = json::object();
  for (std::size_t s = 0; s < p.objects.size(); ++s)
    comps[p.objects[s]] = h.components[s];
  return json{{"dom", instance_to_json(h.dom)},
              {"cod", instance_to_json(h.cod)},
              {"components", comps}};
}

inline Hom hom_from_json(const json& j) {
  try {
    auto dom = instance_from_json(j.at("dom"));
    auto cod = instance_from_json(j.at("cod"));
    const auto& p = dom.schema();
    std::vector<std::vector<std::size_t>> comps(p.objects.size());
    for (const auto& [key, value] : j.at("components").items()) {
      const auto idx = p.object_index(key);
      if (!idx) throw ParseError("components: unknown sort '" + key + "'");
      comps[*idx] = value.get<std::vector<std::size_t>>();
    }
    Hom h{std::move(dom), std::move(cod), std::move(comps)};
    const auto report = check_hom(h);
    if (!report.shape_errors.empty())
      throw ParseError("hom: " + report.shape_errors.front());
    return h;
  } catch (const json::exception& e) {
    throw ParseError(std::string("hom: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Decompositions

inline json decomposition_to_json(const StructuredDecomposition& d) {
  json shape{{"vertices", d.shape.vertices}, {"edges", d.shape.edges}};
  json bags = json::array();
  for (const auto& b : d.bags) bags.push_back(instance_to_json(b));
  json adhesions = json::array();
  for (const auto& a : d.adhesions) adhesions.push_back(instance_to_json(a));
  json legs = json::array();
  for (const auto& [l, r] : d.legs)
    legs.push_back(json::array({hom_to_json(l), hom_to_json(r)}));
  return json{{"shape", shape}, {"bags", bags}, {"adhesions", adhesions}, {"legs", legs}};
}

inline StructuredDecomposition decomposition_from_json(const json& j) {
  try {
    StructuredDecomposition d;
    d.shape.vertices = j.at("shape").at("vertices").get<std::size_t>();
    for (const auto& e : j.at("shape").at("edges"))
      d.shape.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()});
    for (const auto& b : j.at("bags")) d.bags.push_back(instance_from_json(b));
    for (const auto& a : j.at("adhesions")) d.adhesions.push_back(instance_from_json(a));
    for (const auto& l : j.at("legs"))
      d.legs.push_back({hom_from_json(l.at(0)), hom_from_json(l.at(1))});
    return d;
  } catch (const json::exception& e) {
    throw ParseError(std::string("decomposition: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Results

inline json contraction_to_json(const Contraction& c) {
  return json{{"lasso", c.lasso},
              {"base", instance_to_json(c.base)},
              {"sub", hom_to_json(c.sub)},
              {"lambda_x", instance_to_json(c.lambda_x)},
              {"eta_x", hom_to_json(c.eta_x)},
              {"result", instance_to_json(c.result)},
              {"quotient", hom_to_json(c.quotient)},
              {"co_leg", hom_to_json(c.co_leg)}};
}

inline json diagram_to_json(const FiniteDiagram& d) {
  json nodes = json::array();
  for (const auto& n : d.nodes) nodes.push_back(instance_to_json(n));
  json arrows = json::array();
  for (const auto& a : d.arrows)
    arrows.push_back(
        {{"src", a.src}, {"dst", a.dst}, {"hom", hom_to_json(a.hom)}});
  return json{{"nodes", nodes}, {"arrows", arrows}};
}

inline json pushforward_to_json(const PushforwardResult& r, bool with_intermediates) {
  json out{{"method", r.method},
           {"contraction", contraction_to_json(r.contraction)},
           {"decomposition", decomposition_to_json(r.output)}};
  json bag_maps = json::array();
  for (const auto& m : r.bag_maps) bag_maps.push_back(hom_to_json(m));
  out["bag_maps"] = bag_maps;
  json adhesion_maps = json::array();
  for (const auto& m : r.adhesion_maps) adhesion_maps.push_back(hom_to_json(m));
  out["adhesion_maps"] = adhesion_maps;
  if (with_intermediates && r.intermediates) {
    out["intermediates"] =
        json{{"pulled_back", decomposition_to_json(r.intermediates->pulled_back)},
             {"q", diagram_to_json(r.intermediates->q)},
             {"h", diagram_to_json(r.intermediates->h)}};
  }
  return out;
}

inline json failures_to_json(const std::vector<LassoCheckFailure>& fs) {
  json out = json::array();
  for (const auto& f : fs) out.push_back({{"kind", f.kind}, {"witness", f.detail}});
  return out;
}

inline json axiom_report_to_json(const AxiomReport& r) {
  return json{{"lasso", r.lasso},
              {"bounds", r.bounds},
              {"universe_size", r.universe_size},
              {"homs_checked", r.homs_checked},
              {"spans_checked", r.spans_checked},
              {"l2_epi_failures", failures_to_json(r.epi_failures)},
              {"naturality_failures", failures_to_json(r.naturality_failures)},
              {"l1_failures", failures_to_json(r.l1_failures)},
              {"pass", r.pass()},
              {"note", "finite-universe check: necessary, not sufficient"}};
}

inline json strong_report_to_json(const StrongReport& r) {
  return json{{"lasso", r.lasso},
              {"bounds", r.bounds},
              {"universe_size", r.universe_size},
              {"spans_checked", r.spans_checked},
              {"parallel_pairs_checked", r.parallel_pairs_checked},
              {"failures", failures_to_json(r.failures)},
              {"pass", r.pass()},
              {"note", "finite-universe check: necessary, not sufficient"}};
}

inline json probe_report_to_json(const ProbeReport& r) {
  json survivors = json::array();
  for (const auto& s : r.survivors) {
    json kernels = json::array();
    for (const auto& k : s.kernels) kernels.push_back(k);
    survivors.push_back({{"label", s.label}, {"kernels", kernels}});
  }
  return json{{"schema", r.schema},
              {"bounds", r.bounds},
              {"universe_size", r.universe_size},
              {"families_checked", r.candidate_assignments},
              {"survivors", survivors},
              {"note", "finite-universe probe: survival is necessary, not sufficient"}};
}

}  // namespace lassokit
