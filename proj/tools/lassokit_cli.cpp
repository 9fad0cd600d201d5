// Command-line front end: ingest schemas, instances and decompositions, run
// contractions, pushforwards, pullbacks, axiom checks and probes.
//
// Exit codes: 0 ok, 2 parse error, 3 precondition violation, 4 schema
// mismatch, 5 colimit mismatch, 6 bound exceeded, 1 internal failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lassokit/contraction.hpp"
#include "lassokit/dot.hpp"
#include "lassokit/json_io.hpp"
#include "lassokit/lasso.hpp"
#include "lassokit/lasso_checks.hpp"

namespace {

using namespace lassokit;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << text << "\n";
}

// Lasso names: trivial | cc | smoothing | rgrph:{cc,deloop,source,target,
// gather,terminal} | color:{i,...}; composition with '.', outer first.
Lasso parse_single_lasso(const std::string& name, const SchemaPtr& schema) {
  if (name == "trivial") return lasso_trivial(schema);
  if (name == "cc") {
    if (same_schema(schema, grph_schema())) return lasso_cc();
    if (same_schema(schema, rgrph_schema())) return lasso_rgrph(RGrphLasso::cc);
    throw SchemaMismatchError("'cc' expects the Grph or RGrph schema");
  }
  if (name == "smoothing") return rgrph_smoothing_fixture();
  if (name.rfind("rgrph:", 0) == 0) {
    const auto kind = name.substr(6);
    if (kind == "cc") return lasso_rgrph(RGrphLasso::cc);
    if (kind == "deloop") return lasso_rgrph(RGrphLasso::deloop);
    if (kind == "source") return lasso_rgrph(RGrphLasso::source);
    if (kind == "target") return lasso_rgrph(RGrphLasso::target);
    if (kind == "gather") return lasso_rgrph(RGrphLasso::gather);
    if (kind == "terminal") return lasso_rgrph(RGrphLasso::deloop_then_cc);
    throw ParseError("unknown RGrph lasso '" + kind + "'");
  }
  if (name.rfind("color:", 0) == 0) {
    if (!schema || schema->objects.size() < 2)
      throw SchemaMismatchError("colour lassos need a CGr_k schema");
    const std::size_t k = schema->objects.size() - 1;
    std::string list = name.substr(6);
    if (!list.empty() && list.front() == '{') list = list.substr(1);
    if (!list.empty() && list.back() == '}') list.pop_back();
    std::set<std::size_t> colors;
    std::string token;
    for (char ch : list + ",") {
      if (ch == ',') {
        if (!token.empty()) colors.insert(std::stoul(token));
        token.clear();
      } else if (ch >= '0' && ch <= '9') {
        token += ch;
      } else {
        throw ParseError("bad colour list in '" + name + "'");
      }
    }
    return lasso_color(k, colors);
  }
  throw ParseError("unknown lasso '" + name + "'");
}

Lasso parse_lasso(const std::string& name, const SchemaPtr& schema) {
  std::vector<std::string> parts;
  std::string token;
  for (char ch : name + ".") {
    if (ch == '.' && token.rfind("color:{", 0) != 0) {
      if (!token.empty()) parts.push_back(token);
      token.clear();
    } else {
      token += ch;
      if (token.rfind("color:{", 0) == 0 && ch == '}') {
        parts.push_back(token);
        token.clear();
      }
    }
  }
  if (parts.empty()) throw ParseError("empty lasso name");
  Lasso result = parse_single_lasso(parts.back(), schema);
  for (std::size_t i = parts.size() - 1; i-- > 0;)
    result = compose_lassos(parse_single_lasso(parts[i], schema), result);
  return result;
}

SchemaPtr schema_for_lasso_name(const std::string& name, const std::string& explicit_schema) {
  if (!explicit_schema.empty()) return builtin_schema(explicit_schema);
  if (name.rfind("rgrph:", 0) == 0 || name == "smoothing" ||
      name.find(".rgrph:") != std::string::npos)
    return rgrph_schema();
  if (name.rfind("cc", 0) == 0 || name == "trivial") return grph_schema();
  throw ParseError("cannot infer a schema for lasso '" + name + "'; use --schema");
}

struct GlobalConfig {
  std::string config_path;
  void apply() const {
    if (config_path.empty()) return;
    const auto j = load_json(config_path);
    if (j.contains("max_carrier")) {
      // The search-limit ceiling is read through the environment.
      setenv("LASSOKIT_MAX_CARRIER",
             std::to_string(j.at("max_carrier").get<std::size_t>()).c_str(), 1);
    }
  }
};

int run(int argc, char** argv) {
  CLI::App app{"lasso contractions and structured decompositions on finite copresheaves"};
  app.require_subcommand(1);
  GlobalConfig config;
  app.add_option("--config", config.config_path, "optional JSON config file");

  // contract
  std::string base_path, sub_path, lasso_name, out_path, dot_path;
  auto* contract_cmd = app.add_subcommand("contract", "contract an instance along a subobject");
  contract_cmd->add_option("--base", base_path, "base instance file")->required();
  contract_cmd->add_option("--sub", sub_path, "monic hom into the base")->required();
  contract_cmd->add_option("--lasso", lasso_name, "lasso name")->required();
  contract_cmd->add_option("--out", out_path, "output file ('-' for stdout)");
  contract_cmd->add_option("--dot", dot_path, "DOT rendering of the quotient");

  // pushforward
  std::string decomp_path, method = "images";
  bool with_intermediates = false;
  auto* push_cmd = app.add_subcommand("pushforward", "push a decomposition along a contraction");
  push_cmd->add_option("--decomp", decomp_path, "decomposition file")->required();
  push_cmd->add_option("--sub", sub_path, "monic hom into the colimit")->required();
  push_cmd->add_option("--lasso", lasso_name, "lasso name")->required();
  push_cmd->add_option("--method", method, "images | span | both")
      ->check(CLI::IsMember({"images", "span", "both"}));
  push_cmd->add_flag("--intermediates", with_intermediates, "serialize intermediates");
  push_cmd->add_option("--out", out_path, "output file");

  // pullback
  std::string hom_path;
  auto* pull_cmd = app.add_subcommand("pullback", "pull a decomposition back along a morphism");
  pull_cmd->add_option("--decomp", decomp_path, "decomposition file")->required();
  pull_cmd->add_option("--hom", hom_path, "morphism into the colimit")->required();
  pull_cmd->add_option("--out", out_path, "output file");
  pull_cmd->add_option("--dot", dot_path, "DOT rendering of the result");

  // colimit
  auto* colimit_cmd = app.add_subcommand("colimit", "colimit of a decomposition");
  colimit_cmd->add_option("--decomp", decomp_path, "decomposition file")->required();
  colimit_cmd->add_option("--out", out_path, "output file");

  // check
  std::string schema_name, report_path;
  std::size_t max_vertices = 2, max_edges = 2;
  bool strong = false, probe = false;
  auto* check_cmd = app.add_subcommand("check", "axiom checks and the canonicity probe");
  check_cmd->add_option("--lasso", lasso_name, "lasso name (omit with --probe)");
  check_cmd->add_option("--schema", schema_name, "universe schema (Grph, RGrph, CGr_k, Petri)");
  check_cmd->add_option("--max-vertices", max_vertices, "vertex carrier ceiling");
  check_cmd->add_option("--max-edges", max_edges, "edge carrier ceiling");
  check_cmd->add_flag("--strong", strong, "also check monic-colimit preservation");
  check_cmd->add_flag("--probe", probe, "run the unit-family survival probe");
  check_cmd->add_option("--report", report_path, "report file");

  // explore
  std::string sub2_path;
  std::size_t max_elements = 16;
  auto* explore_cmd = app.add_subcommand("explore", "search for a composite contraction witness");
  explore_cmd->add_option("--base", base_path, "base instance file")->required();
  explore_cmd->add_option("--sub1", sub_path, "first subobject")->required();
  explore_cmd->add_option("--sub2", sub2_path, "subobject of the first contraction")->required();
  explore_cmd->add_option("--lasso", lasso_name, "lasso name")->required();
  explore_cmd->add_option("--max-elements", max_elements, "subobject search ceiling");
  explore_cmd->add_option("--out", out_path, "output file");

  CLI11_PARSE(app, argc, argv);
  config.apply();

  if (contract_cmd->parsed()) {
    const auto base = instance_from_json(load_json(base_path));
    const auto sub = hom_from_json(load_json(sub_path));
    const auto L = parse_lasso(lasso_name, base.schema_ptr());
    const auto c = contract(base, sub, L);
    write_output(out_path, contraction_to_json(c).dump(2));
    if (!dot_path.empty()) write_output(dot_path, to_dot_quotient(c.quotient));
    return 0;
  }
  if (push_cmd->parsed()) {
    const auto d = decomposition_from_json(load_json(decomp_path));
    const auto sub = hom_from_json(load_json(sub_path));
    const auto schema = d.bags.empty() ? sub.dom.schema_ptr() : d.bags[0].schema_ptr();
    const auto L = parse_lasso(lasso_name, schema);
    json out;
    if (method == "images") {
      out = pushforward_to_json(pushforward_images(d, sub, L), with_intermediates);
    } else if (method == "span") {
      out = pushforward_to_json(pushforward_span(d, sub, L), with_intermediates);
    } else {
      const auto a = pushforward_images(d, sub, L);
      const auto b = pushforward_span(d, sub, L);
      const auto eq = equivalence_check(d, sub, L);
      out = json{{"images", pushforward_to_json(a, with_intermediates)},
                 {"span", pushforward_to_json(b, with_intermediates)},
                 {"equivalent", eq.equal},
                 {"differing_nodes", eq.differing_nodes}};
    }
    write_output(out_path, out.dump(2));
    return 0;
  }
  if (pull_cmd->parsed()) {
    const auto d = decomposition_from_json(load_json(decomp_path));
    const auto delta = hom_from_json(load_json(hom_path));
    const auto r = pullback_decomposition(d, delta);
    write_output(out_path, decomposition_to_json(r).dump(2));
    if (!dot_path.empty()) write_output(dot_path, to_dot(r));
    return 0;
  }
  if (colimit_cmd->parsed()) {
    const auto d = decomposition_from_json(load_json(decomp_path));
    const auto c = decomposition_colimit(d);
    json legs = json::array();
    for (const auto& l : c.legs) legs.push_back(hom_to_json(l));
    write_output(out_path, json{{"apex", instance_to_json(c.apex)}, {"legs", legs}}.dump(2));
    return 0;
  }
  if (check_cmd->parsed()) {
    const auto schema = probe && lasso_name.empty()
                            ? builtin_schema(schema_name.empty() ? "Grph" : schema_name)
                            : schema_for_lasso_name(lasso_name, schema_name);
    const auto bounds = Bounds::graph(*schema, max_vertices, max_edges);
    json out;
    bool ok = true;
    if (probe) {
      std::vector<Lasso> known;
      if (same_schema(schema, grph_schema())) {
        known.push_back(lasso_trivial(schema));
        known.push_back(lasso_cc());
      } else if (same_schema(schema, rgrph_schema())) {
        known.push_back(lasso_trivial(schema));
        for (auto kind : {RGrphLasso::cc, RGrphLasso::deloop, RGrphLasso::source,
                          RGrphLasso::target, RGrphLasso::gather,
                          RGrphLasso::cc_then_deloop, RGrphLasso::deloop_then_cc})
          known.push_back(lasso_rgrph(kind));
      }
      out = probe_report_to_json(canonicity_probe(schema, bounds, known));
    } else {
      const auto L = parse_lasso(lasso_name, schema);
      const auto axioms = check_lasso_axioms(L, bounds);
      ok = axioms.pass();
      out = axiom_report_to_json(axioms);
      if (strong) {
        const auto s = check_strong(L, bounds);
        ok = ok && s.pass();
        out = json{{"axioms", out}, {"strong", strong_report_to_json(s)}};
      }
    }
    write_output(report_path.empty() ? out_path : report_path, out.dump(2));
    return ok ? 0 : 1;
  }
  if (explore_cmd->parsed()) {
    const auto base = instance_from_json(load_json(base_path));
    const auto f1 = hom_from_json(load_json(sub_path));
    const auto f2 = hom_from_json(load_json(sub2_path));
    const auto L = parse_lasso(lasso_name, base.schema_ptr());
    const auto r = conjecture52_probe(base, f1, f2, L, max_elements);
    json out{{"found", r.found}, {"subobjects_tried", r.subobjects_tried}};
    if (r.witness) out["witness"] = hom_to_json(*r.witness);
    if (r.comparison) out["comparison"] = hom_to_json(*r.comparison);
    write_output(out_path, out.dump(2));
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const SchemaMismatchError& e) {
    std::cerr << "schema mismatch: " << e.what() << "\n";
    return 4;
  } catch (const ColimitMismatchError& e) {
    std::cerr << "colimit mismatch: " << e.what() << "\n";
    return 5;
  } catch (const BoundExceededError& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return 6;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
