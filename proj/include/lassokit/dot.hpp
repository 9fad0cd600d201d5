#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lassokit/decomposition.hpp"
#include "lassokit/instance.hpp"

namespace lassokit {

namespace detail {

// Sorts drawable as edges: a sort with exactly two generators into the
// vertex sort "V" (source first, target second in schema order).
struct GraphView {
  std::size_t vertex_sort;
  struct EdgeSort {
    std::size_t sort;
    std::size_t src_gen;
    std::size_t tgt_gen;
  };
  std::vector<EdgeSort> edge_sorts;
};

inline std::optional<GraphView> graph_view(const SchemaPresentation& p) {
  const auto v = p.object_index("V");
  if (!v) return std::nullopt;
  GraphView view;
  view.vertex_sort = *v;
  for (std::size_t s = 0; s < p.objects.size(); ++s) {
    if (s == *v) continue;
    std::vector<std::size_t> into_v;
    for (std::size_t g = 0; g < p.generators.size(); ++g)
      if (p.object_index(p.generators[g].dom) == s &&
          p.object_index(p.generators[g].cod) == *v)
        into_v.push_back(g);
    if (into_v.size() != 2) return std::nullopt;
    view.edge_sorts.push_back({s, into_v[0], into_v[1]});
  }
  return view;
}

inline void emit_instance_body(std::ostringstream& out, const Instance& x,
                               const std::string& prefix,
                               const std::vector<std::string>* vertex_labels) {
  const auto view = graph_view(x.schema());
  if (view) {
    for (std::size_t i = 0; i < x.carrier(view->vertex_sort); ++i) {
      out << "    " << prefix << "v" << i << " [label=\"";
      out << (vertex_labels ? (*vertex_labels)[i] : "v" + std::to_string(i));
      out << "\"];\n";
    }
    for (const auto& es : view->edge_sorts)
      for (std::size_t e = 0; e < x.carrier(es.sort); ++e)
        out << "    " << prefix << "v" << x.action(es.src_gen)[e] << " -> " << prefix
            << "v" << x.action(es.tgt_gen)[e] << " [label=\""
            << x.schema().objects[es.sort] << e << "\"];\n";
    return;
  }
  // Generic rendering: every element a node, every action a labelled arrow.
  const auto& p = x.schema();
  for (std::size_t s = 0; s < x.sorts(); ++s)
    for (std::size_t i = 0; i < x.carrier(s); ++i)
      out << "    " << prefix << "s" << s << "_" << i << " [label=\"" << p.objects[s]
          << i << "\",shape=box];\n";
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    const auto ds = *p.object_index(p.generators[g].dom);
    const auto cs = *p.object_index(p.generators[g].cod);
    for (std::size_t i = 0; i < x.carrier(ds); ++i)
      out << "    " << prefix << "s" << ds << "_" << i << " -> " << prefix << "s" << cs
          << "_" << x.action(g)[i] << " [label=\"" << p.generators[g].name
          << "\",color=gray];\n";
  }
}

}  // namespace detail

inline std::string to_dot(const Instance& x) {
  std::ostringstream out;
  out << "digraph instance {\n";
  detail::emit_instance_body(out, x, "", nullptr);
  out << "}\n";
  return out.str();
}

// Quotient rendering: the codomain with every node labelled by the list of
// its preimages.
inline std::string to_dot_quotient(const Hom& q) {
  std::ostringstream out;
  const auto view = detail::graph_view(q.cod.schema());
  std::vector<std::string> labels;
  if (view) {
    labels.resize(q.cod.carrier(view->vertex_sort));
    for (std::size_t c = 0; c < labels.size(); ++c) labels[c] = "{";
    for (std::size_t x = 0; x < q.dom.carrier(view->vertex_sort); ++x) {
      auto& l = labels[q.components[view->vertex_sort][x]];
      if (l.size() > 1) l += ",";
      l += std::to_string(x);
    }
    for (auto& l : labels) l += "}";
  }
  out << "digraph quotient {\n";
  detail::emit_instance_body(out, q.cod, "", view ? &labels : nullptr);
  out << "}\n";
  return out.str();
}

// Bags as clusters; every adhesion element becomes a dashed link between its
// two images.
inline std::string to_dot(const StructuredDecomposition& d) {
  std::ostringstream out;
  out << "digraph decomposition {\n  compound=true;\n";
  for (std::size_t b = 0; b < d.bags.size(); ++b) {
    out << "  subgraph cluster_bag" << b << " {\n    label=\"bag " << b << "\";\n";
    detail::emit_instance_body(out, d.bags[b], "b" + std::to_string(b) + "_", nullptr);
    out << "  }\n";
  }
  const auto view =
      d.bags.empty() ? std::nullopt : detail::graph_view(d.bags[0].schema());
  if (view) {
    for (std::size_t e = 0; e < d.shape.edges.size(); ++e) {
      const auto [sv, tv] = d.shape.edges[e];
      const auto& [ls, lt] = d.legs[e];
      for (std::size_t i = 0; i < d.adhesions[e].carrier(view->vertex_sort); ++i)
        out << "  b" << sv << "_v" << ls.components[view->vertex_sort][i] << " -> b"
            << tv << "_v" << lt.components[view->vertex_sort][i]
            << " [style=dashed,dir=none,color=goldenrod];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace lassokit
