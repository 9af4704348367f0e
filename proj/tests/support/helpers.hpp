#pragma once

// Small conveniences shared by the test binaries.

#include <string>
#include <string_view>

#include "pathvec/cfg.hpp"
#include "pathvec/graph.hpp"
#include "pathvec/parser.hpp"
#include "pathvec/pdg.hpp"

namespace pathvec::testing {

inline FunctionAst parse_one(std::string_view src) {
  auto fns = parse_c(src);
  if (fns.size() != 1)
    throw std::runtime_error("expected exactly one function, got " +
                             std::to_string(fns.size()));
  return std::move(fns[0]);
}

struct BuiltGraph {
  CodeGraph graph;
  CfgInfo info;
};

// AST + CFG layers.
inline BuiltGraph graph_with_cfg(std::string_view src) {
  FunctionAst fn = parse_one(src);
  BuiltGraph b;
  b.graph = build_ast_graph(fn);
  b.info = build_cfg(b.graph, fn);
  return b;
}

// All four layers.
inline BuiltGraph full_graph(std::string_view src) {
  BuiltGraph b = graph_with_cfg(src);
  build_pdg(b.graph, b.info);
  return b;
}

// Node id of the first node with this type, -1 if absent.
inline int find_type(const CodeGraph& g, std::string_view type) {
  for (const Node& n : g.nodes)
    if (n.type == type) return n.id;
  return -1;
}

inline int count_edges(const CodeGraph& g, EdgeLabel label) {
  int n = 0;
  for (const Edge& e : g.edges)
    if (e.label == label) ++n;
  return n;
}

inline bool has_edge(const CodeGraph& g, int src, int dst, EdgeLabel label) {
  for (const Edge& e : g.edges)
    if (e.src == src && e.dst == dst && e.label == label) return true;
  return false;
}

}  // namespace pathvec::testing
