#include "pathvec/graph.hpp"

#include <algorithm>
#include <cassert>

#include "pathvec/errors.hpp"

namespace pathvec {

const char* to_string(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::Ast: return "AST";
    case EdgeLabel::Cfg: return "CFG";
    case EdgeLabel::Cdg: return "CDG";
    case EdgeLabel::Ddg: return "DDG";
  }
  return "?";
}

std::optional<EdgeLabel> edge_label_from(std::string_view text) {
  if (text == "AST") return EdgeLabel::Ast;
  if (text == "CFG") return EdgeLabel::Cfg;
  if (text == "CDG") return EdgeLabel::Cdg;
  if (text == "DDG") return EdgeLabel::Ddg;
  return std::nullopt;
}

int CodeGraph::add_node(std::string type, std::string token) {
  Node n;
  n.id = static_cast<int>(nodes.size());
  n.type = std::move(type);
  n.token = std::move(token);
  nodes.push_back(std::move(n));
  return nodes.back().id;
}

void CodeGraph::add_edge(int src, int dst, EdgeLabel label, std::string guard) {
  assert(src >= 0 && src < static_cast<int>(nodes.size()));
  assert(dst >= 0 && dst < static_cast<int>(nodes.size()));
  edges.push_back(Edge{src, dst, label, std::move(guard)});
}

const Node& CodeGraph::node(int id) const {
  if (id < 0 || id >= static_cast<int>(nodes.size()))
    throw IndexOutOfRange("node id " + std::to_string(id) + " out of range");
  return nodes[id];
}

std::vector<std::vector<int>> CodeGraph::out_adjacency(EdgeLabel label) const {
  std::vector<std::vector<int>> adj(nodes.size());
  for (const Edge& e : edges)
    if (e.label == label) adj[e.src].push_back(e.dst);
  return adj;
}

std::vector<std::vector<int>> CodeGraph::in_adjacency(EdgeLabel label) const {
  std::vector<std::vector<int>> adj(nodes.size());
  for (const Edge& e : edges)
    if (e.label == label) adj[e.dst].push_back(e.src);
  return adj;
}

bool CodeGraph::has_edges(EdgeLabel label) const {
  return std::any_of(edges.begin(), edges.end(),
                     [&](const Edge& e) { return e.label == label; });
}

std::vector<int> CodeGraph::ast_terminals() const {
  std::vector<int> ids;
  for (const Node& n : nodes)
    if (n.leaf_index) ids.push_back(n.id);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    return *nodes[a].leaf_index < *nodes[b].leaf_index;
  });
  return ids;
}

}  // namespace pathvec
