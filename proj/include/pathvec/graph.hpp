#pragma once

// Per-function code graph: one node set shared by the syntax tree and the
// flow/dependence layers, with typed directed edges on top.
//
// Key invariants:
//   - nodes[i].id == i (dense ids; importers renumber).
//   - leaf_index is present exactly on syntax-tree terminals and numbers them
//     0..L-1 left to right.
//   - CFG/CDG/DDG edges touch only statement-level nodes plus START/END.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pathvec {

enum class EdgeLabel { Ast = 0, Cfg = 1, Cdg = 2, Ddg = 3 };

const char* to_string(EdgeLabel label);
std::optional<EdgeLabel> edge_label_from(std::string_view text);

struct Node {
  int id = 0;
  std::string type;
  std::string token;
  std::optional<int> leaf_index;

  bool operator==(const Node&) const = default;
};

struct Edge {
  int src = 0;
  int dst = 0;
  EdgeLabel label = EdgeLabel::Ast;
  std::string guard;  // "true"/"false" on branch edges, otherwise empty

  bool operator==(const Edge&) const = default;
};

struct CodeGraph {
  std::string function_name;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  int start_id = -1;  // synthetic CFG entry, -1 until the CFG is built
  int end_id = -1;

  int add_node(std::string type, std::string token);
  void add_edge(int src, int dst, EdgeLabel label, std::string guard = "");

  const Node& node(int id) const;

  // Successor node ids following edges of one label, in edge insertion order.
  std::vector<std::vector<int>> out_adjacency(EdgeLabel label) const;
  std::vector<std::vector<int>> in_adjacency(EdgeLabel label) const;

  bool has_edges(EdgeLabel label) const;
  std::vector<int> ast_terminals() const;  // node ids ordered by leaf_index
};

}  // namespace pathvec
