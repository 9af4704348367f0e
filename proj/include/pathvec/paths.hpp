#pragma once

// Path contexts over the three graph layers.
//
// AST: for every pair of terminals at most `ast_max_width` apart in leaf
// order, the tree path start-terminal -> LCA -> end-terminal, kept when its
// edge count is at most `ast_max_len`. Directions are UP to the LCA and DOWN
// after it.
//
// CFG: depth-first walks from START where each back edge is traversed at most
// once per walk. A walk ends at END (all directions DOWN) or, when a back
// edge returns to a node already on the walk, the closed walk is emitted with
// a final UP direction and enumeration also continues through the header.
// A single loop with no other branches therefore yields exactly three paths:
// skip, through-once-to-END, through-once-to-header.
//
// PDG: maximal simple paths whose edges all share one label (CDG or DDG),
// rendered with every direction DOWN.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "pathvec/graph.hpp"

namespace pathvec {

enum class Rep { Ast = 0, Cfg = 1, Pdg = 2 };
inline constexpr std::array<const char*, 3> kRepNames = {"AST", "CFG", "PDG"};

inline constexpr const char* kUpArrow = "↑";
inline constexpr const char* kDownArrow = "↓";

struct PathContext {
  Rep kind = Rep::Ast;
  std::string start_token;
  std::string path_string;  // d1 a1 d2 ... ak dk+1 over node types
  std::string end_token;

  bool operator==(const PathContext&) const = default;
  bool operator<(const PathContext& o) const {
    return std::tie(kind, start_token, path_string, end_token) <
           std::tie(o.kind, o.start_token, o.path_string, o.end_token);
  }
};

struct ExtractionLimits {
  int ast_max_len = 8;
  int ast_max_width = 2;
  int max_ast = 200;
  int max_cfg = 10;
  int max_pdg = 100;
  int enumeration_cap = 10000;
  uint64_t seed = 1;

  int cap_for(Rep kind) const {
    switch (kind) {
      case Rep::Ast: return max_ast;
      case Rep::Cfg: return max_cfg;
      case Rep::Pdg: return max_pdg;
    }
    return 0;
  }
  void validate() const;  // throws std::invalid_argument
  bool operator==(const ExtractionLimits&) const = default;
};

struct ExtractResult {
  std::vector<PathContext> paths;
  bool truncated = false;  // enumeration cap reached; result is a prefix
};

ExtractResult extract_ast_paths(const CodeGraph& g, const ExtractionLimits& limits);
ExtractResult extract_cfg_paths(const CodeGraph& g, const ExtractionLimits& limits);
ExtractResult extract_pdg_paths(const CodeGraph& g, const ExtractionLimits& limits);

// Node-level forms, exposed so paths can be validated against the graph.
struct CfgWalk {
  std::vector<int> nodes;
  bool loop_terminated = false;  // ended by revisiting a node on the walk
};
std::vector<CfgWalk> enumerate_cfg_walks(const CodeGraph& g, int cap, bool* truncated);

struct PdgNodePath {
  std::vector<int> nodes;
  EdgeLabel label = EdgeLabel::Cdg;
};
std::vector<PdgNodePath> enumerate_pdg_paths(const CodeGraph& g, int cap, bool* truncated);

// Uniform sample without replacement down to the per-kind cap, deterministic
// under limits.seed; keeps the original relative order. Inputs at or under
// the cap pass through unchanged.
std::vector<PathContext> sample_paths(std::vector<PathContext> paths,
                                      const ExtractionLimits& limits);

// "start,path,end" with tokens lowercased and whitespace/commas replaced by
// underscores; an empty token falls back to the node type at that end.
std::string render_path_context(const PathContext& ctx);
PathContext parse_path_context(std::string_view text, Rep kind);

std::string normalize_token(std::string_view token);
std::vector<std::string> split_path_types(std::string_view path_string);

}  // namespace pathvec
