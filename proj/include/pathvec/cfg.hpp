#pragma once

// Statement-granularity control flow. Each executable statement or branch
// predicate becomes one CFG node; synthetic START/END nodes delimit the
// function. Branch edges carry "true"/"false" guards; loop back edges close
// while/for bodies and continue statements. Statements that can never
// execute are pruned with a warning.

#include <map>
#include <string>
#include <vector>

#include "pathvec/graph.hpp"
#include "pathvec/parser.hpp"

namespace pathvec {

// Variables written/read by one CFG node, used by the dependence pass.
// Assignment and declarator targets count as definitions (the base identifier
// of the lvalue); every other identifier occurrence is a use. Compound
// assignment and ++/-- both define and use their target. Calls define nothing.
struct DefUse {
  std::vector<std::string> defs;  // sorted, unique
  std::vector<std::string> uses;
};

struct CfgInfo {
  std::map<int, DefUse> def_use;       // keyed by CFG node id
  std::vector<std::string> warnings;   // e.g. pruned unreachable statements
};

// Adds CFG nodes and edges for `fn` to a graph already holding its syntax
// tree, sets graph.start_id/end_id, and returns per-node def/use sets.
CfgInfo build_cfg(CodeGraph& graph, const FunctionAst& fn);

}  // namespace pathvec
