#pragma once

// Dependence layer on top of the CFG.
//
// CDG: classic control dependence from the post-dominator tree. The CFG is
// augmented with a virtual START->END edge so statements under no branch
// become dependent on the entry node. Loop headers pick up the usual
// self-dependence edge.
//
// DDG: reaching definitions without alias analysis. An edge d -> u (variable
// v) exists iff d defines v, u reads v, and some CFG path from d to u is free
// of intervening definitions of v.

#include "pathvec/cfg.hpp"
#include "pathvec/graph.hpp"

namespace pathvec {

// Appends CDG and DDG edges. Throws PostDominanceFailure if END is
// unreachable from any CFG node (a frontend bug, fatal for the function).
void build_pdg(CodeGraph& graph, const CfgInfo& info);

}  // namespace pathvec
