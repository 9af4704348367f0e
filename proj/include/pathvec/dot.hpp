#pragma once

// DOT exchange for code graphs, one digraph per function. Nodes carry a
// label attribute of the form "(TYPE,CODE)"; edges carry label="AST|CFG|CDG|DDG"
// and branch edges an optional guard attribute. Export orders nodes by id and
// edges by insertion so identical graphs serialize identically; import
// renumbers nodes densely, re-derives terminal leaf indices from AST edge
// order, and synthesizes START/END when a CFG lacks them.

#include <string>
#include <string_view>
#include <vector>

#include "pathvec/graph.hpp"

namespace pathvec {

std::string export_dot(const CodeGraph& graph);

struct DotImport {
  std::vector<CodeGraph> graphs;
  std::vector<std::string> warnings;
};

DotImport import_dot(std::string_view content, const std::string& filename = "<dot>");

}  // namespace pathvec
