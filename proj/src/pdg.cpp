#include "pathvec/pdg.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "pathvec/errors.hpp"

namespace pathvec {

namespace {

struct CfgView {
  std::vector<int> nodes;                 // graph node ids, ascending
  std::map<int, int> index;               // graph id -> dense index
  std::vector<std::vector<int>> succ;     // dense indices
  std::vector<std::vector<int>> pred;
  int start = -1, end = -1;               // dense indices
};

CfgView cfg_view(const CodeGraph& g) {
  CfgView v;
  std::set<int> ids;
  if (g.start_id >= 0) ids.insert(g.start_id);
  if (g.end_id >= 0) ids.insert(g.end_id);
  for (const Edge& e : g.edges)
    if (e.label == EdgeLabel::Cfg) {
      ids.insert(e.src);
      ids.insert(e.dst);
    }
  v.nodes.assign(ids.begin(), ids.end());
  for (size_t i = 0; i < v.nodes.size(); ++i) v.index[v.nodes[i]] = static_cast<int>(i);
  v.succ.resize(v.nodes.size());
  v.pred.resize(v.nodes.size());
  for (const Edge& e : g.edges)
    if (e.label == EdgeLabel::Cfg) {
      v.succ[v.index[e.src]].push_back(v.index[e.dst]);
      v.pred[v.index[e.dst]].push_back(v.index[e.src]);
    }
  v.start = v.index.at(g.start_id);
  v.end = v.index.at(g.end_id);
  return v;
}

// ---------------------------------------------------------------------------
// Control dependence
// ---------------------------------------------------------------------------

// Iterative post-dominator sets over the CFG augmented with START->END.
// Functions are small, so the O(n^2) set formulation is plenty and easy to
// trust.
std::vector<int> immediate_post_dominators(const CfgView& v,
                                           const std::vector<std::pair<int, int>>& edges) {
  const size_t n = v.nodes.size();
  std::vector<std::vector<int>> succ(n);
  for (auto [a, b] : edges) succ[a].push_back(b);

  // Every node must reach END or the tree is undefined.
  std::vector<char> reaches_end(n, 0);
  std::vector<std::vector<int>> pred(n);
  for (auto [a, b] : edges) pred[b].push_back(a);
  std::vector<int> stack = {v.end};
  reaches_end[v.end] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int p : pred[u])
      if (!reaches_end[p]) {
        reaches_end[p] = 1;
        stack.push_back(p);
      }
  }
  for (size_t i = 0; i < n; ++i)
    if (!reaches_end[i])
      throw PostDominanceFailure("CFG node cannot reach END");

  std::vector<std::set<int>> pdom(n);
  std::set<int> all;
  for (size_t i = 0; i < n; ++i) all.insert(static_cast<int>(i));
  for (size_t i = 0; i < n; ++i)
    pdom[i] = (static_cast<int>(i) == v.end) ? std::set<int>{v.end} : all;

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < n; ++i) {
      if (static_cast<int>(i) == v.end) continue;
      std::set<int> meet;
      bool first = true;
      for (int s : succ[i]) {
        if (first) {
          meet = pdom[s];
          first = false;
        } else {
          std::set<int> tmp;
          std::set_intersection(meet.begin(), meet.end(), pdom[s].begin(),
                                pdom[s].end(), std::inserter(tmp, tmp.begin()));
          meet = std::move(tmp);
        }
      }
      meet.insert(static_cast<int>(i));
      if (meet != pdom[i]) {
        pdom[i] = std::move(meet);
        changed = true;
      }
    }
  }

  std::vector<int> ipdom(n, -1);
  for (size_t i = 0; i < n; ++i) {
    if (static_cast<int>(i) == v.end) continue;
    // The strict post-dominators form a chain; the immediate one is the
    // smallest, i.e. the one post-dominated by all the others.
    size_t want = pdom[i].size() - 1;
    for (int c : pdom[i]) {
      if (c == static_cast<int>(i)) continue;
      if (pdom[c].size() == want) {
        ipdom[i] = c;
        break;
      }
    }
  }
  return ipdom;
}

void add_control_dependences(CodeGraph& g, const CfgView& v) {
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 0; i < v.nodes.size(); ++i)
    for (int s : v.succ[i]) edges.push_back({static_cast<int>(i), s});
  edges.push_back({v.start, v.end});  // virtual entry edge

  std::vector<int> ipdom = immediate_post_dominators(v, edges);

  std::set<std::pair<int, int>> cdg;
  for (auto [a, s] : edges) {
    // Walk the post-dominator tree from the edge target up to (but not
    // including) ipdom(a); everything passed is control dependent on a.
    int t = s;
    while (t != ipdom[a] && t != -1) {
      cdg.insert({a, t});
      t = ipdom[t];
    }
  }
  for (auto [a, b] : cdg)
    g.add_edge(v.nodes[a], v.nodes[b], EdgeLabel::Cdg);
}

// ---------------------------------------------------------------------------
// Data dependence
// ---------------------------------------------------------------------------

void add_data_dependences(CodeGraph& g, const CfgView& v, const CfgInfo& info) {
  const size_t n = v.nodes.size();

  struct Def {
    int node;  // dense index
    std::string var;
  };
  std::vector<Def> defs;
  std::vector<std::vector<int>> gen(n);  // def indices generated per node
  for (size_t i = 0; i < n; ++i) {
    auto it = info.def_use.find(v.nodes[i]);
    if (it == info.def_use.end()) continue;
    for (const std::string& var : it->second.defs) {
      gen[i].push_back(static_cast<int>(defs.size()));
      defs.push_back(Def{static_cast<int>(i), var});
    }
  }
  if (defs.empty()) return;

  const size_t words = (defs.size() + 63) / 64;
  auto make_bits = [&] { return std::vector<uint64_t>(words, 0); };
  auto set_bit = [](std::vector<uint64_t>& b, size_t i) { b[i / 64] |= 1ull << (i % 64); };
  auto test_bit = [](const std::vector<uint64_t>& b, size_t i) {
    return (b[i / 64] >> (i % 64)) & 1ull;
  };

  // kill[i]: all defs of any variable that node i redefines.
  std::vector<std::vector<uint64_t>> kill(n, make_bits()), genb(n, make_bits());
  for (size_t i = 0; i < n; ++i) {
    for (int d : gen[i]) {
      set_bit(genb[i], d);
      for (size_t k = 0; k < defs.size(); ++k)
        if (defs[k].var == defs[d].var) set_bit(kill[i], k);
    }
  }

  std::vector<std::vector<uint64_t>> in(n, make_bits()), out(n, make_bits());
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < n; ++i) {
      auto next_in = make_bits();
      for (int p : v.pred[i])
        for (size_t w = 0; w < words; ++w) next_in[w] |= out[p][w];
      auto next_out = genb[i];
      for (size_t w = 0; w < words; ++w)
        next_out[w] |= next_in[w] & ~kill[i][w];
      if (next_in != in[i] || next_out != out[i]) {
        in[i] = std::move(next_in);
        out[i] = std::move(next_out);
        changed = true;
      }
    }
  }

  std::set<std::pair<int, int>> ddg;
  for (size_t i = 0; i < n; ++i) {
    auto it = info.def_use.find(v.nodes[i]);
    if (it == info.def_use.end()) continue;
    for (const std::string& var : it->second.uses)
      for (size_t d = 0; d < defs.size(); ++d)
        if (defs[d].var == var && test_bit(in[i], d))
          ddg.insert({defs[d].node, static_cast<int>(i)});
  }
  for (auto [a, b] : ddg)
    g.add_edge(v.nodes[a], v.nodes[b], EdgeLabel::Ddg);
}

}  // namespace

void build_pdg(CodeGraph& graph, const CfgInfo& info) {
  if (graph.start_id < 0 || graph.end_id < 0)
    throw PostDominanceFailure("build_pdg requires a CFG with START/END");
  CfgView v = cfg_view(graph);
  add_control_dependences(graph, v);
  add_data_dependences(graph, v, info);
}

}  // namespace pathvec
