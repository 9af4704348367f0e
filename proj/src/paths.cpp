#include "pathvec/paths.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "pathvec/errors.hpp"
#include "pathvec/rng.hpp"

namespace pathvec {

namespace {

// Types become path-string segments; keep them free of the characters the
// rendered line format reserves.
std::string sanitize_type(std::string_view type) {
  std::string out(type);
  for (char& c : out)
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) c = '_';
  return out;
}

std::string token_or_type(const std::string& token, const std::string& type) {
  return token.empty() ? sanitize_type(type) : normalize_token(token);
}

}  // namespace

void ExtractionLimits::validate() const {
  if (ast_max_len < 1 || ast_max_width < 1 || max_ast < 1 || max_cfg < 1 ||
      max_pdg < 1 || enumeration_cap < 1)
    throw std::invalid_argument("extraction limits must all be at least 1");
}

std::string normalize_token(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (char c : token) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
      out += '_';
    else
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<std::string> split_path_types(std::string_view path_string) {
  std::vector<std::string> out;
  std::string cur;
  size_t i = 0;
  auto arrow_at = [&](const char* a) {
    return path_string.size() - i >= 3 && path_string.substr(i, 3) == a;
  };
  while (i < path_string.size()) {
    if (arrow_at(kUpArrow) || arrow_at(kDownArrow)) {
      out.push_back(cur);
      cur.clear();
      i += 3;
    } else {
      cur += path_string[i];
      ++i;
    }
  }
  out.push_back(cur);
  return out;
}

// ---------------------------------------------------------------------------
// AST paths
// ---------------------------------------------------------------------------

ExtractResult extract_ast_paths(const CodeGraph& g, const ExtractionLimits& limits) {
  limits.validate();
  ExtractResult res;

  std::vector<int> parent(g.nodes.size(), -1), depth(g.nodes.size(), -1);
  for (const Edge& e : g.edges)
    if (e.label == EdgeLabel::Ast) parent[e.dst] = e.src;
  auto depth_of = [&](int n) {
    // Memoized walk to the root.
    std::vector<int> chain;
    int u = n;
    while (u != -1 && depth[u] < 0) {
      chain.push_back(u);
      u = parent[u];
    }
    int d = (u == -1) ? -1 : depth[u];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++d;
    return depth[n];
  };

  std::vector<int> terms = g.ast_terminals();
  for (size_t i = 0; i < terms.size() && !res.truncated; ++i) {
    for (size_t j = i + 1;
         j < terms.size() &&
         static_cast<int>(j - i) <= limits.ast_max_width;
         ++j) {
      int a = terms[i], b = terms[j];
      int da = depth_of(a), db = depth_of(b);
      // Lift the deeper endpoint until both chains meet.
      int ua = a, ub = b, ha = da, hb = db;
      while (ha > hb) {
        ua = parent[ua];
        --ha;
      }
      while (hb > ha) {
        ub = parent[ub];
        --hb;
      }
      while (ua != ub && ua != -1 && ub != -1) {
        ua = parent[ua];
        ub = parent[ub];
        --ha;
      }
      if (ua != ub || ua == -1) continue;  // disconnected fragments
      int lca = ua, dl = ha;
      int len = (da - dl) + (db - dl);
      if (len > limits.ast_max_len) continue;

      std::string path = sanitize_type(g.nodes[a].type);
      for (int u = parent[a]; depth[u] >= dl; u = parent[u]) {
        path += kUpArrow;
        path += sanitize_type(g.nodes[u].type);
        if (u == lca) break;
      }
      std::vector<int> down;
      for (int u = b; u != lca; u = parent[u]) down.push_back(u);
      for (auto it = down.rbegin(); it != down.rend(); ++it) {
        path += kDownArrow;
        path += sanitize_type(g.nodes[*it].type);
      }
      res.paths.push_back(PathContext{Rep::Ast, g.nodes[a].token, std::move(path),
                                      g.nodes[b].token});
      if (static_cast<int>(res.paths.size()) >= limits.enumeration_cap) {
        res.truncated = true;
        break;
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// CFG walks
// ---------------------------------------------------------------------------

namespace {

struct CfgEdges {
  // Out edges as (edge index, target), in insertion order.
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<char> is_back;
};

CfgEdges cfg_edges(const CodeGraph& g) {
  CfgEdges ce;
  ce.out.resize(g.nodes.size());
  ce.is_back.assign(g.edges.size(), 0);
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    if (e.label == EdgeLabel::Cfg)
      ce.out[e.src].push_back({static_cast<int>(i), e.dst});
  }
  if (g.start_id < 0) return ce;

  // Iterative tri-colour DFS; an edge into a grey node closes a loop.
  enum { White, Grey, Black };
  std::vector<char> colour(g.nodes.size(), White);
  struct Frame {
    int node;
    size_t next = 0;
  };
  std::vector<Frame> stack;
  stack.push_back({g.start_id});
  colour[g.start_id] = Grey;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next >= ce.out[f.node].size()) {
      colour[f.node] = Black;
      stack.pop_back();
      continue;
    }
    auto [eidx, v] = ce.out[f.node][f.next++];
    if (colour[v] == Grey)
      ce.is_back[eidx] = 1;
    else if (colour[v] == White) {
      colour[v] = Grey;
      stack.push_back({v});
    }
  }
  return ce;
}

}  // namespace

std::vector<CfgWalk> enumerate_cfg_walks(const CodeGraph& g, int cap, bool* truncated) {
  std::vector<CfgWalk> walks;
  bool cut = false;
  if (g.start_id < 0 || g.end_id < 0 || !g.has_edges(EdgeLabel::Cfg)) {
    if (truncated) *truncated = false;
    return walks;
  }
  CfgEdges ce = cfg_edges(g);
  std::vector<int> walk;
  std::vector<int> visits(g.nodes.size(), 0);
  std::vector<char> used(g.edges.size(), 0);
  long budget = static_cast<long>(cap) * 64;

  auto step = [&](auto&& self, int u) -> bool {  // false = stop everything
    if (--budget < 0 || static_cast<int>(walks.size()) >= cap) {
      cut = true;
      return false;
    }
    if (u == g.end_id) {
      walks.push_back(CfgWalk{walk, false});
      if (static_cast<int>(walks.size()) >= cap) {
        cut = true;
        return false;
      }
      return true;
    }
    for (auto [eidx, v] : ce.out[u]) {
      if (ce.is_back[eidx]) {
        if (used[eidx]) continue;
        used[eidx] = 1;
        walk.push_back(v);
        if (visits[v] > 0) {
          // Closing a loop: emit the walk ended here, then also walk on
          // through the header.
          walks.push_back(CfgWalk{walk, true});
          if (static_cast<int>(walks.size()) >= cap) {
            cut = true;
            walk.pop_back();
            used[eidx] = 0;
            return false;
          }
        }
        ++visits[v];
        bool ok = self(self, v);
        --visits[v];
        walk.pop_back();
        used[eidx] = 0;
        if (!ok) return false;
      } else {
        if (visits[v] > 0) continue;  // plain edges never revisit
        walk.push_back(v);
        ++visits[v];
        bool ok = self(self, v);
        --visits[v];
        walk.pop_back();
        if (!ok) return false;
      }
    }
    return true;
  };

  walk.push_back(g.start_id);
  visits[g.start_id] = 1;
  step(step, g.start_id);
  if (truncated) *truncated = cut;
  return walks;
}

ExtractResult extract_cfg_paths(const CodeGraph& g, const ExtractionLimits& limits) {
  limits.validate();
  ExtractResult res;
  std::vector<CfgWalk> walks = enumerate_cfg_walks(g, limits.enumeration_cap, &res.truncated);
  for (const CfgWalk& w : walks) {
    if (w.nodes.size() < 2) continue;
    std::string path;
    for (size_t i = 0; i < w.nodes.size(); ++i) {
      if (i > 0)
        path += (i + 1 == w.nodes.size() && w.loop_terminated) ? kUpArrow : kDownArrow;
      path += sanitize_type(g.nodes[w.nodes[i]].type);
    }
    res.paths.push_back(PathContext{Rep::Cfg, g.nodes[w.nodes.front()].token,
                                    std::move(path), g.nodes[w.nodes.back()].token});
  }
  return res;
}

// ---------------------------------------------------------------------------
// PDG paths
// ---------------------------------------------------------------------------

std::vector<PdgNodePath> enumerate_pdg_paths(const CodeGraph& g, int cap, bool* truncated) {
  std::vector<PdgNodePath> out;
  bool cut = false;
  for (EdgeLabel label : {EdgeLabel::Cdg, EdgeLabel::Ddg}) {
    auto succ = g.out_adjacency(label);
    auto pred = g.in_adjacency(label);
    std::vector<char> on_path(g.nodes.size(), 0);
    std::vector<int> path;
    long budget = static_cast<long>(cap) * 64;

    auto extend = [&](auto&& self, int u) -> bool {
      if (--budget < 0 || static_cast<int>(out.size()) >= cap) {
        cut = true;
        return false;
      }
      bool extended = false;
      for (int v : succ[u]) {
        if (on_path[v]) continue;
        extended = true;
        path.push_back(v);
        on_path[v] = 1;
        bool ok = self(self, v);
        on_path[v] = 0;
        path.pop_back();
        if (!ok) return false;
      }
      if (!extended && path.size() >= 2) {
        // Forward-maximal; emit only if it cannot be prepended either.
        int s = path.front();
        bool back_max = true;
        for (int p : pred[s])
          if (!on_path[p]) {
            back_max = false;
            break;
          }
        if (back_max) {
          out.push_back(PdgNodePath{path, label});
          if (static_cast<int>(out.size()) >= cap) {
            cut = true;
            return false;
          }
        }
      }
      return true;
    };

    for (const Node& n : g.nodes) {
      if (succ[n.id].empty() && pred[n.id].empty()) continue;
      path = {n.id};
      on_path[n.id] = 1;
      bool ok = extend(extend, n.id);
      on_path[n.id] = 0;
      if (!ok) break;
    }
    if (cut) break;
  }
  if (truncated) *truncated = cut;
  return out;
}

ExtractResult extract_pdg_paths(const CodeGraph& g, const ExtractionLimits& limits) {
  limits.validate();
  ExtractResult res;
  std::vector<PdgNodePath> node_paths =
      enumerate_pdg_paths(g, limits.enumeration_cap, &res.truncated);
  for (const PdgNodePath& p : node_paths) {
    std::string path;
    for (size_t i = 0; i < p.nodes.size(); ++i) {
      if (i > 0) path += kDownArrow;
      path += sanitize_type(g.nodes[p.nodes[i]].type);
    }
    res.paths.push_back(PathContext{Rep::Pdg, g.nodes[p.nodes.front()].token,
                                    std::move(path), g.nodes[p.nodes.back()].token});
  }
  return res;
}

// ---------------------------------------------------------------------------
// Sampling and rendering
// ---------------------------------------------------------------------------

std::vector<PathContext> sample_paths(std::vector<PathContext> paths,
                                      const ExtractionLimits& limits) {
  limits.validate();
  if (paths.empty()) return paths;
  const size_t cap = static_cast<size_t>(limits.cap_for(paths[0].kind));
  if (paths.size() <= cap) return paths;

  Rng rng(limits.seed);
  std::vector<size_t> idx(paths.size());
  std::iota(idx.begin(), idx.end(), 0);
  for (size_t i = 0; i < cap; ++i) {
    size_t j = i + static_cast<size_t>(rng.below(idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());  // keep original relative order
  std::vector<PathContext> out;
  out.reserve(cap);
  for (size_t i : idx) out.push_back(std::move(paths[i]));
  return out;
}

std::string render_path_context(const PathContext& ctx) {
  std::vector<std::string> types = split_path_types(ctx.path_string);
  return token_or_type(ctx.start_token, types.front()) + "," + ctx.path_string + "," +
         token_or_type(ctx.end_token, types.back());
}

PathContext parse_path_context(std::string_view text, Rep kind) {
  size_t first = text.find(',');
  size_t last = text.rfind(',');
  if (first == std::string_view::npos || first == last)
    throw FormatError(0, "path context needs 'start,path,end': '" + std::string(text) + "'");
  PathContext ctx;
  ctx.kind = kind;
  ctx.start_token = std::string(text.substr(0, first));
  ctx.path_string = std::string(text.substr(first + 1, last - first - 1));
  ctx.end_token = std::string(text.substr(last + 1));
  if (ctx.path_string.find(kUpArrow) == std::string::npos &&
      ctx.path_string.find(kDownArrow) == std::string::npos)
    throw FormatError(0, "path string has no direction symbol: '" + ctx.path_string + "'");
  return ctx;
}

}  // namespace pathvec
