#include "pathvec/cfg.hpp"

#include <optional>
#include <set>

#include "pathvec/errors.hpp"

namespace pathvec {

namespace {

// ---------------------------------------------------------------------------
// Def/use extraction
// ---------------------------------------------------------------------------

// Base identifier of an lvalue: a in a[i], s in s.f, p in *p.
std::optional<std::string> base_identifier(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Identifier:
      return e.text;
    case Expr::Kind::Index:
    case Expr::Kind::Member:
      return base_identifier(*e.children[0]);
    case Expr::Kind::Unary:
      if (e.text == "*") return base_identifier(*e.children[0]);
      return std::nullopt;
    case Expr::Kind::Cast:
      return base_identifier(*e.children[0]);
    default:
      return std::nullopt;
  }
}

void du_expr(const Expr& e, std::set<std::string>& defs, std::set<std::string>& uses);

// Identifiers inside an lvalue other than the written base (array subscripts
// and the like) still count as reads.
void du_lvalue_rest(const Expr& e, std::set<std::string>& defs,
                    std::set<std::string>& uses) {
  switch (e.kind) {
    case Expr::Kind::Identifier:
      return;
    case Expr::Kind::Index:
      du_lvalue_rest(*e.children[0], defs, uses);
      du_expr(*e.children[1], defs, uses);
      return;
    case Expr::Kind::Member:
      du_lvalue_rest(*e.children[0], defs, uses);
      return;
    case Expr::Kind::Unary:
    case Expr::Kind::Cast:
      if (!e.children.empty()) du_lvalue_rest(*e.children[0], defs, uses);
      return;
    default:
      du_expr(e, defs, uses);
      return;
  }
}

void du_expr(const Expr& e, std::set<std::string>& defs, std::set<std::string>& uses) {
  switch (e.kind) {
    case Expr::Kind::Identifier:
      uses.insert(e.text);
      return;
    case Expr::Kind::Assignment: {
      const Expr& lhs = *e.children[0];
      if (auto base = base_identifier(lhs)) {
        defs.insert(*base);
        if (e.text != "=") uses.insert(*base);  // compound assignment reads too
        du_lvalue_rest(lhs, defs, uses);
      } else {
        du_expr(lhs, defs, uses);
      }
      du_expr(*e.children[1], defs, uses);
      return;
    }
    case Expr::Kind::Unary:
      if (e.text == "++" || e.text == "--") {
        if (auto base = base_identifier(*e.children[0])) {
          defs.insert(*base);
          uses.insert(*base);
          du_lvalue_rest(*e.children[0], defs, uses);
          return;
        }
      }
      du_expr(*e.children[0], defs, uses);
      return;
    case Expr::Kind::Member:
      du_expr(*e.children[0], defs, uses);  // field name is not a variable
      return;
    case Expr::Kind::Sizeof:
      if (!e.children.empty()) du_expr(*e.children[0], defs, uses);
      return;
    default:
      for (const ExprPtr& c : e.children)
        if (c) du_expr(*c, defs, uses);
      return;
  }
}

DefUse du_of_expr(const Expr& e) {
  std::set<std::string> defs, uses;
  du_expr(e, defs, uses);
  return DefUse{{defs.begin(), defs.end()}, {uses.begin(), uses.end()}};
}

DefUse du_of_declaration(const Stmt& s) {
  std::set<std::string> defs, uses;
  for (const Declarator& d : s.declarators) {
    defs.insert(d.name);
    for (const ExprPtr& dim : d.array_dims)
      if (dim) du_expr(*dim, defs, uses);
    if (d.init) du_expr(*d.init, defs, uses);
  }
  return DefUse{{defs.begin(), defs.end()}, {uses.begin(), uses.end()}};
}

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

class CfgBuilder {
 public:
  explicit CfgBuilder(const FunctionAst& fn) : fn_(fn) {}

  CfgInfo run(CodeGraph& graph) {
    add_proto("START", "START", DefUse{});  // proto id 0
    add_proto("END", "END", DefUse{});      // proto id 1
    pending_ = {{kStart, ""}};
    lower(*fn_.body);
    wire(kEnd);
    return materialize(graph);
  }

 private:
  static constexpr int kStart = 0;
  static constexpr int kEnd = 1;

  struct ProtoNode {
    std::string type, token;
    DefUse du;
  };
  struct ProtoEdge {
    int src, dst;
    std::string guard;
  };
  struct Loop {
    int continue_target;
    std::vector<std::pair<int, std::string>> breaks;
  };

  int add_proto(std::string type, std::string token, DefUse du) {
    nodes_.push_back(ProtoNode{std::move(type), std::move(token), std::move(du)});
    return static_cast<int>(nodes_.size()) - 1;
  }

  void wire(int target) {
    for (auto& [src, guard] : pending_) edges_.push_back(ProtoEdge{src, target, guard});
    pending_.clear();
  }

  int statement_node(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Declaration:
        return add_proto("Declaration", statement_token(s), du_of_declaration(s));
      case Stmt::Kind::Expression:
        return add_proto(s.expr->kind == Expr::Kind::Assignment ? "Assignment"
                                                                : "ExpressionStatement",
                         render_expr(*s.expr), du_of_expr(*s.expr));
      case Stmt::Kind::Return:
        return add_proto("ReturnStatement", statement_token(s),
                         s.expr ? du_of_expr(*s.expr) : DefUse{});
      default:
        return -1;
    }
  }

  int update_node(const Expr& e) {
    return add_proto(e.kind == Expr::Kind::Assignment ? "Assignment"
                                                      : "ExpressionStatement",
                     render_expr(e), du_of_expr(e));
  }

  void lower(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Compound:
        for (const StmtPtr& c : s.body) lower(*c);
        return;
      case Stmt::Kind::Empty:
        return;
      case Stmt::Kind::Declaration:
      case Stmt::Kind::Expression: {
        int n = statement_node(s);
        wire(n);
        pending_ = {{n, ""}};
        return;
      }
      case Stmt::Kind::Return: {
        int n = statement_node(s);
        wire(n);
        edges_.push_back(ProtoEdge{n, kEnd, ""});
        return;
      }
      case Stmt::Kind::Break: {
        if (loops_.empty()) throw SyntaxError(s.line, 1, "break outside a loop");
        int n = add_proto("BreakStatement", "break", DefUse{});
        wire(n);
        loops_.back().breaks.push_back({n, ""});
        return;
      }
      case Stmt::Kind::Continue: {
        if (loops_.empty()) throw SyntaxError(s.line, 1, "continue outside a loop");
        int n = add_proto("ContinueStatement", "continue", DefUse{});
        wire(n);
        edges_.push_back(ProtoEdge{n, loops_.back().continue_target, ""});
        return;
      }
      case Stmt::Kind::If: {
        int cond = add_proto("IfCondition", "if (" + render_expr(*s.cond) + ")",
                             du_of_expr(*s.cond));
        wire(cond);
        pending_ = {{cond, "true"}};
        lower(*s.then_branch);
        auto then_exits = std::move(pending_);
        pending_.clear();
        if (s.else_branch) {
          pending_ = {{cond, "false"}};
          lower(*s.else_branch);
        } else {
          pending_ = {{cond, "false"}};
        }
        for (auto& p : then_exits) pending_.push_back(std::move(p));
        return;
      }
      case Stmt::Kind::While: {
        int cond = add_proto("WhileCondition", "while (" + render_expr(*s.cond) + ")",
                             du_of_expr(*s.cond));
        wire(cond);
        loops_.push_back(Loop{cond, {}});
        pending_ = {{cond, "true"}};
        lower(*s.loop_body);
        wire(cond);  // back edges
        Loop loop = std::move(loops_.back());
        loops_.pop_back();
        pending_ = {{cond, "false"}};
        for (auto& b : loop.breaks) pending_.push_back(std::move(b));
        return;
      }
      case Stmt::Kind::For: {
        if (s.for_init && s.for_init->kind != Stmt::Kind::Empty) lower(*s.for_init);
        int cond = s.cond ? add_proto("ForCondition", "for (" + render_expr(*s.cond) + ")",
                                      du_of_expr(*s.cond))
                          : add_proto("ForCondition", "for (;;)", DefUse{});
        wire(cond);
        int update = s.for_update ? update_node(*s.for_update) : -1;
        loops_.push_back(Loop{update >= 0 ? update : cond, {}});
        pending_ = {{cond, "true"}};
        lower(*s.loop_body);
        if (update >= 0) {
          wire(update);
          pending_ = {{update, ""}};
        }
        wire(cond);  // back edges
        Loop loop = std::move(loops_.back());
        loops_.pop_back();
        pending_.clear();
        if (s.cond) pending_ = {{cond, "false"}};  // for (;;) only exits via break
        for (auto& b : loop.breaks) pending_.push_back(std::move(b));
        return;
      }
    }
  }

  CfgInfo materialize(CodeGraph& graph) {
    // Drop statements no execution can reach.
    std::vector<char> reached(nodes_.size(), 0);
    std::vector<std::vector<int>> adj(nodes_.size());
    for (const ProtoEdge& e : edges_) adj[e.src].push_back(e.dst);
    std::vector<int> stack = {kStart};
    reached[kStart] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!reached[v]) {
          reached[v] = 1;
          stack.push_back(v);
        }
    }

    CfgInfo info;
    std::vector<int> remap(nodes_.size(), -1);
    for (size_t i = 0; i < nodes_.size(); ++i) {
      if (!reached[i]) {
        if (i != kEnd)
          info.warnings.push_back("unreachable statement pruned: " + nodes_[i].token);
        continue;
      }
      int gid = graph.add_node(nodes_[i].type, nodes_[i].token);
      remap[i] = gid;
      info.def_use[gid] = std::move(nodes_[i].du);
    }
    // END survives even in degenerate cases so start/end ids stay valid.
    if (remap[kEnd] < 0) {
      remap[kEnd] = graph.add_node(nodes_[kEnd].type, nodes_[kEnd].token);
      info.def_use[remap[kEnd]] = DefUse{};
    }
    graph.start_id = remap[kStart];
    graph.end_id = remap[kEnd];
    for (const ProtoEdge& e : edges_)
      if (remap[e.src] >= 0 && remap[e.dst] >= 0)
        graph.add_edge(remap[e.src], remap[e.dst], EdgeLabel::Cfg, e.guard);
    return info;
  }

  const FunctionAst& fn_;
  std::vector<ProtoNode> nodes_;
  std::vector<ProtoEdge> edges_;
  std::vector<std::pair<int, std::string>> pending_;
  std::vector<Loop> loops_;
};

}  // namespace

CfgInfo build_cfg(CodeGraph& graph, const FunctionAst& fn) {
  return CfgBuilder(fn).run(graph);
}

}  // namespace pathvec
