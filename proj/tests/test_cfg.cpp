#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "oracles.hpp"
#include "pathvec/cfg.hpp"
#include "pathvec/errors.hpp"

using namespace pathvec;
using namespace pathvec::testing;

namespace {

// The CFG node whose token matches, for pinning edges in fixtures.
int by_token(const CodeGraph& g, std::string_view token) {
  for (const Node& n : g.nodes)
    if (n.token == token) return n.id;
  REQUIRE(false);
  return -1;
}

std::string guard_of(const CodeGraph& g, int src, int dst) {
  for (const Edge& e : g.edges)
    if (e.label == EdgeLabel::Cfg && e.src == src && e.dst == dst) return e.guard;
  REQUIRE(false);
  return "";
}

}  // namespace

TEST_CASE("straight-line flow") {
  auto [g, info] = graph_with_cfg("void g() { int x; x = 1 + 2; }");
  REQUIRE(g.start_id >= 0);
  REQUIRE(g.end_id >= 0);
  CHECK(g.nodes[g.start_id].type == "START");
  CHECK(g.nodes[g.start_id].token == "START");
  CHECK(g.nodes[g.end_id].type == "END");
  CHECK(g.nodes[g.end_id].token == "END");

  int decl = by_token(g, "int x");
  int asg = by_token(g, "x = 1 + 2");
  CHECK(g.nodes[decl].type == "Declaration");
  CHECK(g.nodes[asg].type == "Assignment");
  CHECK(count_edges(g, EdgeLabel::Cfg) == 3);
  CHECK(has_edge(g, g.start_id, decl, EdgeLabel::Cfg));
  CHECK(has_edge(g, decl, asg, EdgeLabel::Cfg));
  CHECK(has_edge(g, asg, g.end_id, EdgeLabel::Cfg));
  CHECK(info.warnings.empty());
}

TEST_CASE("loop with a branch inside") {
  auto [g, info] = graph_with_cfg(
      "void random_function() { while (!flag) if (isValid(x)) flag = true; }");
  int w = by_token(g, "while (!flag)");
  int i = by_token(g, "if (isValid(x))");
  int a = by_token(g, "flag = true");
  CHECK(g.nodes[w].type == "WhileCondition");
  CHECK(g.nodes[i].type == "IfCondition");
  CHECK(g.nodes[a].type == "Assignment");

  CHECK(count_edges(g, EdgeLabel::Cfg) == 6);
  CHECK(guard_of(g, g.start_id, w) == "");
  CHECK(guard_of(g, w, i) == "true");
  CHECK(guard_of(g, i, a) == "true");
  CHECK(guard_of(g, i, w) == "false");
  CHECK(guard_of(g, a, w) == "");
  CHECK(guard_of(g, w, g.end_id) == "false");
}

TEST_CASE("if/else diamond joins at the next statement") {
  auto [g, info] = graph_with_cfg(
      "void f(int a) { if (a > 0) { a = 1; } else { a = 2; } sink(a); }");
  int cond = by_token(g, "if (a > 0)");
  int t = by_token(g, "a = 1");
  int e = by_token(g, "a = 2");
  int join = by_token(g, "sink(a)");
  CHECK(g.nodes[join].type == "ExpressionStatement");

  CHECK(count_edges(g, EdgeLabel::Cfg) == 6);
  CHECK(guard_of(g, cond, t) == "true");
  CHECK(guard_of(g, cond, e) == "false");
  CHECK(has_edge(g, t, join, EdgeLabel::Cfg));
  CHECK(has_edge(g, e, join, EdgeLabel::Cfg));
  CHECK(has_edge(g, join, g.end_id, EdgeLabel::Cfg));
}

TEST_CASE("for loop gets a separate update node") {
  auto [g, info] = graph_with_cfg(
      "void f(int n) { for (int i = 0; i < n; i++) { sink(i); } done(); }");
  int init = by_token(g, "int i = 0");
  int cond = by_token(g, "for (i < n)");
  int body = by_token(g, "sink(i)");
  int update = by_token(g, "i++");
  int after = by_token(g, "done()");
  CHECK(g.nodes[cond].type == "ForCondition");
  CHECK(g.nodes[update].type == "ExpressionStatement");

  CHECK(has_edge(g, init, cond, EdgeLabel::Cfg));
  CHECK(guard_of(g, cond, body) == "true");
  CHECK(has_edge(g, body, update, EdgeLabel::Cfg));
  CHECK(has_edge(g, update, cond, EdgeLabel::Cfg));
  CHECK(guard_of(g, cond, after) == "false");
}

TEST_CASE("break exits the loop, continue reaches the update") {
  auto [g, info] = graph_with_cfg(
      "void f(int n) {\n"
      "  for (int i = 0; i < n; i = i + 1) {\n"
      "    if (i == 3) break;\n"
      "    if (i == 5) continue;\n"
      "    sink(i);\n"
      "  }\n"
      "  done();\n"
      "}\n");
  int brk = by_token(g, "break");
  int cont = by_token(g, "continue");
  int update = by_token(g, "i = i + 1");
  int after = by_token(g, "done()");
  CHECK(g.nodes[brk].type == "BreakStatement");
  CHECK(g.nodes[cont].type == "ContinueStatement");
  CHECK(has_edge(g, brk, after, EdgeLabel::Cfg));
  CHECK(has_edge(g, cont, update, EdgeLabel::Cfg));
  CHECK(!has_edge(g, brk, update, EdgeLabel::Cfg));
}

TEST_CASE("continue in a while loop targets the condition") {
  auto [g, info] = graph_with_cfg(
      "void f(int n) { while (n) { if (n == 2) continue; n = n - 1; } }");
  int w = by_token(g, "while (n)");
  int cont = by_token(g, "continue");
  CHECK(has_edge(g, cont, w, EdgeLabel::Cfg));
}

TEST_CASE("return wires straight to END") {
  auto [g, info] = graph_with_cfg(
      "int f(int a) { if (a) { return 1; } return 0; }");
  int r1 = by_token(g, "return 1");
  int r0 = by_token(g, "return 0");
  CHECK(g.nodes[r1].type == "ReturnStatement");
  CHECK(has_edge(g, r1, g.end_id, EdgeLabel::Cfg));
  CHECK(has_edge(g, r0, g.end_id, EdgeLabel::Cfg));
  CHECK(!has_edge(g, r1, r0, EdgeLabel::Cfg));
}

TEST_CASE("statements after a return are pruned with a warning") {
  auto [g, info] = graph_with_cfg(
      "int f() { return 1; sink(2); }");
  for (const Node& n : g.nodes) CHECK(n.token != "sink(2)");
  REQUIRE(info.warnings.size() == 1);
  CHECK(info.warnings[0] == "unreachable statement pruned: sink(2)");
}

TEST_CASE("def and use sets per statement") {
  auto [g, info] = graph_with_cfg(
      "void f(int n) {\n"
      "  int x = n + 1;\n"
      "  x += n;\n"
      "  x++;\n"
      "  a[i] = x;\n"
      "  p->field = 2;\n"
      "  sink(x, n);\n"
      "}\n");
  auto du = [&](std::string_view token) { return info.def_use.at(by_token(g, token)); };

  CHECK(du("int x = n + 1").defs == std::vector<std::string>{"x"});
  CHECK(du("int x = n + 1").uses == std::vector<std::string>{"n"});
  CHECK(du("x += n").defs == std::vector<std::string>{"x"});
  CHECK(du("x += n").uses == std::vector<std::string>{"n", "x"});
  CHECK(du("x++").defs == std::vector<std::string>{"x"});
  CHECK(du("x++").uses == std::vector<std::string>{"x"});
  CHECK(du("a[i] = x").defs == std::vector<std::string>{"a"});
  CHECK(du("a[i] = x").uses == std::vector<std::string>{"i", "x"});
  CHECK(du("p->field = 2").defs == std::vector<std::string>{"p"});
  CHECK(du("p->field = 2").uses.empty());
  CHECK(du("sink(x, n)").defs.empty());
  CHECK(du("sink(x, n)").uses == std::vector<std::string>{"n", "sink", "x"});
}

TEST_CASE("branch conditions only read") {
  auto [g, info] = graph_with_cfg("void f(int a, int b) { while (a < b) { a++; } }");
  const DefUse& du = info.def_use.at(by_token(g, "while (a < b)"));
  CHECK(du.defs.empty());
  CHECK(du.uses == std::vector<std::string>{"a", "b"});
}

TEST_CASE("empty function body still has START and END") {
  auto [g, info] = graph_with_cfg("void f() { }");
  CHECK(count_edges(g, EdgeLabel::Cfg) == 1);
  CHECK(has_edge(g, g.start_id, g.end_id, EdgeLabel::Cfg));
}

TEST_CASE("every reachable node sits on a START-to-END path") {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    std::string src = random_mini_c_program(seed);
    CAPTURE(src);
    auto [g, info] = graph_with_cfg(src);

    auto succ = g.out_adjacency(EdgeLabel::Cfg);
    auto pred = g.in_adjacency(EdgeLabel::Cfg);
    std::vector<char> from_start(g.nodes.size(), 0), to_end(g.nodes.size(), 0);
    std::vector<int> stack = {g.start_id};
    from_start[g.start_id] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : succ[u])
        if (!from_start[v]) {
          from_start[v] = 1;
          stack.push_back(v);
        }
    }
    stack = {g.end_id};
    to_end[g.end_id] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : pred[u])
        if (!to_end[v]) {
          to_end[v] = 1;
          stack.push_back(v);
        }
    }
    for (const auto& [id, du] : info.def_use) {
      CHECK(from_start[id]);
      CHECK(to_end[id]);
    }
    CHECK(from_start[g.end_id]);
  }
}
