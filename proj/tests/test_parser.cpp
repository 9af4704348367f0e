#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "pathvec/errors.hpp"
#include "pathvec/parser.hpp"

using namespace pathvec;
using namespace pathvec::testing;

TEST_CASE("function signature and parameters") {
  FunctionAst fn = parse_one("int *scale(int n, float f, char *buf) { return buf; }");
  CHECK(fn.name == "scale");
  CHECK(fn.return_type == "int*");
  REQUIRE(fn.params.size() == 3);
  CHECK(fn.params[0].type == "int");
  CHECK(fn.params[0].name == "n");
  CHECK(fn.params[1].type == "float");
  CHECK(fn.params[2].type == "char *");
  CHECK(fn.params[2].name == "buf");
}

TEST_CASE("globals and prototypes are skipped") {
  auto fns = parse_c(
      "int counter = 0;\n"
      "static int table[16];\n"
      "int helper(int x);\n"
      "void noop(void) { }\n");
  REQUIRE(fns.size() == 1);
  CHECK(fns[0].name == "noop");
  CHECK(fns[0].params.empty());
}

TEST_CASE("comments and preprocessor lines vanish") {
  auto fns = parse_c(
      "#include <stdio.h>\n"
      "#define BIG \\\n  42\n"
      "// leading comment\n"
      "/* block\n   comment */\n"
      "int f() { return 1; /* tail */ }\n");
  REQUIRE(fns.size() == 1);
  CHECK(fns[0].name == "f");
}

TEST_CASE("operator precedence shapes the tree") {
  FunctionAst fn = parse_one("int f(int a, int b) { return a + b * 2; }");
  const Stmt& ret = *fn.body->body[0];
  REQUIRE(ret.kind == Stmt::Kind::Return);
  const Expr& add = *ret.expr;
  CHECK(add.kind == Expr::Kind::Binary);
  CHECK(add.text == "+");
  CHECK(add.children[1]->text == "*");
}

TEST_CASE("assignment is right associative") {
  FunctionAst fn = parse_one("void f(int a, int b, int c) { a = b = c; }");
  const Expr& outer = *fn.body->body[0]->expr;
  CHECK(outer.kind == Expr::Kind::Assignment);
  CHECK(outer.children[0]->text == "a");
  CHECK(outer.children[1]->kind == Expr::Kind::Assignment);
}

TEST_CASE("render_expr reproduces source-like text") {
  auto rendered = [](std::string_view src) {
    FunctionAst fn = parse_one(std::string("void f() { sink(") + std::string(src) +
                               "); }");
    const Expr& call = *fn.body->body[0]->expr;
    return render_expr(*call.children[1]);
  };
  CHECK(rendered("a + b * 2") == "a + b * 2");
  CHECK(rendered("(a + b) * 2") == "(a + b) * 2");
  CHECK(rendered("!flag") == "!flag");
  CHECK(rendered("-x + y") == "-x + y");
  CHECK(rendered("-(x + y)") == "-(x + y)");
  CHECK(rendered("a[i + 1]") == "a[i + 1]");
  CHECK(rendered("p->next") == "p->next");
  CHECK(rendered("s.len") == "s.len");
  CHECK(rendered("f(x, y)") == "f(x, y)");
  CHECK(rendered("a < b ? a : b") == "a < b ? a : b");
  CHECK(rendered("x++") == "x++");
  CHECK(rendered("++x") == "++x");
  CHECK(rendered("(float)n") == "(float)n");
  CHECK(rendered("sizeof(int)") == "sizeof(int)");
  CHECK(rendered("sizeof(x)") == "sizeof(x)");
  CHECK(rendered("a == b && c != d") == "a == b && c != d");
  CHECK(rendered("(a && b) || c") == "a && b || c");  // parens not required
  CHECK(rendered("a && (b || c)") == "a && (b || c)");
}

TEST_CASE("statement tokens") {
  FunctionAst fn = parse_one(
      "void f(int n) {\n"
      "  int x = 1 + 2;\n"
      "  int *p, buf[8];\n"
      "  while (x < n) x += 1;\n"
      "  for (x = 0; x < 4; x++) sink(x);\n"
      "  if (x) return;\n"
      "}\n");
  const auto& body = fn.body->body;
  CHECK(statement_token(*body[0]) == "int x = 1 + 2");
  CHECK(statement_token(*body[1]) == "int *p, buf[8]");
  CHECK(statement_token(*body[2]) == "while (x < n)");
  CHECK(statement_token(*body[3]) == "for (x < 4)");
  CHECK(statement_token(*body[4]) == "if (x)");
  CHECK(statement_token(*body[4]->then_branch) == "return");
}

TEST_CASE("unsupported constructs are reported with a line") {
  auto line_of = [](std::string_view src) {
    try {
      parse_c(src);
    } catch (const UnsupportedConstruct& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("void f() {\n  goto out;\n}\n") == 2);
  CHECK(line_of("void f(int x) {\n\n  switch (x) { }\n}\n") == 3);
  CHECK(line_of("void f() { do { } while (1); }") == 1);
  CHECK(line_of("typedef int word;\n") == 1);
  CHECK(line_of("struct point { int x; };\n") == 1);
  CHECK(line_of("enum color { RED };\n") == 1);
}

TEST_CASE("syntax errors carry position") {
  try {
    parse_c("void f() {\n  int = 3;\n}\n");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
    CHECK(e.column > 1);
  }
}

TEST_CASE("masking rewrites every occurrence of the name") {
  FunctionAst fn = parse_one(
      "int fib(int n) {\n"
      "  if (n < 2) return n;\n"
      "  return fib(n - 1) + fib(n - 2);\n"
      "}\n");
  int hits = mask_method_name(fn, "fib", "METHOD_NAME");
  CHECK(hits == 3);  // declaration plus two recursive calls
  CHECK(fn.name == "fib");
  CHECK(fn.name_token == "METHOD_NAME");

  CodeGraph g = build_ast_graph(fn);
  int masked = 0;
  for (const Node& n : g.nodes) {
    CHECK(n.token != "fib");
    if (n.token == "METHOD_NAME") ++masked;
  }
  CHECK(masked == 3);
}

TEST_CASE("ast graph terminals in reading order") {
  CodeGraph g = build_ast_graph(parse_one("void g() { int x; x = 1 + 2; }"));
  std::vector<std::string> tokens;
  for (int id : g.ast_terminals()) tokens.push_back(g.nodes[id].token);
  CHECK(tokens == std::vector<std::string>{"g", "x", "x", "1", "2"});

  // exactly the terminals carry leaf indices, numbered densely
  int terminals = 0;
  for (const Node& n : g.nodes)
    if (n.leaf_index) {
      CHECK(*n.leaf_index == terminals);
      ++terminals;
    }
  CHECK(terminals == 5);
}

TEST_CASE("ast graph shape for the running example") {
  CodeGraph g = build_ast_graph(parse_one(
      "void random_function() { while (!flag) if (isValid(x)) flag = true; }"));

  REQUIRE(g.nodes[0].type == "FunctionDef");
  int w = find_type(g, "WhileStatement");
  int i = find_type(g, "IfStatement");
  int n = find_type(g, "NotExpr");
  int a = find_type(g, "AssignmentExpr");
  int c = find_type(g, "CallExpr");
  REQUIRE(w >= 0);
  REQUIRE(i >= 0);
  CHECK(has_edge(g, w, n, EdgeLabel::Ast));
  CHECK(has_edge(g, w, i, EdgeLabel::Ast));
  CHECK(has_edge(g, i, c, EdgeLabel::Ast));
  CHECK(has_edge(g, i, a, EdgeLabel::Ast));

  std::vector<std::string> tokens;
  for (int id : g.ast_terminals()) tokens.push_back(g.nodes[id].token);
  CHECK(tokens ==
        std::vector<std::string>{"random_function", "flag", "isValid", "x", "flag", "true"});

  // every non-root node has exactly one syntax parent
  std::vector<int> parents(g.nodes.size(), 0);
  for (const Edge& e : g.edges)
    if (e.label == EdgeLabel::Ast) ++parents[e.dst];
  for (const Node& node : g.nodes)
    CHECK(parents[node.id] == (node.id == 0 ? 0 : 1));
}

TEST_CASE("declarators lower to index and assignment forms") {
  CodeGraph g = build_ast_graph(parse_one("void f() { int a[4], b = 7; }"));
  int decl = find_type(g, "Declaration");
  REQUIRE(decl >= 0);
  CHECK(g.nodes[decl].token == "int");
  CHECK(find_type(g, "IndexExpr") >= 0);
  int asg = find_type(g, "AssignmentExpr");
  REQUIRE(asg >= 0);
  CHECK(g.nodes[asg].token == "=");
}

TEST_CASE("random programs parse and lower cleanly") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    std::string src = random_mini_c_program(seed);
    CAPTURE(src);
    FunctionAst fn = parse_one(src);
    CodeGraph g = build_ast_graph(fn);
    CHECK(!g.ast_terminals().empty());
  }
}
