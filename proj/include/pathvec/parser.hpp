#pragma once

// Recursive-descent frontend for a C subset: function definitions,
// declarations, assignments, if/else, while/for, break/continue, return,
// calls, unary/binary/conditional expressions and literals. Preprocessor
// lines and comments are stripped by the lexer. goto, switch, do-while,
// typedef and struct definitions raise UnsupportedConstruct.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pathvec/graph.hpp"

namespace pathvec {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum class Kind {
    Identifier,
    IntLiteral,
    FloatLiteral,
    CharLiteral,
    StringLiteral,
    BoolLiteral,
    Unary,        // text = operator; postfix set for x++/x--
    Binary,       // text = operator
    Assignment,   // text = "=", "+=", ...
    Conditional,  // ?:
    Call,         // children[0] = callee
    Index,        // children = {base, subscript}
    Member,       // text = "." or "->", children = {base, field identifier}
    Cast,         // text = type name
    Sizeof,       // text = type name when no child expression
    InitList,
  };

  Kind kind;
  std::string text;
  bool postfix = false;
  std::vector<ExprPtr> children;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Declarator {
  std::string name;
  int pointers = 0;
  std::vector<ExprPtr> array_dims;  // entries may be null for int a[]
  ExprPtr init;                     // optional
};

struct Stmt {
  enum class Kind {
    Compound,
    If,
    While,
    For,
    Return,
    Break,
    Continue,
    Declaration,
    Expression,
    Empty,
  };

  Kind kind;
  int line = 0;

  std::vector<StmtPtr> body;  // Compound

  ExprPtr cond;               // If / While / For (For may have none)
  StmtPtr then_branch;        // If
  StmtPtr else_branch;        // If, optional
  StmtPtr loop_body;          // While / For
  StmtPtr for_init;           // For: Declaration, Expression or Empty
  ExprPtr for_update;         // For, optional

  std::string decl_type;      // Declaration base type text
  std::vector<Declarator> declarators;

  ExprPtr expr;               // Expression / Return (optional for Return)
};

struct Param {
  std::string type;  // rendered with pointer stars, e.g. "int *"
  std::string name;  // may be empty for unnamed parameters
};

struct FunctionAst {
  std::string name;        // declared name; stays intact under masking
  std::string name_token;  // token emitted into graphs; masking rewrites this
  std::string return_type;
  std::vector<Param> params;
  StmtPtr body;
  int line = 0;
};

// Parses every function definition in the source; global declarations are
// accepted and skipped. Throws SyntaxError / UnsupportedConstruct.
std::vector<FunctionAst> parse_c(std::string_view source);

// Replaces every identifier token equal to `name` (declaration site and any
// use, including recursive call sites) with `mask_token`. Returns the number
// of tokens rewritten.
int mask_method_name(FunctionAst& fn, const std::string& name,
                     const std::string& mask_token);

// Deterministic source-like rendering used for statement tokens.
std::string render_expr(const Expr& e);
std::string statement_token(const Stmt& s);

// Lowers the typed tree into graph nodes with AST edges and leaf indices.
CodeGraph build_ast_graph(const FunctionAst& fn);

}  // namespace pathvec
