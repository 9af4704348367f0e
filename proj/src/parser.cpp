#include "pathvec/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <utility>

#include "pathvec/errors.hpp"

namespace pathvec {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class TokKind { Ident, Keyword, Number, CharLit, StringLit, Punct, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {
      "void", "int", "char", "float", "double", "long", "short", "unsigned",
      "signed", "bool", "const", "static", "struct", "if", "else", "while",
      "for", "return", "break", "continue", "true", "false", "sizeof",
      "goto", "switch", "case", "default", "do", "typedef", "union", "enum"};
  return kw;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      if (pos_ >= src_.size()) break;
      out.push_back(next_token());
    }
    out.push_back(Token{TokKind::End, "", line_, col_});
    return out;
  }

 private:
  char cur() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  char peek(size_t k = 1) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }

  void advance() {
    if (pos_ >= src_.size()) return;
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = cur();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#') {
        // Preprocessor directives are stripped like blank lines.
        while (pos_ < src_.size() && cur() != '\n') {
          if (cur() == '\\' && peek() == '\n') advance();  // line continuation
          advance();
        }
      } else if (c == '/' && peek() == '/') {
        while (pos_ < src_.size() && cur() != '\n') advance();
      } else if (c == '/' && peek() == '*') {
        advance();
        advance();
        while (pos_ < src_.size() && !(cur() == '*' && peek() == '/')) advance();
        if (pos_ >= src_.size()) throw SyntaxError(line_, col_, "unterminated comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token next_token() {
    Token t;
    t.line = line_;
    t.col = col_;
    char c = cur();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_') {
        s += cur();
        advance();
      }
      t.kind = keywords().count(s) ? TokKind::Keyword : TokKind::Ident;
      t.text = std::move(s);
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek())))) {
      return number();
    }
    if (c == '\'') return quoted('\'', TokKind::CharLit);
    if (c == '"') return quoted('"', TokKind::StringLit);
    return punct();
  }

  Token number() {
    Token t{TokKind::Number, "", line_, col_};
    std::string s;
    bool is_float = false;
    if (cur() == '0' && (peek() == 'x' || peek() == 'X')) {
      s += cur(); advance();
      s += cur(); advance();
      while (std::isxdigit(static_cast<unsigned char>(cur()))) {
        s += cur();
        advance();
      }
    } else {
      while (std::isdigit(static_cast<unsigned char>(cur()))) {
        s += cur();
        advance();
      }
      if (cur() == '.') {
        is_float = true;
        s += cur();
        advance();
        while (std::isdigit(static_cast<unsigned char>(cur()))) {
          s += cur();
          advance();
        }
      }
      if (cur() == 'e' || cur() == 'E') {
        is_float = true;
        s += cur();
        advance();
        if (cur() == '+' || cur() == '-') {
          s += cur();
          advance();
        }
        while (std::isdigit(static_cast<unsigned char>(cur()))) {
          s += cur();
          advance();
        }
      }
    }
    while (cur() == 'u' || cur() == 'U' || cur() == 'l' || cur() == 'L' ||
           cur() == 'f' || cur() == 'F') {
      if (cur() == 'f' || cur() == 'F') is_float = true;
      s += cur();
      advance();
    }
    t.text = std::move(s);
    if (is_float) t.text += "\x01";  // tag stripped below
    return t;
  }

  Token quoted(char delim, TokKind kind) {
    Token t{kind, "", line_, col_};
    std::string s;
    s += cur();
    advance();
    while (pos_ < src_.size() && cur() != delim) {
      if (cur() == '\\') {
        s += cur();
        advance();
        if (pos_ >= src_.size()) break;
      }
      if (cur() == '\n') throw SyntaxError(line_, col_, "unterminated literal");
      s += cur();
      advance();
    }
    if (pos_ >= src_.size()) throw SyntaxError(t.line, t.col, "unterminated literal");
    s += cur();
    advance();
    t.text = std::move(s);
    return t;
  }

  Token punct() {
    static const std::array<const char*, 34> multi = {
        "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==",
        "!=", "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
        "+", "-", "*", "/", "%", "<", ">", "=", "!", "&", "|", "^"};
    Token t{TokKind::Punct, "", line_, col_};
    std::string_view rest = src_.substr(pos_);
    for (const char* m : multi) {
      std::string_view mv(m);
      if (rest.substr(0, mv.size()) == mv) {
        t.text = std::string(mv);
        for (size_t i = 0; i < mv.size(); ++i) advance();
        return t;
      }
    }
    char c = cur();
    static const std::string singles = "(){}[];,?:~.";
    if (singles.find(c) == std::string::npos)
      throw SyntaxError(line_, col_, std::string("unexpected character '") + c + "'");
    t.text = std::string(1, c);
    advance();
    return t;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

const std::set<std::string>& type_starters() {
  static const std::set<std::string> ts = {"void", "int",      "char",  "float",
                                           "double", "long",   "short", "unsigned",
                                           "signed", "bool",   "const", "static",
                                           "struct"};
  return ts;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<FunctionAst> translation_unit() {
    std::vector<FunctionAst> fns;
    while (!at_end()) {
      if (accept_punct(";")) continue;
      if (cur().kind == TokKind::Keyword &&
          (cur().text == "typedef" || cur().text == "union" || cur().text == "enum"))
        throw UnsupportedConstruct(cur().line, cur().text);
      if (!is_type_start())
        throw SyntaxError(cur().line, cur().col, "expected a declaration");
      std::string type = parse_type();
      if (check_punct("{"))  // struct body definition
        throw UnsupportedConstruct(cur().line, "struct definition");
      int stars = 0;
      while (accept_punct("*")) ++stars;
      Token name = expect(TokKind::Ident, "name");
      if (check_punct("(")) {
        parse_function_or_prototype(std::move(type), stars, name, fns);
      } else {
        skip_global_declaration();
      }
    }
    return fns;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& ahead(size_t k) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  bool at_end() const { return cur().kind == TokKind::End; }
  void advance() {
    if (!at_end()) ++i_;
  }

  bool check_punct(std::string_view p) const {
    return cur().kind == TokKind::Punct && cur().text == p;
  }
  bool accept_punct(std::string_view p) {
    if (!check_punct(p)) return false;
    advance();
    return true;
  }
  void expect_punct(std::string_view p) {
    if (!accept_punct(p))
      throw SyntaxError(cur().line, cur().col,
                        "expected '" + std::string(p) + "', got '" + cur().text + "'");
  }
  bool check_kw(std::string_view k) const {
    return cur().kind == TokKind::Keyword && cur().text == k;
  }
  bool accept_kw(std::string_view k) {
    if (!check_kw(k)) return false;
    advance();
    return true;
  }
  Token expect(TokKind kind, const char* what) {
    if (cur().kind != kind)
      throw SyntaxError(cur().line, cur().col,
                        std::string("expected ") + what + ", got '" + cur().text + "'");
    Token t = cur();
    advance();
    return t;
  }

  bool is_type_start() const {
    return cur().kind == TokKind::Keyword && type_starters().count(cur().text);
  }

  std::string parse_type() {
    std::string out;
    bool base_seen = false;
    while (is_type_start()) {
      std::string word = cur().text;
      advance();
      if (word == "const" || word == "static") continue;  // dropped from the type text
      if (word == "struct") {
        Token tag = expect(TokKind::Ident, "struct tag");
        word += " " + tag.text;
      }
      if (!out.empty()) out += " ";
      out += word;
      base_seen = true;
    }
    if (!base_seen)
      throw SyntaxError(cur().line, cur().col, "expected a type");
    return out;
  }

  void parse_function_or_prototype(std::string type, int stars, const Token& name,
                                   std::vector<FunctionAst>& fns) {
    expect_punct("(");
    std::vector<Param> params;
    if (!check_punct(")")) {
      if (check_kw("void") && ahead(1).kind == TokKind::Punct && ahead(1).text == ")") {
        advance();
      } else {
        do {
          Param p;
          p.type = parse_type();
          int pstars = 0;
          while (accept_punct("*")) ++pstars;
          for (int s = 0; s < pstars; ++s) p.type += " *";
          if (cur().kind == TokKind::Ident) {
            p.name = cur().text;
            advance();
          }
          while (accept_punct("[")) {
            if (!check_punct("]")) conditional_expr();  // size discarded
            expect_punct("]");
            p.type += "[]";
          }
          params.push_back(std::move(p));
        } while (accept_punct(","));
      }
    }
    expect_punct(")");
    if (accept_punct(";")) return;  // prototype
    FunctionAst fn;
    fn.name = name.text;
    fn.name_token = name.text;
    fn.return_type = type + std::string(stars, '*');
    fn.params = std::move(params);
    fn.line = name.line;
    fn.body = compound();
    fns.push_back(std::move(fn));
  }

  void skip_global_declaration() {
    // Declarator list for a global; parsed for syntax, then discarded.
    while (true) {
      while (accept_punct("[")) {
        if (!check_punct("]")) conditional_expr();
        expect_punct("]");
      }
      if (accept_punct("=")) initializer();
      if (accept_punct(",")) {
        while (accept_punct("*")) {}
        expect(TokKind::Ident, "declarator");
        continue;
      }
      expect_punct(";");
      break;
    }
  }

  StmtPtr compound() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::Compound;
    s->line = cur().line;
    expect_punct("{");
    while (!check_punct("}")) {
      if (at_end()) throw SyntaxError(cur().line, cur().col, "unterminated block");
      s->body.push_back(statement());
    }
    expect_punct("}");
    return s;
  }

  StmtPtr statement() {
    if (check_punct("{")) return compound();
    if (cur().kind == TokKind::Keyword) {
      const std::string& k = cur().text;
      if (k == "goto" || k == "switch" || k == "do" || k == "case" ||
          k == "default" || k == "typedef")
        throw UnsupportedConstruct(cur().line, k);
      if (k == "if") return if_statement();
      if (k == "while") return while_statement();
      if (k == "for") return for_statement();
      if (k == "return") return return_statement();
      if (k == "break" || k == "continue") {
        auto s = std::make_unique<Stmt>();
        s->kind = k == "break" ? Stmt::Kind::Break : Stmt::Kind::Continue;
        s->line = cur().line;
        advance();
        expect_punct(";");
        return s;
      }
    }
    if (accept_punct(";")) {
      auto s = std::make_unique<Stmt>();
      s->kind = Stmt::Kind::Empty;
      return s;
    }
    if (is_type_start()) return declaration();
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::Expression;
    s->line = cur().line;
    s->expr = expression();
    expect_punct(";");
    return s;
  }

  StmtPtr if_statement() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::If;
    s->line = cur().line;
    advance();
    expect_punct("(");
    s->cond = expression();
    expect_punct(")");
    s->then_branch = statement();
    if (accept_kw("else")) s->else_branch = statement();
    return s;
  }

  StmtPtr while_statement() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::While;
    s->line = cur().line;
    advance();
    expect_punct("(");
    s->cond = expression();
    expect_punct(")");
    s->loop_body = statement();
    return s;
  }

  StmtPtr for_statement() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::For;
    s->line = cur().line;
    advance();
    expect_punct("(");
    if (accept_punct(";")) {
      auto e = std::make_unique<Stmt>();
      e->kind = Stmt::Kind::Empty;
      s->for_init = std::move(e);
    } else if (is_type_start()) {
      s->for_init = declaration();
    } else {
      auto init = std::make_unique<Stmt>();
      init->kind = Stmt::Kind::Expression;
      init->line = cur().line;
      init->expr = expression();
      expect_punct(";");
      s->for_init = std::move(init);
    }
    if (!check_punct(";")) s->cond = expression();
    expect_punct(";");
    if (!check_punct(")")) s->for_update = expression();
    expect_punct(")");
    s->loop_body = statement();
    return s;
  }

  StmtPtr return_statement() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::Return;
    s->line = cur().line;
    advance();
    if (!check_punct(";")) s->expr = expression();
    expect_punct(";");
    return s;
  }

  StmtPtr declaration() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::Declaration;
    s->line = cur().line;
    s->decl_type = parse_type();
    do {
      Declarator d;
      while (accept_punct("*")) ++d.pointers;
      d.name = expect(TokKind::Ident, "declarator").text;
      while (accept_punct("[")) {
        if (check_punct("]"))
          d.array_dims.push_back(nullptr);
        else
          d.array_dims.push_back(conditional_expr());
        expect_punct("]");
      }
      if (accept_punct("=")) d.init = initializer();
      s->declarators.push_back(std::move(d));
    } while (accept_punct(","));
    expect_punct(";");
    return s;
  }

  ExprPtr initializer() {
    if (!check_punct("{")) return assignment_expr();
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::InitList;
    advance();
    if (!check_punct("}")) {
      do {
        if (check_punct("}")) break;  // trailing comma
        e->children.push_back(initializer());
      } while (accept_punct(","));
    }
    expect_punct("}");
    return e;
  }

  ExprPtr expression() { return assignment_expr(); }

  ExprPtr assignment_expr() {
    ExprPtr lhs = conditional_expr();
    static const std::set<std::string> ops = {"=",  "+=", "-=", "*=", "/=",
                                              "%=", "&=", "|=", "^=", "<<=", ">>="};
    if (cur().kind == TokKind::Punct && ops.count(cur().text)) {
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::Assignment;
      e->text = cur().text;
      advance();
      e->children.push_back(std::move(lhs));
      e->children.push_back(assignment_expr());
      return e;
    }
    return lhs;
  }

  ExprPtr conditional_expr() {
    ExprPtr c = binary_expr(0);
    if (!accept_punct("?")) return c;
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::Conditional;
    e->children.push_back(std::move(c));
    e->children.push_back(expression());
    expect_punct(":");
    e->children.push_back(conditional_expr());
    return e;
  }

  // Precedence-climbing over the binary operator table, lowest level first.
  ExprPtr binary_expr(int level) {
    static const std::vector<std::vector<std::string>> levels = {
        {"||"}, {"&&"}, {"|"}, {"^"}, {"&"},         {"==", "!="},
        {"<", ">", "<=", ">="}, {"<<", ">>"}, {"+", "-"}, {"*", "/", "%"}};
    if (level == static_cast<int>(levels.size())) return unary_expr();
    ExprPtr lhs = binary_expr(level + 1);
    while (cur().kind == TokKind::Punct) {
      const auto& ops = levels[level];
      if (std::find(ops.begin(), ops.end(), cur().text) == ops.end()) break;
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::Binary;
      e->text = cur().text;
      advance();
      e->children.push_back(std::move(lhs));
      e->children.push_back(binary_expr(level + 1));
      lhs = std::move(e);
    }
    return lhs;
  }

  bool cast_ahead() const {
    // '(' followed by a type starter and a ')' or '*' run then ')'.
    if (!check_punct("(")) return false;
    size_t k = 1;
    if (!(ahead(k).kind == TokKind::Keyword && type_starters().count(ahead(k).text)))
      return false;
    while (ahead(k).kind == TokKind::Keyword && type_starters().count(ahead(k).text)) ++k;
    while (ahead(k).kind == TokKind::Punct && ahead(k).text == "*") ++k;
    return ahead(k).kind == TokKind::Punct && ahead(k).text == ")";
  }

  ExprPtr unary_expr() {
    if (cur().kind == TokKind::Punct) {
      const std::string& p = cur().text;
      if (p == "!" || p == "-" || p == "+" || p == "~" || p == "*" || p == "&" ||
          p == "++" || p == "--") {
        auto e = std::make_unique<Expr>();
        e->kind = Expr::Kind::Unary;
        e->text = p;
        advance();
        e->children.push_back(unary_expr());
        return e;
      }
    }
    if (cast_ahead()) {
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::Cast;
      advance();  // (
      e->text = parse_type();
      while (check_punct("*")) {
        e->text += "*";
        advance();
      }
      expect_punct(")");
      e->children.push_back(unary_expr());
      return e;
    }
    if (check_kw("sizeof")) {
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::Sizeof;
      advance();
      if (check_punct("(") && (ahead(1).kind == TokKind::Keyword &&
                               type_starters().count(ahead(1).text))) {
        advance();
        e->text = parse_type();
        while (check_punct("*")) {
          e->text += "*";
          advance();
        }
        expect_punct(")");
      } else {
        e->children.push_back(unary_expr());
      }
      return e;
    }
    return postfix_expr();
  }

  ExprPtr postfix_expr() {
    ExprPtr e = primary_expr();
    while (true) {
      if (accept_punct("(")) {
        auto call = std::make_unique<Expr>();
        call->kind = Expr::Kind::Call;
        call->children.push_back(std::move(e));
        if (!check_punct(")")) {
          do {
            call->children.push_back(assignment_expr());
          } while (accept_punct(","));
        }
        expect_punct(")");
        e = std::move(call);
      } else if (accept_punct("[")) {
        auto idx = std::make_unique<Expr>();
        idx->kind = Expr::Kind::Index;
        idx->children.push_back(std::move(e));
        idx->children.push_back(expression());
        expect_punct("]");
        e = std::move(idx);
      } else if (check_punct(".") || check_punct("->")) {
        auto mem = std::make_unique<Expr>();
        mem->kind = Expr::Kind::Member;
        mem->text = cur().text;
        advance();
        mem->children.push_back(std::move(e));
        auto field = std::make_unique<Expr>();
        field->kind = Expr::Kind::Identifier;
        field->text = expect(TokKind::Ident, "field name").text;
        mem->children.push_back(std::move(field));
        e = std::move(mem);
      } else if (check_punct("++") || check_punct("--")) {
        auto inc = std::make_unique<Expr>();
        inc->kind = Expr::Kind::Unary;
        inc->text = cur().text;
        inc->postfix = true;
        advance();
        inc->children.push_back(std::move(e));
        e = std::move(inc);
      } else {
        break;
      }
    }
    return e;
  }

  ExprPtr primary_expr() {
    if (accept_punct("(")) {
      ExprPtr e = expression();
      expect_punct(")");
      return e;
    }
    auto e = std::make_unique<Expr>();
    if (cur().kind == TokKind::Ident) {
      e->kind = Expr::Kind::Identifier;
      e->text = cur().text;
      advance();
      return e;
    }
    if (cur().kind == TokKind::Number) {
      std::string text = cur().text;
      bool is_float = false;
      if (!text.empty() && text.back() == '\x01') {
        is_float = true;
        text.pop_back();
      }
      e->kind = is_float ? Expr::Kind::FloatLiteral : Expr::Kind::IntLiteral;
      e->text = std::move(text);
      advance();
      return e;
    }
    if (cur().kind == TokKind::CharLit) {
      e->kind = Expr::Kind::CharLiteral;
      e->text = cur().text;
      advance();
      return e;
    }
    if (cur().kind == TokKind::StringLit) {
      e->kind = Expr::Kind::StringLiteral;
      e->text = cur().text;
      advance();
      return e;
    }
    if (check_kw("true") || check_kw("false")) {
      e->kind = Expr::Kind::BoolLiteral;
      e->text = cur().text;
      advance();
      return e;
    }
    throw SyntaxError(cur().line, cur().col,
                      "expected an expression, got '" + cur().text + "'");
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
};

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

// Binding strength used to decide where parentheses are required.
int binary_prec(const std::string& op) {
  static const std::map<std::string, int> prec = {
      {"||", 3},  {"&&", 4},  {"|", 5},   {"^", 6},   {"&", 7},
      {"==", 8},  {"!=", 8},  {"<", 9},   {">", 9},   {"<=", 9},
      {">=", 9},  {"<<", 10}, {">>", 10}, {"+", 11},  {"-", 11},
      {"*", 12},  {"/", 12},  {"%", 12}};
  return prec.at(op);
}

std::string render(const Expr& e, int parent_prec);

std::string render_children_list(const Expr& e, size_t from) {
  std::string out;
  for (size_t i = from; i < e.children.size(); ++i) {
    if (i > from) out += ", ";
    out += render(*e.children[i], 0);
  }
  return out;
}

std::string render(const Expr& e, int parent_prec) {
  using K = Expr::Kind;
  int prec = 15;
  std::string out;
  switch (e.kind) {
    case K::Identifier:
    case K::IntLiteral:
    case K::FloatLiteral:
    case K::CharLiteral:
    case K::StringLiteral:
    case K::BoolLiteral:
      return e.text;
    case K::Unary:
      prec = 13;
      out = e.postfix ? render(*e.children[0], 14) + e.text
                      : e.text + render(*e.children[0], 13);
      break;
    case K::Binary:
      prec = binary_prec(e.text);
      out = render(*e.children[0], prec) + " " + e.text + " " +
            render(*e.children[1], prec + 1);
      break;
    case K::Assignment:
      prec = 1;
      out = render(*e.children[0], 2) + " " + e.text + " " + render(*e.children[1], 1);
      break;
    case K::Conditional:
      prec = 2;
      out = render(*e.children[0], 3) + " ? " + render(*e.children[1], 0) + " : " +
            render(*e.children[2], 2);
      break;
    case K::Call:
      prec = 14;
      out = render(*e.children[0], 14) + "(" + render_children_list(e, 1) + ")";
      break;
    case K::Index:
      prec = 14;
      out = render(*e.children[0], 14) + "[" + render(*e.children[1], 0) + "]";
      break;
    case K::Member:
      prec = 14;
      out = render(*e.children[0], 14) + e.text + e.children[1]->text;
      break;
    case K::Cast:
      prec = 13;
      out = "(" + e.text + ")" + render(*e.children[0], 13);
      break;
    case K::Sizeof:
      prec = 13;
      out = e.children.empty() ? "sizeof(" + e.text + ")"
                               : "sizeof(" + render(*e.children[0], 0) + ")";
      return out;
    case K::InitList:
      return "{" + render_children_list(e, 0) + "}";
  }
  if (prec < parent_prec) return "(" + out + ")";
  return out;
}

std::string render_declarator(const Declarator& d) {
  std::string out(static_cast<size_t>(d.pointers), '*');
  out += d.name;
  for (const ExprPtr& dim : d.array_dims)
    out += dim ? "[" + render(*dim, 0) + "]" : "[]";
  if (d.init) out += " = " + render(*d.init, 0);
  return out;
}

}  // namespace

std::string render_expr(const Expr& e) { return render(e, 0); }

std::string statement_token(const Stmt& s) {
  switch (s.kind) {
    case Stmt::Kind::Declaration: {
      std::string out = s.decl_type;
      for (size_t i = 0; i < s.declarators.size(); ++i)
        out += (i ? ", " : " ") + render_declarator(s.declarators[i]);
      return out;
    }
    case Stmt::Kind::Expression:
      return render_expr(*s.expr);
    case Stmt::Kind::Return:
      return s.expr ? "return " + render_expr(*s.expr) : "return";
    case Stmt::Kind::Break:
      return "break";
    case Stmt::Kind::Continue:
      return "continue";
    case Stmt::Kind::If:
      return "if (" + render_expr(*s.cond) + ")";
    case Stmt::Kind::While:
      return "while (" + render_expr(*s.cond) + ")";
    case Stmt::Kind::For:
      return s.cond ? "for (" + render_expr(*s.cond) + ")" : "for (;;)";
    case Stmt::Kind::Compound:
      return "{}";
    case Stmt::Kind::Empty:
      return "";
  }
  return "";
}

std::vector<FunctionAst> parse_c(std::string_view source) {
  Lexer lexer(source);
  Parser parser(lexer.run());
  return parser.translation_unit();
}

// ---------------------------------------------------------------------------
// Masking
// ---------------------------------------------------------------------------

namespace {

int mask_expr(Expr& e, const std::string& name, const std::string& mask) {
  int n = 0;
  if (e.kind == Expr::Kind::Identifier && e.text == name) {
    e.text = mask;
    ++n;
  }
  for (ExprPtr& c : e.children)
    if (c) n += mask_expr(*c, name, mask);
  return n;
}

int mask_stmt(Stmt& s, const std::string& name, const std::string& mask) {
  int n = 0;
  for (StmtPtr& c : s.body)
    if (c) n += mask_stmt(*c, name, mask);
  for (Stmt* c : {s.then_branch.get(), s.else_branch.get(), s.loop_body.get(),
                  s.for_init.get()})
    if (c) n += mask_stmt(*c, name, mask);
  for (Expr* e : {s.cond.get(), s.for_update.get(), s.expr.get()})
    if (e) n += mask_expr(*e, name, mask);
  for (Declarator& d : s.declarators) {
    for (ExprPtr& dim : d.array_dims)
      if (dim) n += mask_expr(*dim, name, mask);
    if (d.init) n += mask_expr(*d.init, name, mask);
  }
  return n;
}

}  // namespace

int mask_method_name(FunctionAst& fn, const std::string& name,
                     const std::string& mask_token) {
  int n = 0;
  if (fn.name_token == name) {
    fn.name_token = mask_token;
    ++n;
  }
  if (fn.body) n += mask_stmt(*fn.body, name, mask_token);
  return n;
}

// ---------------------------------------------------------------------------
// Lowering into graph nodes
// ---------------------------------------------------------------------------

namespace {

const char* unary_type(const Expr& e) {
  if (e.text == "!") return "NotExpr";
  if (e.text == "-") return "NegExpr";
  if (e.text == "+") return "PlusExpr";
  if (e.text == "~") return "BitNotExpr";
  if (e.text == "*") return "DerefExpr";
  if (e.text == "&") return "AddrOfExpr";
  if (e.text == "++") return "IncrementExpr";
  if (e.text == "--") return "DecrementExpr";
  return "UnaryExpr";
}

const char* binary_type(const Expr& e) {
  static const std::map<std::string, const char*> types = {
      {"+", "AddExpr"},       {"-", "SubExpr"},        {"*", "MulExpr"},
      {"/", "DivExpr"},       {"%", "ModExpr"},        {"<", "LtExpr"},
      {">", "GtExpr"},        {"<=", "LeExpr"},        {">=", "GeExpr"},
      {"==", "EqExpr"},       {"!=", "NeExpr"},        {"&&", "LogicalAndExpr"},
      {"||", "LogicalOrExpr"}, {"&", "BitAndExpr"},    {"|", "BitOrExpr"},
      {"^", "BitXorExpr"},    {"<<", "ShiftLeftExpr"}, {">>", "ShiftRightExpr"}};
  auto it = types.find(e.text);
  return it == types.end() ? "BinaryExpr" : it->second;
}

class AstLowering {
 public:
  explicit AstLowering(const FunctionAst& fn) : fn_(fn) {}

  CodeGraph run() {
    g_.function_name = fn_.name;
    int root = g_.add_node("FunctionDef", "");
    int name = terminal("Identifier", fn_.name_token);
    g_.add_edge(root, name, EdgeLabel::Ast);
    int plist = g_.add_node("ParameterList", "");
    g_.add_edge(root, plist, EdgeLabel::Ast);
    for (const Param& p : fn_.params) {
      // An unnamed parameter has no identifier child, making the Parameter
      // node itself a leaf; it carries the type text as its token.
      int pn = p.name.empty() ? terminal("Parameter", p.type)
                              : g_.add_node("Parameter", p.type);
      g_.add_edge(plist, pn, EdgeLabel::Ast);
      if (!p.name.empty()) {
        int pid = terminal("Identifier", p.name);
        g_.add_edge(pn, pid, EdgeLabel::Ast);
      }
    }
    int body = stmt(*fn_.body);
    g_.add_edge(root, body, EdgeLabel::Ast);
    return std::move(g_);
  }

 private:
  int terminal(std::string type, std::string token) {
    int id = g_.add_node(std::move(type), std::move(token));
    g_.nodes[id].leaf_index = next_leaf_++;
    return id;
  }

  void attach(int parent, int child) {
    if (child >= 0) g_.add_edge(parent, child, EdgeLabel::Ast);
  }

  int expr(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::Identifier: return terminal("Identifier", e.text);
      case K::IntLiteral: return terminal("IntLiteral", e.text);
      case K::FloatLiteral: return terminal("FloatLiteral", e.text);
      case K::CharLiteral: return terminal("CharLiteral", e.text);
      case K::StringLiteral: return terminal("StringLiteral", e.text);
      case K::BoolLiteral: return terminal("BoolLiteral", e.text);
      case K::Unary: {
        int id = g_.add_node(unary_type(e), e.text);
        attach(id, expr(*e.children[0]));
        return id;
      }
      case K::Binary: {
        int id = g_.add_node(binary_type(e), e.text);
        attach(id, expr(*e.children[0]));
        attach(id, expr(*e.children[1]));
        return id;
      }
      case K::Assignment: {
        int id = g_.add_node("AssignmentExpr", e.text);
        attach(id, expr(*e.children[0]));
        attach(id, expr(*e.children[1]));
        return id;
      }
      case K::Conditional: {
        int id = g_.add_node("ConditionalExpr", "");
        for (const ExprPtr& c : e.children) attach(id, expr(*c));
        return id;
      }
      case K::Call: {
        int id = g_.add_node("CallExpr", "");
        for (const ExprPtr& c : e.children) attach(id, expr(*c));
        return id;
      }
      case K::Index: {
        int id = g_.add_node("IndexExpr", "");
        attach(id, expr(*e.children[0]));
        attach(id, expr(*e.children[1]));
        return id;
      }
      case K::Member: {
        int id = g_.add_node("MemberExpr", e.text);
        attach(id, expr(*e.children[0]));
        attach(id, expr(*e.children[1]));
        return id;
      }
      case K::Cast: {
        int id = g_.add_node("CastExpr", e.text);
        attach(id, expr(*e.children[0]));
        return id;
      }
      case K::Sizeof: {
        // sizeof(type) has no subexpression; the node is a leaf holding the
        // type text, so it is a terminal like any other token-carrying leaf.
        if (e.children.empty()) return terminal("SizeofExpr", e.text);
        int id = g_.add_node("SizeofExpr", e.text);
        attach(id, expr(*e.children[0]));
        return id;
      }
      case K::InitList: {
        int id = g_.add_node("InitListExpr", "");
        for (const ExprPtr& c : e.children) attach(id, expr(*c));
        return id;
      }
    }
    return -1;
  }

  int declarator(const Declarator& d) {
    int base = terminal("Identifier", d.name);
    if (!d.array_dims.empty()) {
      int idx = g_.add_node("IndexExpr", "");
      attach(idx, base);
      for (const ExprPtr& dim : d.array_dims)
        if (dim) attach(idx, expr(*dim));
      base = idx;
    }
    if (d.init) {
      int asg = g_.add_node("AssignmentExpr", "=");
      attach(asg, base);
      attach(asg, expr(*d.init));
      base = asg;
    }
    return base;
  }

  // Returns the node id, or -1 for statements with no AST footprint.
  int stmt(const Stmt& s) {
    using K = Stmt::Kind;
    switch (s.kind) {
      case K::Compound: {
        int id = g_.add_node("CompoundStatement", "");
        for (const StmtPtr& c : s.body) attach(id, stmt(*c));
        return id;
      }
      case K::If: {
        int id = g_.add_node("IfStatement", "");
        attach(id, expr(*s.cond));
        attach(id, stmt(*s.then_branch));
        if (s.else_branch) attach(id, stmt(*s.else_branch));
        return id;
      }
      case K::While: {
        int id = g_.add_node("WhileStatement", "");
        attach(id, expr(*s.cond));
        attach(id, stmt(*s.loop_body));
        return id;
      }
      case K::For: {
        int id = g_.add_node("ForStatement", "");
        if (s.for_init && s.for_init->kind != K::Empty) attach(id, stmt(*s.for_init));
        if (s.cond) attach(id, expr(*s.cond));
        if (s.for_update) attach(id, expr(*s.for_update));
        attach(id, stmt(*s.loop_body));
        return id;
      }
      case K::Return: {
        int id = g_.add_node("ReturnStatement", "");
        if (s.expr) attach(id, expr(*s.expr));
        return id;
      }
      case K::Break: return g_.add_node("BreakStatement", "");
      case K::Continue: return g_.add_node("ContinueStatement", "");
      case K::Declaration: {
        int id = g_.add_node("Declaration", s.decl_type);
        for (const Declarator& d : s.declarators) attach(id, declarator(d));
        return id;
      }
      case K::Expression: return expr(*s.expr);
      case K::Empty: return -1;
    }
    return -1;
  }

  const FunctionAst& fn_;
  CodeGraph g_;
  int next_leaf_ = 0;
};

}  // namespace

CodeGraph build_ast_graph(const FunctionAst& fn) { return AstLowering(fn).run(); }

}  // namespace pathvec
