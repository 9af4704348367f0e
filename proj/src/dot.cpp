#include "pathvec/dot.hpp"

#include <cctype>
#include <map>
#include <set>

#include "pathvec/errors.hpp"

namespace pathvec {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '\\' || c == '"') out += '\\';
    out += c;
  }
  return out;
}

bool plain_id(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return !std::isdigit(static_cast<unsigned char>(s[0]));
}

}  // namespace

std::string export_dot(const CodeGraph& g) {
  std::string out = "digraph ";
  out += plain_id(g.function_name) ? g.function_name : '"' + escape(g.function_name) + '"';
  out += " {\n";
  for (const Node& n : g.nodes) {
    out += "  n" + std::to_string(n.id) + " [label=\"(" + escape(n.type) + "," +
           escape(n.token) + ")\"];\n";
  }
  for (const Edge& e : g.edges) {
    out += "  n" + std::to_string(e.src) + " -> n" + std::to_string(e.dst) +
           " [label=\"" + to_string(e.label) + "\"";
    if (!e.guard.empty()) out += ", guard=\"" + escape(e.guard) + "\"";
    out += "];\n";
  }
  out += "}\n";
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Import
// ---------------------------------------------------------------------------

struct DotToken {
  enum Kind { Id, Arrow, Punct, End } kind = End;
  std::string text;
  int line = 1;
};

class DotLexer {
 public:
  DotLexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

  std::vector<DotToken> run() {
    std::vector<DotToken> out;
    while (true) {
      skip();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    out.push_back(DotToken{DotToken::End, "", line_});
    return out;
  }

 private:
  void skip() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  DotToken next() {
    char c = src_[pos_];
    DotToken t;
    t.line = line_;
    if (c == '"') {
      t.kind = DotToken::Id;
      ++pos_;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) ++pos_;
        if (src_[pos_] == '\n') ++line_;
        t.text += src_[pos_++];
      }
      if (pos_ >= src_.size())
        throw DotParseError(file_, t.line, "unterminated quoted string");
      ++pos_;
      return t;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = DotToken::Id;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        t.text += src_[pos_++];
      }
      return t;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      t.kind = DotToken::Arrow;
      t.text = "->";
      pos_ += 2;
      return t;
    }
    static const std::string punct = "{}[]=;,";
    if (punct.find(c) == std::string::npos)
      throw DotParseError(file_, line_, std::string("unexpected character '") + c + "'");
    t.kind = DotToken::Punct;
    t.text = std::string(1, c);
    ++pos_;
    return t;
  }

  std::string_view src_;
  std::string file_;
  size_t pos_ = 0;
  int line_ = 1;
};

class DotReader {
 public:
  DotReader(std::string_view src, const std::string& file)
      : toks_(DotLexer(src, file).run()), file_(file) {}

  DotImport run() {
    DotImport out;
    while (cur().kind != DotToken::End) {
      CodeGraph g;
      bool keep = digraph(g, out.warnings);
      if (keep) out.graphs.push_back(std::move(g));
    }
    return out;
  }

 private:
  const DotToken& cur() const { return toks_[i_]; }
  void advance() {
    if (cur().kind != DotToken::End) ++i_;
  }
  bool accept_punct(char c) {
    if (cur().kind == DotToken::Punct && cur().text[0] == c) {
      advance();
      return true;
    }
    return false;
  }
  void expect_punct(char c) {
    if (!accept_punct(c))
      throw DotParseError(file_, cur().line,
                          std::string("expected '") + c + "', got '" + cur().text + "'");
  }

  std::map<std::string, std::string> attributes() {
    std::map<std::string, std::string> attrs;
    if (!accept_punct('[')) return attrs;
    while (!accept_punct(']')) {
      if (cur().kind != DotToken::Id)
        throw DotParseError(file_, cur().line, "expected attribute name");
      std::string key = cur().text;
      advance();
      expect_punct('=');
      if (cur().kind != DotToken::Id)
        throw DotParseError(file_, cur().line, "expected attribute value");
      attrs[key] = cur().text;
      advance();
      accept_punct(',');
    }
    return attrs;
  }

  bool digraph(CodeGraph& g, std::vector<std::string>& warnings) {
    if (!(cur().kind == DotToken::Id && cur().text == "digraph"))
      throw DotParseError(file_, cur().line, "expected 'digraph'");
    advance();
    if (cur().kind == DotToken::Id) {
      g.function_name = cur().text;
      advance();
    }
    expect_punct('{');

    std::map<std::string, int> ids;           // dot name -> node id
    std::map<int, int> declared_line;         // node id -> first line
    std::set<int> labeled;
    auto node_of = [&](const std::string& name, int line) {
      auto it = ids.find(name);
      if (it != ids.end()) return it->second;
      int id = g.add_node("", "");
      ids.emplace(name, id);
      declared_line[id] = line;
      return id;
    };

    while (!accept_punct('}')) {
      if (cur().kind == DotToken::End)
        throw DotParseError(file_, cur().line, "unterminated digraph");
      if (cur().kind != DotToken::Id)
        throw DotParseError(file_, cur().line, "expected a node or edge statement");
      std::string name = cur().text;
      int line = cur().line;
      advance();
      if (cur().kind == DotToken::Arrow) {
        advance();
        if (cur().kind != DotToken::Id)
          throw DotParseError(file_, cur().line, "expected edge target");
        std::string target = cur().text;
        int tline = cur().line;
        advance();
        auto attrs = attributes();
        auto it = attrs.find("label");
        if (it == attrs.end())
          throw DotParseError(file_, line, "edge without a label attribute");
        auto label = edge_label_from(it->second);
        if (!label)
          throw DotParseError(file_, line, "unknown edge label '" + it->second + "'");
        std::string guard;
        if (auto git = attrs.find("guard"); git != attrs.end()) guard = git->second;
        int src = node_of(name, line);  // sequenced: ids follow mention order
        int dst = node_of(target, tline);
        g.add_edge(src, dst, *label, guard);
      } else {
        auto attrs = attributes();
        int id = node_of(name, line);
        auto it = attrs.find("label");
        if (it == attrs.end()) throw MissingLabelError(file_, line, name);
        const std::string& lab = it->second;
        size_t comma = lab.find(',');
        if (lab.size() < 2 || lab.front() != '(' || lab.back() != ')' ||
            comma == std::string::npos)
          throw MissingLabelError(file_, line, name);
        g.nodes[id].type = lab.substr(1, comma - 1);
        g.nodes[id].token = lab.substr(comma + 1, lab.size() - comma - 2);
        labeled.insert(id);
      }
      accept_punct(';');
    }

    if (g.nodes.empty()) {
      warnings.push_back(file_ + ": empty digraph '" + g.function_name + "' skipped");
      return false;
    }
    for (const Node& n : g.nodes)
      if (!labeled.count(n.id)) {
        int line = declared_line.count(n.id) ? declared_line[n.id] : 1;
        std::string name;
        for (const auto& [nm, id] : ids)
          if (id == n.id) name = nm;
        throw MissingLabelError(file_, line, name);
      }

    finalize(g);
    return true;
  }

  // Re-derives what the serialization does not store: start/end ids and
  // terminal leaf indices.
  void finalize(CodeGraph& g) {
    for (const Node& n : g.nodes) {
      if (n.type == "START" && g.start_id < 0) g.start_id = n.id;
      if (n.type == "END" && g.end_id < 0) g.end_id = n.id;
    }
    if (g.has_edges(EdgeLabel::Cfg)) synthesize_endpoints(g);
    assign_leaf_indices(g);
  }

  void synthesize_endpoints(CodeGraph& g) {
    auto out = g.out_adjacency(EdgeLabel::Cfg);
    auto in = g.in_adjacency(EdgeLabel::Cfg);
    std::set<int> cfg_nodes;
    for (const Edge& e : g.edges)
      if (e.label == EdgeLabel::Cfg) {
        cfg_nodes.insert(e.src);
        cfg_nodes.insert(e.dst);
      }
    if (g.start_id < 0) {
      int start = g.add_node("START", "START");
      for (int n : cfg_nodes)
        if (in[n].empty()) g.add_edge(start, n, EdgeLabel::Cfg);
      g.start_id = start;
    }
    if (g.end_id < 0) {
      int end = g.add_node("END", "END");
      for (int n : cfg_nodes)
        if (out[n].empty()) g.add_edge(n, end, EdgeLabel::Cfg);
      g.end_id = end;
    }
  }

  // Terminals are AST leaves that carry a token; order follows a depth-first
  // walk with children in edge order, matching what the frontend emits.
  void assign_leaf_indices(CodeGraph& g) {
    auto children = g.out_adjacency(EdgeLabel::Ast);
    std::vector<char> has_parent(g.nodes.size(), 0), in_ast(g.nodes.size(), 0);
    for (const Edge& e : g.edges)
      if (e.label == EdgeLabel::Ast) {
        has_parent[e.dst] = 1;
        in_ast[e.src] = in_ast[e.dst] = 1;
      }
    int next = 0;
    for (const Node& n : g.nodes) {
      if (!in_ast[n.id] || has_parent[n.id]) continue;
      // DFS from each AST root in id order.
      std::vector<int> stack = {n.id};
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (children[u].empty()) {
          if (!g.nodes[u].token.empty()) g.nodes[u].leaf_index = next++;
          continue;
        }
        for (auto it = children[u].rbegin(); it != children[u].rend(); ++it)
          stack.push_back(*it);
      }
    }
  }

  std::vector<DotToken> toks_;
  std::string file_;
  size_t i_ = 0;
};

}  // namespace

DotImport import_dot(std::string_view content, const std::string& filename) {
  return DotReader(content, filename).run();
}

}  // namespace pathvec
