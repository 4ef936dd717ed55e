#include "heraklit/dsl.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "heraklit/calculus.hpp"

namespace heraklit::dsl {

// --- AST --------------------------------------------------------------------

ExprPtr ModuleExpr::ref(std::string name) {
  auto e = std::make_shared<ModuleExpr>();
  e->kind = Kind::ref;
  e->name = std::move(name);
  return e;
}

ExprPtr ModuleExpr::compose(ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<ModuleExpr>();
  e->kind = Kind::compose;
  e->operands = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr ModuleExpr::closure(ExprPtr operand) {
  auto e = std::make_shared<ModuleExpr>();
  e->kind = Kind::closure;
  e->operands = {std::move(operand)};
  return e;
}

ExprPtr ModuleExpr::abstr(ExprPtr operand) {
  auto e = std::make_shared<ModuleExpr>();
  e->kind = Kind::abstr;
  e->operands = {std::move(operand)};
  return e;
}

ExprPtr ModuleExpr::empty() { return std::make_shared<ModuleExpr>(); }

std::string to_string(const ModuleExpr& e) {
  switch (e.kind) {
    case ModuleExpr::Kind::ref: return e.name;
    case ModuleExpr::Kind::empty: return "E";
    case ModuleExpr::Kind::abstr: return "abstr(" + to_string(*e.operands[0]) + ")";
    case ModuleExpr::Kind::closure: {
      const auto& inner = *e.operands[0];
      if (inner.kind == ModuleExpr::Kind::compose) return "(" + to_string(inner) + ")^c";
      return to_string(inner) + "^c";
    }
    case ModuleExpr::Kind::compose: {
      const auto& rhs = *e.operands[1];
      std::string r = to_string(rhs);
      if (rhs.kind == ModuleExpr::Kind::compose) r = "(" + r + ")";
      return to_string(*e.operands[0]) + " . " + r;
    }
  }
  return {};
}

const Binding* Environment::find(const std::string& name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

std::size_t Environment::snippet_count() const {
  std::size_t n = 0;
  for (const auto& [_, b] : bindings_) n += std::holds_alternative<SnippetDecl>(b);
  return n;
}

std::size_t Environment::definition_count() const { return bindings_.size() - snippet_count(); }

// --- Lexer ------------------------------------------------------------------

namespace {

enum class Tok { ident, number, punct, end };

struct Token {
  Tok type = Tok::end;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++column;
      }
    }
  };
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::syntax_error,
                std::to_string(line) + ":" + std::to_string(column) + ": " + msg);
  };

  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = column;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.type = Tok::ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.type = Tok::number;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (src.substr(i, 2) == ":=" || src.substr(i, 2) == "->") {
      t.type = Tok::punct;
      t.text = std::string(src.substr(i, 2));
      advance(2);
    } else if (src.substr(i, 3) == "\xE2\x80\xA2") {  // U+2022 BULLET
      t.type = Tok::punct;
      t.text = ".";
      advance(3);
    } else if (std::string_view("{}();:,.^").find(c) != std::string_view::npos) {
      t.type = Tok::punct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

const std::set<std::string> kReserved = {"alphabet", "module", "E", "abstr"};

}  // namespace

// --- Parser -----------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Environment parse_file() {
    while (peek().type != Tok::end) {
      if (is_ident("alphabet")) {
        parse_alphabet();
      } else if (is_ident("module")) {
        parse_module();
      } else if (peek().type == Tok::ident && peek(1).text == ":=") {
        parse_definition();
      } else {
        fail(peek(), "expected 'alphabet', 'module' or a definition, found " + describe(peek()));
      }
    }
    check_acyclic();
    return std::move(env_);
  }

  ExprPtr parse_standalone_expression() {
    auto e = parse_expr();
    if (peek().type != Tok::end) fail(peek(), "unexpected " + describe(peek()));
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_ident(std::string_view word) const {
    return peek().type == Tok::ident && peek().text == word;
  }
  bool is_punct(std::string_view p) const { return peek().type == Tok::punct && peek().text == p; }

  [[noreturn]] static void fail(const Token& at, const std::string& msg,
                                ErrorCode code = ErrorCode::syntax_error) {
    throw Error(code, std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + msg);
  }
  static std::string describe(const Token& t) {
    if (t.type == Tok::end) return "end of input";
    return "'" + t.text + "'";
  }

  void expect(std::string_view p) {
    if (!is_punct(p)) fail(peek(), "expected '" + std::string(p) + "', found " + describe(peek()));
    next();
  }
  void skip_optional(std::string_view p) {
    if (is_punct(p)) next();
  }
  const Token& expect_ident(std::string_view what) {
    if (peek().type != Tok::ident) fail(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
    return next();
  }
  std::vector<Token> ident_list() {
    std::vector<Token> out;
    if (peek().type != Tok::ident) return out;
    out.push_back(next());
    while (is_punct(",")) {
      next();
      out.push_back(expect_ident("a name"));
    }
    return out;
  }

  void bind(const Token& at, const std::string& name, Binding b) {
    if (kReserved.contains(name)) fail(at, "'" + name + "' is reserved");
    if (env_.bindings_.contains(name))
      fail(at, "'" + name + "' is already defined", ErrorCode::duplicate_name);
    env_.bindings_.emplace(name, std::move(b));
    env_.order_.push_back(name);
  }

  void parse_alphabet() {
    const Token& kw = next();
    if (have_alphabet_) fail(kw, "only one alphabet declaration is allowed");
    have_alphabet_ = true;
    expect("{");
    std::set<std::string> places, transitions, others;
    std::set<std::string> all;
    while (!is_punct("}")) {
      const Token& section = expect_ident("'places', 'transitions' or 'labels'");
      std::set<std::string>* target = nullptr;
      if (section.text == "places") target = &places;
      else if (section.text == "transitions") target = &transitions;
      else if (section.text == "labels") target = &others;
      else fail(section, "unknown alphabet section '" + section.text + "'");
      expect(":");
      for (const auto& t : ident_list()) {
        if (!all.insert(t.text).second)
          fail(t, "label '" + t.text + "' declared twice", ErrorCode::duplicate_name);
        target->insert(t.text);
      }
      skip_optional(";");
    }
    expect("}");
    env_.alphabet_ = Alphabet(places, transitions, others);
  }

  void parse_module() {
    next();
    const Token& name = expect_ident("a module name");
    expect("{");
    SnippetDecl decl;
    decl.name = name.text;
    std::map<std::string, std::size_t> declared;
    auto resolve = [&](const Token& t) {
      if (!declared.contains(t.text))
        fail(t, "'" + t.text + "' is not a node of module '" + decl.name + "'");
    };
    bool have_left = false, have_right = false;
    while (!is_punct("}")) {
      const Token& kw = expect_ident("a module statement");
      if (kw.text == "place" || kw.text == "transition" || kw.text == "node") {
        const Token& node = expect_ident("a node name");
        NodeDecl nd;
        nd.name = node.text;
        nd.label = node.text;
        const Token* label_at = &node;
        if (is_ident("label")) {
          next();
          label_at = &expect_ident("a label");
          nd.label = label_at->text;
        }
        if (!env_.alphabet_.contains(nd.label))
          fail(*label_at, "label '" + nd.label + "' is not in the alphabet", ErrorCode::unknown_label);
        nd.kind = env_.alphabet_.kind_of(nd.label);
        const NodeKind want = kw.text == "place"        ? NodeKind::place
                              : kw.text == "transition" ? NodeKind::transition
                                                        : NodeKind::abstract;
        if (nd.kind != want)
          fail(*label_at, "label '" + nd.label + "' belongs to a " +
                              std::string(to_string(nd.kind)) + ", not a " + kw.text);
        if (is_ident("marking")) {
          const Token& m = next();
          if (nd.kind != NodeKind::place) fail(m, "only places carry a marking");
          if (peek().type != Tok::number) fail(peek(), "expected a token count");
          nd.marking = static_cast<std::uint32_t>(std::stoul(next().text));
        }
        if (!declared.emplace(nd.name, decl.nodes.size()).second)
          fail(node, "node '" + nd.name + "' declared twice", ErrorCode::duplicate_name);
        decl.nodes.push_back(std::move(nd));
      } else if (kw.text == "arc") {
        const Token* from = &expect_ident("a node name");
        resolve(*from);
        expect("->");
        do {
          const Token& to = expect_ident("a node name");
          resolve(to);
          decl.arcs.emplace_back(from->text, to.text);
          from = &to;
        } while (is_punct("->") && (next(), true));
      } else if (kw.text == "left" || kw.text == "right") {
        bool& seen = kw.text == "left" ? have_left : have_right;
        if (seen) fail(kw, "'" + kw.text + "' interface given twice");
        seen = true;
        expect(":");
        auto& slots = kw.text == "left" ? decl.left : decl.right;
        std::set<std::string> in_slot;
        for (const auto& t : ident_list()) {
          resolve(t);
          if (!in_slot.insert(t.text).second) fail(t, "'" + t.text + "' listed twice in one interface");
          slots.push_back(t.text);
        }
      } else {
        fail(kw, "unknown module statement '" + kw.text + "'");
      }
      skip_optional(";");
    }
    expect("}");
    bind(name, name.text, std::move(decl));
  }

  void parse_definition() {
    const Token& name = next();
    next();  // :=
    auto e = parse_expr();
    skip_optional(";");
    definition_sites_.emplace(name.text, name);
    bind(name, name.text, std::move(e));
  }

  ExprPtr parse_expr() {
    auto lhs = parse_postfix();
    while (is_punct(".")) {
      next();
      lhs = ModuleExpr::compose(std::move(lhs), parse_postfix());
    }
    return lhs;
  }

  ExprPtr parse_postfix() {
    auto e = parse_primary();
    while (is_punct("^")) {
      next();
      const Token& c = expect_ident("'c' after '^'");
      if (c.text != "c") fail(c, "only the closure '^c' is a postfix operator");
      e = ModuleExpr::closure(std::move(e));
    }
    return e;
  }

  ExprPtr parse_primary() {
    if (is_punct("(")) {
      next();
      auto e = parse_expr();
      expect(")");
      return e;
    }
    const Token& t = expect_ident("a module expression");
    if (t.text == "E") return ModuleExpr::empty();
    if (t.text == "abstr") {
      expect("(");
      auto e = parse_expr();
      expect(")");
      return ModuleExpr::abstr(std::move(e));
    }
    if (kReserved.contains(t.text)) fail(t, "'" + t.text + "' cannot be used here");
    return ModuleExpr::ref(t.text);
  }

  void check_acyclic() {
    enum class Mark { none, active, done };
    std::map<std::string, Mark> marks;
    std::function<void(const std::string&, const ModuleExpr&, const std::string&)> walk;
    std::function<void(const std::string&)> visit = [&](const std::string& name) {
      auto& mark = marks[name];
      if (mark == Mark::done) return;
      const Binding* b = env_.find(name);
      if (b == nullptr || std::holds_alternative<SnippetDecl>(*b)) {
        mark = Mark::done;
        return;
      }
      mark = Mark::active;
      walk(name, *std::get<ExprPtr>(*b), name);
      marks[name] = Mark::done;
    };
    walk = [&](const std::string& owner, const ModuleExpr& e, const std::string& root) {
      if (e.kind == ModuleExpr::Kind::ref) {
        if (marks[e.name] == Mark::active)
          fail(definition_sites_.at(owner),
               "definition of '" + root + "' refers back to '" + e.name + "'",
               ErrorCode::recursive_definition);
        visit(e.name);
        return;
      }
      for (const auto& op : e.operands) walk(owner, *op, root);
    };
    for (const auto& name : env_.order_) visit(name);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool have_alphabet_ = false;
  Environment env_;
  std::map<std::string, Token> definition_sites_;
};

Environment parse(std::string_view text) { return Parser(text).parse_file(); }

Environment parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

ExprPtr parse_expression(std::string_view text) { return Parser(text).parse_standalone_expression(); }

// --- Evaluation -------------------------------------------------------------

Module instantiate(const SnippetDecl& decl, const Alphabet& alphabet, std::uint64_t tag) {
  auto id = [tag](const std::string& name) { return NodeId(AtomicNodeId{tag, name}); };
  std::map<NodeId, NodeInfo> nodes;
  Marking marking;
  for (const auto& nd : decl.nodes) {
    nodes.emplace(id(nd.name), NodeInfo{nd.label, alphabet.kind_of(nd.label)});
    if (nd.marking > 0) marking.emplace(id(nd.name), nd.marking);
  }
  std::set<Edge> edges;
  for (const auto& [from, to] : decl.arcs) edges.emplace(id(from), id(to));
  Interface left, right;
  for (const auto& n : decl.left) left.push_back(id(n));
  for (const auto& n : decl.right) right.push_back(id(n));
  return Module(std::move(nodes), std::move(edges), std::move(left), std::move(right),
                std::move(marking), decl.name);
}

Module Evaluator::eval(const ModuleExpr& e) {
  switch (e.kind) {
    case ModuleExpr::Kind::empty: return empty_module();
    case ModuleExpr::Kind::ref: return eval_name(e.name);
    case ModuleExpr::Kind::compose: {
      Module lhs = eval(*e.operands[0]);
      Module rhs = eval(*e.operands[1]);
      return compose(lhs, rhs);
    }
    case ModuleExpr::Kind::closure: return closure(eval(*e.operands[0]));
    case ModuleExpr::Kind::abstr: return abstract_of(eval(*e.operands[0]));
  }
  return empty_module();
}

Module Evaluator::eval_name(const std::string& name) {
  const Binding* b = env_.find(name);
  if (b == nullptr) throw Error(ErrorCode::unbound_name, "'" + name + "' is not defined");
  if (const auto* decl = std::get_if<SnippetDecl>(b))
    return instantiate(*decl, env_.alphabet(), next_tag_++);
  return eval(*std::get<ExprPtr>(*b)).with_name(name);
}

Module eval(const Environment& env, const ModuleExpr& e) { return Evaluator(env).eval(e); }

}  // namespace heraklit::dsl
