#include <cctype>
#include <memory>
#include <set>

#include "geodd/fof.hpp"

namespace geodd::fof {

namespace {

enum class Tok {
  Ident,
  Quoted,
  LParen,
  RParen,
  LBrack,
  RBrack,
  Comma,
  Colon,
  Dot,
  Bang,
  Amp,
  Tilde,
  Implies,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      SourcePos pos = here();
      if (i_ >= text_.size()) {
        out.push_back({Tok::End, "", pos});
        return out;
      }
      unsigned char c = static_cast<unsigned char>(text_[i_]);
      if (c > 127) fail("non-ASCII byte", pos);
      if (std::isalpha(c)) {
        std::size_t start = i_;
        while (i_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i_])) ||
                                     text_[i_] == '_'))
          advance();
        out.push_back({Tok::Ident, std::string(text_.substr(start, i_ - start)), pos});
        continue;
      }
      if (c == '\'') {
        advance();
        std::size_t start = i_;
        while (i_ < text_.size() && text_[i_] != '\'' && text_[i_] != '\n') advance();
        if (i_ >= text_.size() || text_[i_] != '\'') fail("unterminated quoted path", pos);
        out.push_back({Tok::Quoted, std::string(text_.substr(start, i_ - start)), pos});
        advance();
        continue;
      }
      if (c == '=' && i_ + 1 < text_.size() && text_[i_ + 1] == '>') {
        advance();
        advance();
        out.push_back({Tok::Implies, "=>", pos});
        continue;
      }
      Tok kind;
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '[': kind = Tok::LBrack; break;
        case ']': kind = Tok::RBrack; break;
        case ',': kind = Tok::Comma; break;
        case ':': kind = Tok::Colon; break;
        case '.': kind = Tok::Dot; break;
        case '!': kind = Tok::Bang; break;
        case '&': kind = Tok::Amp; break;
        case '~': kind = Tok::Tilde; break;
        default:
          fail(std::string("unexpected character '") + static_cast<char>(c) + "'", pos);
      }
      advance();
      out.push_back({kind, std::string(1, static_cast<char>(c)), pos});
    }
  }

 private:
  SourcePos here() const { return {file_, line_, col_}; }

  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_space_and_comments() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == '%') {
        while (i_ < text_.size() && text_[i_] != '\n') {
          if (static_cast<unsigned char>(text_[i_]) > 127) fail("non-ASCII byte", here());
          advance();
        }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg, const SourcePos& pos) const {
    throw Error(ErrorKind::Syntax, msg, pos);
  }

  std::string_view text_;
  std::string file_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

struct Node {
  enum class Kind { Quant, Impl, And, Not, Atom };
  Kind kind;
  SourcePos pos;
  std::vector<std::string> vars;
  std::vector<std::unique_ptr<Node>> children;
  Atom atom;
};

using NodePtr = std::unique_ptr<Node>;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ParsedFile run() {
    ParsedFile out;
    std::set<std::string> names;
    while (peek().kind != Tok::End) {
      const Token& head = expect(Tok::Ident, "'fof' or 'include'");
      if (head.text == "include") {
        expect(Tok::LParen, "'('");
        const Token& path = expect(Tok::Quoted, "quoted file name");
        expect(Tok::RParen, "')'");
        expect(Tok::Dot, "'.'");
        out.includes.push_back({path.text, head.pos});
      } else if (head.text == "fof") {
        SourceUnit unit = parse_fof(head.pos);
        if (!names.insert(unit.name).second)
          throw Error(ErrorKind::Semantic, "duplicate unit name '" + unit.name + "'", head.pos);
        out.units.push_back(std::move(unit));
      } else {
        throw Error(ErrorKind::Syntax, "expected 'fof' or 'include', found '" + head.text + "'",
                    head.pos);
      }
    }
    return out;
  }

 private:
  const Token& peek() const { return toks_[i_]; }

  const Token& take() {
    const Token& t = toks_[i_];
    if (t.kind != Tok::End) ++i_;
    return t;
  }

  const Token& expect(Tok kind, const std::string& what) {
    const Token& t = peek();
    if (t.kind != kind) {
      std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
      throw Error(ErrorKind::Syntax, "expected " + what + ", found " + found, t.pos);
    }
    return take();
  }

  SourceUnit parse_fof(const SourcePos& pos) {
    SourceUnit unit;
    unit.origin = pos;
    expect(Tok::LParen, "'('");
    unit.name = expect(Tok::Ident, "unit name").text;
    expect(Tok::Comma, "','");
    const Token& role = expect(Tok::Ident, "role");
    if (role.text == "axiom") {
      unit.role = Role::Axiom;
    } else if (role.text == "conjecture") {
      unit.role = Role::Conjecture;
    } else {
      throw Error(ErrorKind::Semantic, "unsupported role '" + role.text + "'", role.pos);
    }
    expect(Tok::Comma, "','");
    NodePtr formula = parse_impl();
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    unit.formula = to_horn(*formula);
    return unit;
  }

  NodePtr parse_impl() {
    NodePtr lhs = parse_conj();
    if (peek().kind != Tok::Implies) return lhs;
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::Impl;
    node->pos = take().pos;
    node->children.push_back(std::move(lhs));
    node->children.push_back(parse_conj());
    if (peek().kind == Tok::Implies)
      throw Error(ErrorKind::Syntax, "chained implication", peek().pos);
    return node;
  }

  NodePtr parse_conj() {
    NodePtr first = parse_unary();
    if (peek().kind != Tok::Amp) return first;
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::And;
    node->pos = first->pos;
    node->children.push_back(std::move(first));
    while (peek().kind == Tok::Amp) {
      take();
      node->children.push_back(parse_unary());
    }
    return node;
  }

  NodePtr parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Tilde: {
        auto node = std::make_unique<Node>();
        node->kind = Node::Kind::Not;
        node->pos = take().pos;
        node->children.push_back(parse_unary());
        return node;
      }
      case Tok::Bang: {
        auto node = std::make_unique<Node>();
        node->kind = Node::Kind::Quant;
        node->pos = take().pos;
        expect(Tok::LBrack, "'['");
        if (peek().kind != Tok::RBrack) {
          for (;;) {
            const Token& v = expect(Tok::Ident, "variable");
            if (!std::isupper(static_cast<unsigned char>(v.text[0])))
              throw Error(ErrorKind::Semantic, "quantified variable '" + v.text +
                                                   "' must start with an uppercase letter",
                          v.pos);
            node->vars.push_back(v.text);
            if (peek().kind != Tok::Comma) break;
            take();
          }
        }
        expect(Tok::RBrack, "']'");
        expect(Tok::Colon, "':'");
        node->children.push_back(parse_impl());
        return node;
      }
      case Tok::LParen: {
        take();
        NodePtr inner = parse_impl();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident:
        return parse_atom();
      default:
        throw Error(ErrorKind::Syntax,
                    t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'",
                    t.pos);
    }
  }

  NodePtr parse_atom() {
    const Token& name = take();
    auto pred = pred_from_name(name.text);
    if (!pred) throw Error(ErrorKind::Semantic, "unknown predicate '" + name.text + "'", name.pos);
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::Atom;
    node->pos = name.pos;
    node->atom.predicate = *pred;
    expect(Tok::LParen, "'('");
    for (;;) {
      const Token& t = expect(Tok::Ident, "term");
      bool var = std::isupper(static_cast<unsigned char>(t.text[0]));
      node->atom.args.push_back({var ? Term::Kind::Variable : Term::Kind::Constant, t.text});
      if (peek().kind != Tok::Comma) break;
      take();
    }
    expect(Tok::RParen, "')'");
    if (node->atom.args.size() != arity(*pred))
      throw Error(ErrorKind::Semantic,
                  "arity mismatch: " + name.text + " takes " + std::to_string(arity(*pred)) +
                      " arguments, got " + std::to_string(node->atom.args.size()),
                  name.pos);
    return node;
  }

  // Flattens a conjunction into literals; `negated` receives ~atom literals.
  void flatten(const Node& n, std::vector<Atom>& positive, std::vector<Atom>* negated) {
    switch (n.kind) {
      case Node::Kind::And:
        for (const auto& c : n.children) flatten(*c, positive, negated);
        return;
      case Node::Kind::Atom:
        positive.push_back(n.atom);
        return;
      case Node::Kind::Not:
        if (!negated)
          throw Error(ErrorKind::Semantic, "negated literal outside the premises", n.pos);
        if (n.children[0]->kind != Node::Kind::Atom)
          throw Error(ErrorKind::Semantic, "negation applies to atoms only", n.pos);
        negated->push_back(n.children[0]->atom);
        return;
      case Node::Kind::Impl:
        throw Error(ErrorKind::Semantic, "nested implication", n.pos);
      case Node::Kind::Quant:
        throw Error(ErrorKind::Semantic, "quantifier must be outermost", n.pos);
    }
  }

  QuantifiedHorn to_horn(const Node& root) {
    QuantifiedHorn h;
    const Node* body = &root;
    std::set<std::string> bound;
    if (root.kind == Node::Kind::Quant) {
      h.variables = root.vars;
      for (const auto& v : root.vars)
        if (!bound.insert(v).second)
          throw Error(ErrorKind::Semantic, "variable '" + v + "' quantified twice", root.pos);
      body = root.children[0].get();
    }
    if (body->kind == Node::Kind::Impl) {
      flatten(*body->children[0], h.premises, &h.ndg_premises);
      flatten(*body->children[1], h.conclusions, nullptr);
    } else {
      flatten(*body, h.conclusions, nullptr);
    }
    auto check = [&](const std::vector<Atom>& atoms) {
      for (const auto& a : atoms)
        for (const auto& t : a.args)
          if (t.is_var() && !bound.count(t.name))
            throw Error(ErrorKind::Semantic, "variable '" + t.name + "' is not quantified",
                        body->pos);
    };
    check(h.premises);
    check(h.ndg_premises);
    check(h.conclusions);
    return h;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

std::string_view role_name(Role r) { return r == Role::Axiom ? "axiom" : "conjecture"; }

ParsedFile parse_units(std::string_view text, const std::string& origin) {
  return Parser(Lexer(text, origin).run()).run();
}

}  // namespace geodd::fof
