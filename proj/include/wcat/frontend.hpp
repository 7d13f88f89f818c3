#pragma once

#include <json.hpp>

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wcat/factor.hpp"
#include "wcat/opalg.hpp"
#include "wcat/plex.hpp"

namespace wcat {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Tokens and lexing.

struct SourcePos {
  int line = 1;
  int col = 1;
  std::string to_string() const { return std::to_string(line) + ":" + std::to_string(col); }
};

[[noreturn]] inline void syntax_error(const SourcePos& at, const std::string& message) {
  fail("SyntaxError", at.to_string(), message);
}

namespace detail {

struct Token {
  enum Kind {
    Name,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Define,  // :=
    Arrow,   // ->
    MapsTo,  // =>
    Colon,
    End
  };
  Kind kind = End;
  std::string text;
  SourcePos pos;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }
  Token expect(Token::Kind kind, const std::string& what) {
    if (tok_.kind != kind) syntax_error(tok_.pos, "expected " + what);
    return next();
  }

private:
  void advance() {
    skip();
    tok_.pos = pos_;
    if (i_ >= text_.size()) {
      tok_.kind = Token::End;
      tok_.text.clear();
      return;
    }
    char c = text_[i_];
    auto two = [&](char a, char b) {
      return c == a && i_ + 1 < text_.size() && text_[i_ + 1] == b;
    };
    if (two(':', '=')) return take(Token::Define, 2);
    if (two('-', '>')) return take(Token::Arrow, 2);
    if (two('=', '>')) return take(Token::MapsTo, 2);
    switch (c) {
      case '(': return take(Token::LParen, 1);
      case ')': return take(Token::RParen, 1);
      case '{': return take(Token::LBrace, 1);
      case '}': return take(Token::RBrace, 1);
      case '[': return take(Token::LBracket, 1);
      case ']': return take(Token::RBracket, 1);
      case ',': return take(Token::Comma, 1);
      case ':': return take(Token::Colon, 1);
      default: break;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
      size_t start = i_;
      while (i_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_' ||
              text_[i_] == '\'' || text_[i_] == '(' || text_[i_] == ')')) {
        // Position words like inl(inr(here)) read as single names.
        if (text_[i_] == '(' && !looks_like_position(start)) break;
        if (text_[i_] == ')' && paren_depth_ == 0) break;
        if (text_[i_] == '(') ++paren_depth_;
        if (text_[i_] == ')') {
          if (paren_depth_ == 0) break;
          --paren_depth_;
        }
        bump();
      }
      if (paren_depth_ != 0) syntax_error(tok_.pos, "unbalanced parentheses in position word");
      tok_.kind = Token::Name;
      tok_.text = std::string(text_.substr(start, i_ - start));
      return;
    }
    syntax_error(pos_, std::string("unexpected character '") + c + "'");
  }

  bool looks_like_position(size_t start) const {
    std::string_view head = text_.substr(start, i_ - start);
    return head.size() >= 3 && (head.substr(i_ - start - 3) == "inl" ||
                                head.substr(i_ - start - 3) == "inr");
  }

  void take(Token::Kind k, size_t n) {
    tok_.kind = k;
    tok_.text = std::string(text_.substr(i_, n));
    for (size_t j = 0; j < n; ++j) bump();
  }
  void bump() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.col = 1;
    } else {
      ++pos_.col;
    }
    ++i_;
  }
  void skip() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == '#') {
        while (i_ < text_.size() && text_[i_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  size_t i_ = 0;
  int paren_depth_ = 0;
  SourcePos pos_;
  Token tok_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Surface syntax.

/// A parsed surface form: an atom, a parenthesized list, a tree literal,
/// or a brace-delimited assignment block.
struct SExpr {
  enum Kind { Atom, List, TreeLit, Assign } kind = Atom;
  SourcePos pos;
  std::string text;                                   // Atom
  std::vector<SExpr> items;                           // List
  Tree tree;                                          // TreeLit
  std::vector<std::pair<std::string, SExpr>> assign;  // Assign
};

struct Declaration {
  enum Kind { TreeDecl, GlobsetDecl, ComputadDecl, CellDecl, HomDecl, CheckDecl } kind;
  SourcePos pos;
  std::string name;          // declared name (empty for check)
  std::string context;       // cell: computad; hom: source
  std::string context2;      // hom: target
  SExpr body;
};

namespace detail {

inline Tree parse_tree_literal(Lexer& lex) {
  Token open = lex.expect(Token::LBracket, "'['");
  (void)open;
  std::vector<Tree> kids;
  while (lex.peek().kind != Token::RBracket) {
    if (lex.peek().kind == Token::End) syntax_error(lex.peek().pos, "unterminated tree literal");
    kids.push_back(parse_tree_literal(lex));
  }
  lex.expect(Token::RBracket, "']'");
  return Tree(std::move(kids));
}

inline SExpr parse_sexpr(Lexer& lex) {
  SExpr e;
  e.pos = lex.peek().pos;
  switch (lex.peek().kind) {
    case Token::Name:
      e.kind = SExpr::Atom;
      e.text = lex.next().text;
      return e;
    case Token::LBracket:
      e.kind = SExpr::TreeLit;
      e.tree = parse_tree_literal(lex);
      return e;
    case Token::LParen: {
      lex.next();
      e.kind = SExpr::List;
      while (lex.peek().kind != Token::RParen) {
        if (lex.peek().kind == Token::End) syntax_error(e.pos, "unterminated '('");
        e.items.push_back(parse_sexpr(lex));
      }
      lex.next();
      return e;
    }
    case Token::LBrace: {
      lex.next();
      e.kind = SExpr::Assign;
      while (lex.peek().kind != Token::RBrace) {
        Token key = lex.expect(Token::Name, "assignment key");
        lex.expect(Token::MapsTo, "'=>'");
        SExpr value = parse_sexpr(lex);
        e.assign.emplace_back(key.text, std::move(value));
        if (lex.peek().kind == Token::Comma) lex.next();
      }
      lex.next();
      return e;
    }
    default:
      syntax_error(lex.peek().pos, "expected a term");
  }
}

}  // namespace detail

/// Parses a `.wcat` source file into declarations. `#` starts a comment.
inline std::vector<Declaration> parse(std::string_view text) {
  detail::Lexer lex(text);
  std::vector<Declaration> out;
  while (lex.peek().kind != detail::Token::End) {
    detail::Token kw = lex.expect(detail::Token::Name, "a declaration keyword");
    Declaration d;
    d.pos = kw.pos;
    if (kw.text == "tree") {
      d.kind = Declaration::TreeDecl;
      d.name = lex.expect(detail::Token::Name, "a name").text;
      lex.expect(detail::Token::Define, "':='");
      d.body = detail::parse_sexpr(lex);
      if (d.body.kind != SExpr::TreeLit) syntax_error(d.body.pos, "expected a tree literal");
    } else if (kw.text == "globset" || kw.text == "computad") {
      d.kind = kw.text == "globset" ? Declaration::GlobsetDecl : Declaration::ComputadDecl;
      d.name = lex.expect(detail::Token::Name, "a name").text;
      lex.expect(detail::Token::Define, "':='");
      d.body = detail::parse_sexpr(lex);
    } else if (kw.text == "cell") {
      d.kind = Declaration::CellDecl;
      d.name = lex.expect(detail::Token::Name, "a name").text;
      detail::Token in = lex.expect(detail::Token::Name, "'in'");
      if (in.text != "in") syntax_error(in.pos, "expected 'in'");
      d.context = lex.expect(detail::Token::Name, "a computad name").text;
      lex.expect(detail::Token::Define, "':='");
      d.body = detail::parse_sexpr(lex);
    } else if (kw.text == "hom") {
      d.kind = Declaration::HomDecl;
      d.name = lex.expect(detail::Token::Name, "a name").text;
      lex.expect(detail::Token::Colon, "':'");
      d.context = lex.expect(detail::Token::Name, "a source computad").text;
      lex.expect(detail::Token::Arrow, "'->'");
      d.context2 = lex.expect(detail::Token::Name, "a target computad").text;
      lex.expect(detail::Token::Define, "':='");
      d.body = detail::parse_sexpr(lex);
      if (d.body.kind != SExpr::Assign) syntax_error(d.body.pos, "expected '{...}'");
    } else if (kw.text == "check") {
      d.kind = Declaration::CheckDecl;
      d.context = lex.expect(detail::Token::Name, "a computad name").text;
      d.body = detail::parse_sexpr(lex);
    } else {
      syntax_error(kw.pos, "unknown declaration '" + kw.text + "'");
    }
    out.push_back(std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elaboration.

struct CheckedFile {
  std::map<std::string, Tree> trees;
  std::map<std::string, GlobSet> globsets;
  std::map<std::string, ComputadPtr> computads;
  struct NamedCell {
    std::string computad;
    Cell cell;
  };
  std::map<std::string, NamedCell> cells;
  struct NamedHom {
    std::string source, target;
    Hom hom;
  };
  std::map<std::string, NamedHom> homs;
  // Declaration order, for reports.
  std::vector<std::string> order;
};

namespace detail {

inline Cell resolve_var(const ComputadPtr& ctx, const std::string& name, const SourcePos& at) {
  int found_dim = -1;
  for (int k = 0; k <= ctx->max_dim(); ++k) {
    if (ctx->find(k, name) != nullptr) {
      if (found_dim >= 0)
        fail("UnknownGenerator", at.to_string(),
             "generator name '" + name + "' is ambiguous across dimensions");
      found_dim = k;
    }
  }
  if (found_dim < 0)
    fail("UnknownGenerator", at.to_string(), "unknown generator '" + name + "'");
  return Cell::var(found_dim, name);
}

inline Cell elaborate_cell(const CheckedFile& env, const ComputadPtr& ctx, const SExpr& e);

inline Cell elaborate_cell_arg(const CheckedFile& env, const ComputadPtr& ctx, const SExpr& e) {
  if (e.kind == SExpr::Atom) return resolve_var(ctx, e.text, e.pos);
  return elaborate_cell(env, ctx, e);
}

inline Cell elaborate_cell(const CheckedFile& env, const ComputadPtr& ctx, const SExpr& e) {
  if (e.kind == SExpr::Atom) return resolve_var(ctx, e.text, e.pos);
  if (e.kind != SExpr::List || e.items.empty() || e.items[0].kind != SExpr::Atom)
    syntax_error(e.pos, "expected a cell term");
  const std::string& head = e.items[0].text;
  auto args = [&](size_t n) {
    if (e.items.size() != n + 1)
      syntax_error(e.pos, "'" + head + "' takes " + std::to_string(n) + " arguments");
  };
  if (head == "var") {
    args(1);
    if (e.items[1].kind != SExpr::Atom) syntax_error(e.items[1].pos, "expected a generator name");
    return resolve_var(ctx, e.items[1].text, e.items[1].pos);
  }
  if (head == "id") {
    args(1);
    return id_cell(ctx, elaborate_cell_arg(env, ctx, e.items[1]));
  }
  if (head == "assoc" || head == "unit") {
    args(3);
    Cell f = elaborate_cell_arg(env, ctx, e.items[1]);
    Cell g = elaborate_cell_arg(env, ctx, e.items[2]);
    Cell h = elaborate_cell_arg(env, ctx, e.items[3]);
    return head == "assoc" ? associator(ctx, f, g, h) : unitor(ctx, f, g, h);
  }
  if (head == "comp") {
    if (e.items.size() < 3) syntax_error(e.pos, "'comp' takes at least two arguments");
    std::vector<Cell> cells;
    for (size_t i = 1; i < e.items.size(); ++i)
      cells.push_back(elaborate_cell_arg(env, ctx, e.items[i]));
    bool all_one = true;
    for (const Cell& c : cells) all_one &= c.dim() == 1;
    if (all_one) return nary_comp(ctx, cells);
    if (cells.size() == 2 && cells[0].dim() == cells[1].dim() && cells[0].dim() >= 1)
      return binary_comp(ctx, cells[0], cells[1], cells[0].dim() - 1);
    syntax_error(e.pos, "'comp' composes 1-cells or two cells of equal dimension");
  }
  if (head == "coh") {
    args(3);
    Tree t;
    if (e.items[1].kind == SExpr::TreeLit) {
      t = e.items[1].tree;
    } else if (e.items[1].kind == SExpr::Atom && env.trees.count(e.items[1].text)) {
      t = env.trees.at(e.items[1].text);
    } else {
      syntax_error(e.items[1].pos, "expected a tree literal or tree name");
    }
    const SExpr& sph = e.items[2];
    if (sph.kind != SExpr::List || sph.items.size() != 3 || sph.items[0].kind != SExpr::Atom ||
        sph.items[0].text != "sphere")
      syntax_error(sph.pos, "expected '(sphere a b)'");
    ComputadPtr ft = free_tree(t, t.dim());
    Cell a = elaborate_cell_arg(env, ft, sph.items[1]);
    Cell b = elaborate_cell_arg(env, ft, sph.items[2]);
    if (a.dim() != b.dim()) fail("NotParallel", sph.pos.to_string(), "sphere cells differ in dimension");
    int n = a.dim() + 1;
    Sphere lower = ty(free_tree(t, a.dim()), a);
    Sphere sphere = lower.extended(a, b);
    if (e.items[3].kind != SExpr::Assign) syntax_error(e.items[3].pos, "expected '{...}'");
    std::vector<std::map<std::string, Cell>> assign(static_cast<size_t>(n) + 1);
    for (const auto& [key, value] : e.items[3].assign) {
      Pos p = Pos::parse(key);
      assign[static_cast<size_t>(p.dim())].emplace(key, elaborate_cell(env, ctx, value));
    }
    Hom tau(free_tree(t, n), level(ctx, n), std::move(assign));
    Cell cell = Cell::coh(t, sphere, tau);
    check_cell(level(ctx, n), cell);
    return cell;
  }
  syntax_error(e.pos, "unknown cell form '" + head + "'");
}

inline GlobSet elaborate_globset(const SExpr& e) {
  if (e.kind != SExpr::List || e.items.empty() || e.items[0].kind != SExpr::Atom ||
      e.items[0].text != "globset")
    syntax_error(e.pos, "expected '(globset ...)'");
  GlobSet g;
  for (size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& lvl = e.items[i];
    if (lvl.kind != SExpr::List || lvl.items.empty() || lvl.items[0].kind != SExpr::Atom)
      syntax_error(lvl.pos, "expected '(<dim> cells...)'");
    int dim = std::atoi(lvl.items[0].text.c_str());
    if (dim != static_cast<int>(i) - 1)
      syntax_error(lvl.pos, "dimensions must be listed in order starting at 0");
    g.levels.emplace_back();
    for (size_t j = 1; j < lvl.items.size(); ++j) {
      const SExpr& spec = lvl.items[j];
      if (dim == 0) {
        if (spec.kind != SExpr::Atom) syntax_error(spec.pos, "expected a 0-cell name");
        g.levels[static_cast<size_t>(dim)].cells.push_back(spec.text);
      } else {
        if (spec.kind != SExpr::List || spec.items.size() != 3)
          syntax_error(spec.pos, "expected '(name src tgt)'");
        auto& level_ref = g.levels[static_cast<size_t>(dim)];
        int s = g.find(dim - 1, spec.items[1].text);
        int t = g.find(dim - 1, spec.items[2].text);
        if (s < 0 || t < 0) syntax_error(spec.pos, "unknown boundary cell");
        level_ref.cells.push_back(spec.items[0].text);
        level_ref.src.push_back(s);
        level_ref.tgt.push_back(t);
      }
    }
  }
  g.validate();
  return g;
}

inline ComputadPtr elaborate_computad(const CheckedFile& env, const SExpr& e) {
  if (e.kind != SExpr::List || e.items.empty() || e.items[0].kind != SExpr::Atom ||
      e.items[0].text != "computad")
    syntax_error(e.pos, "expected '(computad ...)'");
  Computad c;
  for (size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& lvl = e.items[i];
    if (lvl.kind != SExpr::List || lvl.items.empty() || lvl.items[0].kind != SExpr::Atom)
      syntax_error(lvl.pos, "expected '(<dim> generators...)'");
    int dim = std::atoi(lvl.items[0].text.c_str());
    if (dim != static_cast<int>(i) - 1)
      syntax_error(lvl.pos, "dimensions must be listed in order starting at 0");
    c.dims.emplace_back();
    ComputadPtr sofar = make_computad(c);
    for (size_t j = 1; j < lvl.items.size(); ++j) {
      const SExpr& spec = lvl.items[j];
      if (dim == 0) {
        if (spec.kind != SExpr::Atom) syntax_error(spec.pos, "expected a generator name");
        c.dims[0].push_back(Computad::Gen{spec.text, Sphere()});
      } else {
        if (spec.kind != SExpr::List || spec.items.size() != 3 ||
            spec.items[0].kind != SExpr::Atom)
          syntax_error(spec.pos, "expected '(name src tgt)'");
        ComputadPtr below = level(sofar, dim - 1);
        Cell a = elaborate_cell_arg(env, below, spec.items[1]);
        Cell b = elaborate_cell_arg(env, below, spec.items[2]);
        if (a.dim() != dim - 1 || b.dim() != dim - 1)
          fail("DimMismatch", spec.pos.to_string(),
               "attaching cells must have dimension " + std::to_string(dim - 1));
        Sphere bd = ty(below, a);
        if (bd != ty(below, b))
          fail("NotParallel", spec.pos.to_string(), "attaching cells are not parallel");
        c.dims[static_cast<size_t>(dim)].push_back(Computad::Gen{spec.items[0].text, bd.extended(a, b)});
        sofar = make_computad(c);
      }
    }
  }
  ComputadPtr out = make_computad(std::move(c));
  check_computad(out);
  return out;
}

}  // namespace detail

/// Elaborates and checks a parsed file, in declaration order; forward
/// references are rejected because lookups consult only what came before.
inline CheckedFile check_declarations(const std::vector<Declaration>& decls) {
  CheckedFile env;
  int anon = 0;
  for (const Declaration& d : decls) {
    try {
      switch (d.kind) {
        case Declaration::TreeDecl:
          require(!env.trees.count(d.name), "SyntaxError", d.pos.to_string(),
                  "duplicate tree name");
          env.trees.emplace(d.name, d.body.tree);
          env.order.push_back("tree " + d.name);
          break;
        case Declaration::GlobsetDecl:
          require(!env.globsets.count(d.name), "SyntaxError", d.pos.to_string(),
                  "duplicate globset name");
          env.globsets.emplace(d.name, detail::elaborate_globset(d.body));
          env.order.push_back("globset " + d.name);
          break;
        case Declaration::ComputadDecl:
          require(!env.computads.count(d.name), "SyntaxError", d.pos.to_string(),
                  "duplicate computad name");
          env.computads.emplace(d.name, detail::elaborate_computad(env, d.body));
          env.order.push_back("computad " + d.name);
          break;
        case Declaration::CellDecl: {
          require(!env.cells.count(d.name), "SyntaxError", d.pos.to_string(),
                  "duplicate cell name");
          require(env.computads.count(d.context), "UnknownGenerator", d.pos.to_string(),
                  "unknown computad '" + d.context + "'");
          ComputadPtr ctx = env.computads.at(d.context);
          Cell cell = detail::elaborate_cell(env, ctx, d.body);
          check_cell(level(ctx, cell.dim()), cell);
          env.cells.emplace(d.name, CheckedFile::NamedCell{d.context, std::move(cell)});
          env.order.push_back("cell " + d.name);
          break;
        }
        case Declaration::HomDecl: {
          require(!env.homs.count(d.name), "SyntaxError", d.pos.to_string(),
                  "duplicate hom name");
          require(env.computads.count(d.context) && env.computads.count(d.context2),
                  "UnknownGenerator", d.pos.to_string(), "unknown computad in hom signature");
          ComputadPtr src = env.computads.at(d.context);
          ComputadPtr tgt = env.computads.at(d.context2);
          int n = std::max(src->max_dim(), tgt->max_dim());
          std::vector<std::map<std::string, Cell>> assign(static_cast<size_t>(n) + 1);
          for (const auto& [key, value] : d.body.assign) {
            Cell img = detail::elaborate_cell(env, level(tgt, n), value);
            int k = -1;
            for (int dim = 0; dim <= src->max_dim(); ++dim)
              if (src->find(dim, key)) k = dim;
            require(k >= 0, "BadHom", d.pos.to_string(),
                    "'" + key + "' is not a generator of the source");
            assign[static_cast<size_t>(k)].emplace(key, img);
          }
          Hom h(level(src, n), level(tgt, n), std::move(assign));
          check_hom(h);
          env.homs.emplace(d.name, CheckedFile::NamedHom{d.context, d.context2, std::move(h)});
          env.order.push_back("hom " + d.name);
          break;
        }
        case Declaration::CheckDecl: {
          require(env.computads.count(d.context), "UnknownGenerator", d.pos.to_string(),
                  "unknown computad '" + d.context + "'");
          ComputadPtr ctx = env.computads.at(d.context);
          Cell cell = detail::elaborate_cell(env, ctx, d.body);
          check_cell(level(ctx, cell.dim()), cell);
          env.order.push_back("check #" + std::to_string(++anon));
          break;
        }
      }
    } catch (const Error& err) {
      if (err.code() == "SyntaxError") throw;
      throw Error(err.code(),
                  d.pos.to_string() + (err.path().empty() ? "" : " " + err.path()),
                  err.message());
    }
  }
  return env;
}

inline CheckedFile check_source(std::string_view text) {
  return check_declarations(parse(text));
}

// ---------------------------------------------------------------------------
// JSON codecs.

inline json tree_to_json(const Tree& t) {
  json kids = json::array();
  for (const Tree& c : t.children()) kids.push_back(tree_to_json(c));
  return json{{"children", kids}};
}

inline Tree tree_from_json(const json& j) {
  require(j.is_object() && j.contains("children") && j["children"].is_array(), "SyntaxError", "",
          "tree JSON must be {\"children\": [...]}");
  std::vector<Tree> kids;
  for (const json& c : j["children"]) kids.push_back(tree_from_json(c));
  return Tree(std::move(kids));
}

inline json globset_to_json(const GlobSet& g) {
  json dims = json::array();
  for (size_t n = 0; n < g.levels.size(); ++n) {
    json d{{"cells", g.levels[n].cells}};
    if (n >= 1) {
      json src = json::object(), tgt = json::object();
      for (size_t i = 0; i < g.levels[n].cells.size(); ++i) {
        src[g.levels[n].cells[i]] = g.levels[n - 1].cells[static_cast<size_t>(g.levels[n].src[i])];
        tgt[g.levels[n].cells[i]] = g.levels[n - 1].cells[static_cast<size_t>(g.levels[n].tgt[i])];
      }
      d["src"] = src;
      d["tgt"] = tgt;
    }
    dims.push_back(d);
  }
  return json{{"dims", dims}};
}

inline json sphere_to_json(const Sphere& s) {
  json levels = json::array();
  for (const auto& [a, b] : s.levels())
    levels.push_back(json::array({cell_to_string(a), cell_to_string(b)}));
  return levels;
}

inline json computad_to_json(const ComputadPtr& c) {
  json dims = json::array();
  for (int k = 0; k <= c->max_dim(); ++k) {
    json gens = json::array();
    for (const auto& g : c->dims[static_cast<size_t>(k)])
      gens.push_back(json{{"name", g.name}, {"sphere", sphere_to_json(g.attach)}});
    dims.push_back(gens);
  }
  return json{{"dims", dims}};
}

inline json hom_to_json(const Hom& h) {
  json assign = json::array();
  for (const auto& lvl : h.assign()) {
    json m = json::object();
    for (const auto& [name, cell] : lvl) m[name] = cell_to_string(cell);
    assign.push_back(m);
  }
  return json{{"assign", assign}};
}

inline Cell cell_from_string(const ComputadPtr& ctx, const std::string& term) {
  detail::Lexer lex(term);
  SExpr e = detail::parse_sexpr(lex);
  CheckedFile empty;
  return detail::elaborate_cell(empty, ctx, e);
}

inline ComputadPtr computad_from_json(const json& j) {
  require(j.is_object() && j.contains("dims") && j["dims"].is_array(), "SyntaxError", "",
          "computad JSON must be {\"dims\": [...]}");
  Computad c;
  for (const json& lvl : j["dims"]) {
    int dim = static_cast<int>(c.dims.size());
    c.dims.emplace_back();
    ComputadPtr below = level(make_computad(c), dim - 1);
    for (const json& g : lvl) {
      std::string name = g.at("name").get<std::string>();
      std::vector<std::pair<Cell, Cell>> levels;
      for (const json& pair : g.at("sphere"))
        levels.emplace_back(cell_from_string(below, pair.at(0).get<std::string>()),
                            cell_from_string(below, pair.at(1).get<std::string>()));
      c.dims[static_cast<size_t>(dim)].push_back(Computad::Gen{name, Sphere(std::move(levels))});
    }
  }
  ComputadPtr out = make_computad(std::move(c));
  check_computad(out);
  return out;
}

inline Hom hom_from_json(const ComputadPtr& source, const ComputadPtr& target, const json& j) {
  require(j.is_object() && j.contains("assign") && j["assign"].is_array(), "SyntaxError", "",
          "hom JSON must be {\"assign\": [...]}");
  std::vector<std::map<std::string, Cell>> assign;
  for (const json& lvl : j["assign"]) {
    assign.emplace_back();
    int k = static_cast<int>(assign.size()) - 1;
    ComputadPtr ctx = level(target, std::max(k, target->max_dim()));
    for (auto it = lvl.begin(); it != lvl.end(); ++it)
      assign.back().emplace(it.key(), cell_from_string(ctx, it.value().get<std::string>()));
  }
  Hom h(source, target, std::move(assign));
  check_hom(h);
  return h;
}

// ---------------------------------------------------------------------------
// Simplicial ingestion (2-truncated).

struct SimplicialSet2 {
  std::vector<std::string> vertices;                      // X0
  struct Edge {
    std::string name, d1, d0;                             // d1 = source, d0 = target
  };
  std::vector<Edge> edges;                                // X1
  std::map<std::string, std::string> degenerate_edge;     // s0 : X0 -> X1 (by name)
  struct Triangle {
    std::string name, d0, d1, d2;
    bool degenerate = false;
  };
  std::vector<Triangle> triangles;                        // X2
};

inline SimplicialSet2 simplicial_from_json(const json& j) {
  SimplicialSet2 s;
  require(j.contains("X0") && j.contains("X1"), "SyntaxError", "",
          "simplicial JSON needs X0 and X1");
  for (const json& v : j["X0"]) s.vertices.push_back(v.get<std::string>());
  for (const json& e : j["X1"])
    s.edges.push_back({e.at("name").get<std::string>(), e.at("d1").get<std::string>(),
                       e.at("d0").get<std::string>()});
  if (j.contains("s0"))
    for (auto it = j["s0"].begin(); it != j["s0"].end(); ++it)
      s.degenerate_edge.emplace(it.key(), it.value().get<std::string>());
  if (j.contains("X2"))
    for (const json& t : j["X2"]) {
      SimplicialSet2::Triangle tri{t.at("name").get<std::string>(),
                                   t.at("d0").get<std::string>(),
                                   t.at("d1").get<std::string>(),
                                   t.at("d2").get<std::string>(),
                                   t.value("degenerate", false)};
      s.triangles.push_back(std::move(tri));
    }
  return s;
}

/// Assembles the non-degenerate simplices of a 2-truncated simplicial set
/// into a 2-computad: vertices, non-degenerate edges, and a 2-generator
/// per non-degenerate triangle with boundary comp(d2, d0) => d1.
inline ComputadPtr ingest_simplicial(const SimplicialSet2& s) {
  auto edge = [&](const std::string& name) -> const SimplicialSet2::Edge* {
    for (const auto& e : s.edges)
      if (e.name == name) return &e;
    return nullptr;
  };
  // Simplicial identities on the truncation.
  std::set<std::string> degenerate;
  for (const auto& [v, e] : s.degenerate_edge) {
    const auto* de = edge(e);
    require(de != nullptr, "SimplicialIdentityViolation", e, "degeneracy hits a missing edge");
    require(de->d0 == v && de->d1 == v, "SimplicialIdentityViolation", e,
            "faces of a degenerate edge must be its vertex");
    degenerate.insert(e);
  }
  for (const auto& t : s.triangles) {
    if (t.degenerate) continue;
    const auto *e0 = edge(t.d0), *e1 = edge(t.d1), *e2 = edge(t.d2);
    require(e0 && e1 && e2, "SimplicialIdentityViolation", t.name, "missing face");
    require(e2->d1 == e1->d1, "SimplicialIdentityViolation", t.name,
            "d1 d2 = d1 d1 fails");
    require(e2->d0 == e0->d1, "SimplicialIdentityViolation", t.name,
            "d0 d2 = d1 d0 fails");
    require(e0->d0 == e1->d0, "SimplicialIdentityViolation", t.name,
            "d0 d0 = d0 d1 fails");
  }

  Computad c;
  c.dims.resize(3);
  for (const auto& v : s.vertices) c.dims[0].push_back(Computad::Gen{v, Sphere()});
  ComputadPtr c0 = make_computad(c);
  for (const auto& e : s.edges) {
    if (degenerate.count(e.name)) continue;
    require(c0->find(0, e.d1) && c0->find(0, e.d0), "SimplicialIdentityViolation", e.name,
            "edge face is not a vertex");
    c.dims[1].push_back(Computad::Gen{
        e.name, Sphere({{Cell::var(0, e.d1), Cell::var(0, e.d0)}})});
  }
  ComputadPtr c1 = make_computad(c);
  // psi: every 1-simplex gives a cell of the 1-computad.
  auto psi = [&](const std::string& name) -> Cell {
    if (degenerate.count(name)) {
      const auto* e = edge(name);
      return id_cell(level(c1, 1), Cell::var(0, e->d1));
    }
    return Cell::var(1, name);
  };
  for (const auto& t : s.triangles) {
    if (t.degenerate) continue;
    Cell lower = binary_comp(level(c1, 1), psi(t.d2), psi(t.d0), 0);
    Cell upper = psi(t.d1);
    Sphere bd = ty(level(c1, 1), lower);
    require(bd == ty(level(c1, 1), upper), "SimplicialIdentityViolation", t.name,
            "triangle faces are not parallel");
    c.dims[2].push_back(Computad::Gen{t.name, bd.extended(lower, upper)});
  }
  ComputadPtr out = make_computad(std::move(c));
  check_computad(out);
  return out;
}

// ---------------------------------------------------------------------------
// DOT emission.

/// Renders the 1-skeleton as a digraph; 2-cells are annotated as labeled
/// dashed edges and higher cells are listed in comments.
inline std::string emit_dot(const GlobSet& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  if (!g.levels.empty())
    for (const auto& v : g.levels[0].cells) out << "  \"" << v << "\";\n";
  if (g.levels.size() > 1) {
    const auto& l1 = g.levels[1];
    for (size_t i = 0; i < l1.cells.size(); ++i)
      out << "  \"" << g.levels[0].cells[static_cast<size_t>(l1.src[i])] << "\" -> \""
          << g.levels[0].cells[static_cast<size_t>(l1.tgt[i])] << "\" [label=\"" << l1.cells[i]
          << "\"];\n";
  }
  if (g.levels.size() > 2) {
    const auto& l2 = g.levels[2];
    for (size_t i = 0; i < l2.cells.size(); ++i)
      out << "  // 2-cell " << l2.cells[i] << ": "
          << g.levels[1].cells[static_cast<size_t>(l2.src[i])] << " => "
          << g.levels[1].cells[static_cast<size_t>(l2.tgt[i])] << "\n";
  }
  for (size_t n = 3; n < g.levels.size(); ++n)
    for (const auto& cell : g.levels[n].cells)
      out << "  // " << n << "-cell " << cell << "\n";
  out << "}\n";
  return out.str();
}

inline GlobSet computad_one_skeleton(const ComputadPtr& c) {
  GlobSet g;
  g.levels.resize(std::min<size_t>(c->dims.size(), 2));
  for (size_t k = 0; k < g.levels.size(); ++k) {
    for (const auto& gen : c->dims[k]) {
      g.levels[k].cells.push_back(gen.name);
      if (k == 1) {
        g.levels[1].src.push_back(g.find(0, gen.attach.pr1().is_var()
                                                ? gen.attach.pr1().var_name()
                                                : "?"));
        g.levels[1].tgt.push_back(g.find(0, gen.attach.pr2().is_var()
                                                ? gen.attach.pr2().var_name()
                                                : "?"));
      }
    }
  }
  return g;
}

}  // namespace wcat
