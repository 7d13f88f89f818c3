#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wcat/errors.hpp"

namespace wcat {

/// A Batanin tree: a finite rooted planar tree. `br[B1,...,Bn]` is a root
/// with the given subtrees; the empty bracket is the point. Trees of
/// dimension n parameterize n-dimensional globular pasting diagrams.
class Tree {
public:
  Tree() = default;
  explicit Tree(std::vector<Tree> children) : children_(std::move(children)) {
    for (const Tree& c : children_) {
      dim_ = std::max(dim_, c.dim_ + 1);
      nodes_ += c.nodes_;
    }
  }

  const std::vector<Tree>& children() const { return children_; }
  bool leaf() const { return children_.empty(); }

  /// Height of the tree; the dimension of the pasting diagram.
  int dim() const { return dim_; }
  int node_count() const { return nodes_; }

  bool operator==(const Tree& o) const {
    return dim_ == o.dim_ && nodes_ == o.nodes_ && children_ == o.children_;
  }
  bool operator!=(const Tree& o) const { return !(*this == o); }
  bool operator<(const Tree& o) const { return children_ < o.children_; }

  /// Nested-bracket literal, e.g. "[[[]][]]" for br[br[br[]],br[]].
  std::string to_string() const {
    std::string out = "[";
    for (const Tree& c : children_) out += c.to_string();
    out += "]";
    return out;
  }

  /// Parses a nested-bracket literal. Whitespace-insensitive.
  static Tree parse(std::string_view text) {
    size_t i = 0;
    Tree t = parse_at(text, i);
    skip_ws(text, i);
    require(i == text.size(), "SyntaxError", "", "trailing characters after tree literal");
    return t;
  }

private:
  static void skip_ws(std::string_view s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  static Tree parse_at(std::string_view s, size_t& i) {
    skip_ws(s, i);
    require(i < s.size() && s[i] == '[', "SyntaxError", "", "expected '[' in tree literal");
    ++i;
    std::vector<Tree> kids;
    while (true) {
      skip_ws(s, i);
      require(i < s.size(), "SyntaxError", "", "unterminated tree literal");
      if (s[i] == ']') {
        ++i;
        return Tree(std::move(kids));
      }
      kids.push_back(parse_at(s, i));
    }
  }

  std::vector<Tree> children_;
  int dim_ = 0;
  int nodes_ = 1;
};

/// The n-globe: D0 = br[], D(n+1) = br[Dn].
inline Tree globe(int n) {
  Tree t;
  for (int i = 0; i < n; ++i) t = Tree(std::vector<Tree>{t});
  return t;
}

/// br[D0,...,D0] with n leaves: a chain of n composable arrows.
inline Tree linear(int n) {
  return Tree(std::vector<Tree>(static_cast<size_t>(n), Tree()));
}

enum class Dir : uint8_t { Src, Tgt };

inline Dir flip(Dir d) { return d == Dir::Src ? Dir::Tgt : Dir::Src; }

/// A position of a Batanin tree: a word over {inl, inr} applied to `here`.
/// `here` is a 0-position of every tree; `inr` passes to the remaining
/// branches preserving dimension; `inl` descends into the first branch
/// raising dimension by one. Comparison is the canonical depth-first
/// order: here, then the inl-subtree, then the inr-subtree.
class Pos {
public:
  enum Step : uint8_t { Inl = 0, Inr = 1 };

  Pos() = default;
  explicit Pos(std::vector<uint8_t> steps) : steps_(std::move(steps)) {}

  static Pos here() { return Pos(); }
  const std::vector<uint8_t>& steps() const { return steps_; }
  bool is_here() const { return steps_.empty(); }

  int dim() const {
    return static_cast<int>(std::count(steps_.begin(), steps_.end(), static_cast<uint8_t>(Inl)));
  }

  Pos prepended(Step s) const {
    std::vector<uint8_t> w;
    w.reserve(steps_.size() + 1);
    w.push_back(static_cast<uint8_t>(s));
    w.insert(w.end(), steps_.begin(), steps_.end());
    return Pos(std::move(w));
  }
  Pos appended(Step s) const {
    std::vector<uint8_t> w = steps_;
    w.push_back(static_cast<uint8_t>(s));
    return Pos(std::move(w));
  }
  /// Drops the leading step.
  Pos tail() const { return Pos(std::vector<uint8_t>(steps_.begin() + 1, steps_.end())); }

  bool operator==(const Pos& o) const { return steps_ == o.steps_; }
  bool operator!=(const Pos& o) const { return steps_ != o.steps_; }
  bool operator<(const Pos& o) const {
    return std::lexicographical_compare(steps_.begin(), steps_.end(), o.steps_.begin(),
                                        o.steps_.end());
  }

  /// Constructor-word form, e.g. "inl(inr(here))".
  std::string to_string() const {
    std::string out;
    for (uint8_t s : steps_) out += (s == Inl) ? "inl(" : "inr(";
    out += "here";
    out.append(steps_.size(), ')');
    return out;
  }

  static Pos parse(std::string_view text) {
    std::vector<uint8_t> steps;
    size_t i = 0;
    auto ws = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    ws();
    size_t open = 0;
    while (true) {
      if (text.compare(i, 4, "inl(") == 0) {
        steps.push_back(Inl);
        i += 4;
        ++open;
      } else if (text.compare(i, 4, "inr(") == 0) {
        steps.push_back(Inr);
        i += 4;
        ++open;
      } else {
        break;
      }
      ws();
    }
    require(text.compare(i, 4, "here") == 0, "SyntaxError", "",
            "expected 'here' in position word");
    i += 4;
    for (size_t k = 0; k < open; ++k) {
      ws();
      require(i < text.size() && text[i] == ')', "SyntaxError", "",
              "expected ')' in position word");
      ++i;
    }
    ws();
    require(i == text.size(), "SyntaxError", "", "trailing characters after position word");
    return Pos(std::move(steps));
  }

private:
  std::vector<uint8_t> steps_;
};

inline Pos inl(const Pos& p) { return p.prepended(Pos::Inl); }
inline Pos inr(const Pos& p) { return p.prepended(Pos::Inr); }

/// The tree obtained from `t` by dropping the first branch; positions of
/// the form inr(p) live in it.
inline Tree rest_tree(const Tree& t) {
  return Tree(std::vector<Tree>(t.children().begin() + 1, t.children().end()));
}

inline bool valid_position(const Tree& t, const Pos& p) {
  const Tree* cur = &t;
  std::vector<Tree> scratch;
  size_t i = 0;
  const auto& steps = p.steps();
  while (i < steps.size()) {
    if (cur->leaf()) return false;
    if (steps[i] == Pos::Inl) {
      cur = &cur->children().front();
    } else {
      scratch.push_back(rest_tree(*cur));
      cur = &scratch.back();
    }
    ++i;
  }
  return true;
}

namespace detail {
inline void collect_positions(const Tree& t, std::vector<uint8_t>& prefix,
                              std::vector<Pos>& out) {
  out.push_back(Pos(prefix));
  if (t.leaf()) return;
  prefix.push_back(Pos::Inl);
  collect_positions(t.children().front(), prefix, out);
  prefix.back() = Pos::Inr;
  collect_positions(rest_tree(t), prefix, out);
  prefix.pop_back();
}
}  // namespace detail

/// All positions of `t` in canonical depth-first order.
inline std::vector<Pos> all_positions(const Tree& t) {
  std::vector<Pos> out;
  std::vector<uint8_t> prefix;
  detail::collect_positions(t, prefix, out);
  return out;
}

/// The n-dimensional positions of `t`, in canonical order.
inline std::vector<Pos> positions(const Tree& t, int n) {
  std::vector<Pos> out;
  for (Pos& p : all_positions(t))
    if (p.dim() == n) out.push_back(std::move(p));
  return out;
}

namespace detail {
inline std::vector<uint8_t> pos_boundary_word(const std::vector<uint8_t>& w, size_t i, Dir dir) {
  // srcpos(inr q) = inr(srcpos q); srcpos(inl p) = here | inl(srcpos p)
  // tgtpos(inr q) = inr(tgtpos q); tgtpos(inl p) = inr(here) | inl(tgtpos p)
  if (w[i] == Pos::Inr) {
    auto rest = pos_boundary_word(w, i + 1, dir);
    rest.insert(rest.begin(), Pos::Inr);
    return rest;
  }
  int rest_dim = static_cast<int>(
      std::count(w.begin() + static_cast<long>(i) + 1, w.end(), static_cast<uint8_t>(Pos::Inl)));
  if (rest_dim == 0)
    return dir == Dir::Src ? std::vector<uint8_t>{}
                           : std::vector<uint8_t>{static_cast<uint8_t>(Pos::Inr)};
  auto rest = pos_boundary_word(w, i + 1, dir);
  rest.insert(rest.begin(), Pos::Inl);
  return rest;
}
}  // namespace detail

/// Source or target of a positive-dimensional position.
inline Pos pos_boundary(const Tree& t, const Pos& p, Dir dir) {
  require(valid_position(t, p), "IllFormedCell", p.to_string(), "position not valid in tree");
  require(p.dim() >= 1, "ZeroDimensional", p.to_string(),
          "0-dimensional positions have no boundary");
  return Pos(detail::pos_boundary_word(p.steps(), 0, dir));
}

inline Pos pos_src(const Tree& t, const Pos& p) { return pos_boundary(t, p, Dir::Src); }
inline Pos pos_tgt(const Tree& t, const Pos& p) { return pos_boundary(t, p, Dir::Tgt); }

/// The k-boundary tree: remove all nodes of height more than k.
inline Tree boundary_tree(const Tree& t, int k) {
  if (k == 0) return Tree();
  std::vector<Tree> kids;
  kids.reserve(t.children().size());
  for (const Tree& c : t.children()) kids.push_back(boundary_tree(c, k - 1));
  return Tree(std::move(kids));
}

/// A dimension-preserving map of positions between two trees that commutes
/// with position sources and targets.
struct PositionMap {
  Tree source;
  Tree target;
  std::map<Pos, Pos> map;

  const Pos& operator()(const Pos& p) const {
    auto it = map.find(p);
    require(it != map.end(), "IllFormedCell", p.to_string(), "position not in map domain");
    return it->second;
  }
};

namespace detail {
inline Pos inclusion_pos(const Tree& t, int k, Dir dir, const Pos& p) {
  // s_k, t_k on br[] are the identity.
  if (t.leaf()) return p;
  if (k == 0) {
    // p = here. s_0(here) = here; t_0(here) = inr(t_0^{rest}(here)).
    if (dir == Dir::Src) return Pos::here();
    return inr(inclusion_pos(rest_tree(t), 0, dir, Pos::here()));
  }
  if (p.is_here()) return p;
  if (p.steps().front() == Pos::Inl)
    return inl(inclusion_pos(t.children().front(), k - 1, dir, p.tail()));
  return inr(inclusion_pos(rest_tree(t), k, dir, p.tail()));
}
}  // namespace detail

/// The source or target inclusion s_k / t_k : Pos(boundary_tree(t,k)) -> Pos(t).
inline PositionMap inclusion(const Tree& t, int k, Dir dir) {
  PositionMap pm;
  pm.source = boundary_tree(t, k);
  pm.target = t;
  for (const Pos& p : all_positions(pm.source))
    pm.map.emplace(p, detail::inclusion_pos(t, k, dir, p));
  return pm;
}

/// Source/target boundary positions of dimension n, computed by the
/// inductive characterization: `here` is source boundary; inl preserves
/// both kinds; inr preserves target boundary, and preserves source
/// boundary only in positive dimension.
inline std::set<Pos> boundary_positions_all(const Tree& t, Dir dir) {
  std::set<Pos> out;
  if (t.leaf()) {
    out.insert(Pos::here());
    return out;
  }
  if (dir == Dir::Src) out.insert(Pos::here());
  for (const Pos& p : boundary_positions_all(t.children().front(), dir)) out.insert(inl(p));
  for (const Pos& q : boundary_positions_all(rest_tree(t), dir)) {
    if (dir == Dir::Tgt || q.dim() >= 1) out.insert(inr(q));
  }
  return out;
}

inline std::set<Pos> boundary_positions(const Tree& t, int n, Dir dir) {
  std::set<Pos> out;
  for (const Pos& p : boundary_positions_all(t, dir))
    if (p.dim() == n) out.insert(p);
  return out;
}

/// All Batanin trees with at most `max_nodes` nodes, duplicate-free,
/// ordered by node count. Exhaustive-enumeration oracle for tests.
inline std::vector<Tree> enumerate_trees(int max_nodes) {
  // by_nodes[n] = trees with exactly n nodes (n >= 1).
  std::vector<std::vector<Tree>> by_nodes(static_cast<size_t>(max_nodes) + 1);
  if (max_nodes >= 1) by_nodes[1].push_back(Tree());
  for (int n = 2; n <= max_nodes; ++n) {
    // Split: first child with f nodes, remaining children forming a tree
    // with n - f nodes (the rest as a root with those children).
    for (int f = 1; f <= n - 1; ++f) {
      for (const Tree& first : by_nodes[static_cast<size_t>(f)]) {
        for (const Tree& rest : by_nodes[static_cast<size_t>(n - f)]) {
          std::vector<Tree> kids;
          kids.push_back(first);
          for (const Tree& c : rest.children()) kids.push_back(c);
          by_nodes[static_cast<size_t>(n)].push_back(Tree(std::move(kids)));
        }
      }
    }
  }
  std::vector<Tree> out;
  for (auto& bucket : by_nodes)
    for (Tree& t : bucket) out.push_back(std::move(t));
  return out;
}

}  // namespace wcat
