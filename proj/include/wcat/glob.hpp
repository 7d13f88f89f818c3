#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "wcat/errors.hpp"
#include "wcat/tree.hpp"

namespace wcat {

/// A finite globular set: named cells per dimension with source and
/// target maps one dimension down, satisfying the globularity equations.
struct GlobSet {
  struct Level {
    std::vector<std::string> cells;
    // For levels above 0: parallel arrays of indices into the level below.
    std::vector<int> src, tgt;
  };
  std::vector<Level> levels;

  int top_dim() const { return static_cast<int>(levels.size()) - 1; }

  size_t cell_count() const {
    size_t n = 0;
    for (const Level& l : levels) n += l.cells.size();
    return n;
  }

  int find(int dim, const std::string& name) const {
    if (dim < 0 || dim > top_dim()) return -1;
    const auto& cs = levels[static_cast<size_t>(dim)].cells;
    for (size_t i = 0; i < cs.size(); ++i)
      if (cs[i] == name) return static_cast<int>(i);
    return -1;
  }

  void validate() const {
    for (size_t n = 0; n < levels.size(); ++n) {
      const Level& l = levels[n];
      if (n == 0) {
        require(l.src.empty() && l.tgt.empty(), "GlobularityViolation", "",
                "0-cells have no boundary maps");
        continue;
      }
      require(l.src.size() == l.cells.size() && l.tgt.size() == l.cells.size(),
              "GlobularityViolation", "", "boundary maps must be total");
      const Level& below = levels[n - 1];
      for (size_t i = 0; i < l.cells.size(); ++i) {
        bool ok = l.src[i] >= 0 && l.src[i] < static_cast<int>(below.cells.size()) &&
                  l.tgt[i] >= 0 && l.tgt[i] < static_cast<int>(below.cells.size());
        require(ok, "GlobularityViolation", l.cells[i], "boundary index out of range");
        if (n >= 2) {
          require(below.src[static_cast<size_t>(l.src[i])] ==
                          below.src[static_cast<size_t>(l.tgt[i])] &&
                      below.tgt[static_cast<size_t>(l.src[i])] ==
                          below.tgt[static_cast<size_t>(l.tgt[i])],
                  "GlobularityViolation", l.cells[i], "globularity equations fail");
        }
      }
    }
  }

  bool operator==(const GlobSet& o) const {
    if (levels.size() != o.levels.size()) return false;
    for (size_t n = 0; n < levels.size(); ++n) {
      if (levels[n].cells != o.levels[n].cells || levels[n].src != o.levels[n].src ||
          levels[n].tgt != o.levels[n].tgt)
        return false;
    }
    return true;
  }
};

/// A morphism of globular sets: per-dimension cell maps commuting with
/// source and target.
struct GlobMap {
  GlobSet source, target;
  std::vector<std::vector<int>> map;  // map[dim][cell index in source] = cell index in target

  int apply(int dim, int idx) const { return map[static_cast<size_t>(dim)][static_cast<size_t>(idx)]; }

  void validate() const {
    require(map.size() >= source.levels.size(), "GlobularityViolation", "",
            "map must cover every source dimension");
    for (size_t n = 0; n < source.levels.size(); ++n) {
      const auto& l = source.levels[n];
      require(map[n].size() == l.cells.size(), "GlobularityViolation", "", "map must be total");
      for (size_t i = 0; i < l.cells.size(); ++i) {
        int im = map[n][i];
        require(n <= static_cast<size_t>(target.top_dim()) && im >= 0 &&
                    im < static_cast<int>(target.levels[n].cells.size()),
                "GlobularityViolation", l.cells[i], "image out of range");
        if (n >= 1) {
          require(target.levels[n].src[static_cast<size_t>(im)] ==
                          map[n - 1][static_cast<size_t>(l.src[i])] &&
                      target.levels[n].tgt[static_cast<size_t>(im)] ==
                          map[n - 1][static_cast<size_t>(l.tgt[i])],
                  "GlobularityViolation", l.cells[i], "map does not commute with boundaries");
        }
      }
    }
  }
};

/// The globular set of positions of a Batanin tree, with cells named by
/// their constructor words in canonical order.
inline GlobSet pos_globset(const Tree& t) {
  GlobSet g;
  g.levels.resize(static_cast<size_t>(t.dim()) + 1);
  std::vector<std::map<Pos, int>> index(g.levels.size());
  for (int n = 0; n <= t.dim(); ++n) {
    for (const Pos& p : positions(t, n)) {
      index[static_cast<size_t>(n)].emplace(p, static_cast<int>(g.levels[static_cast<size_t>(n)].cells.size()));
      g.levels[static_cast<size_t>(n)].cells.push_back(p.to_string());
      if (n >= 1) {
        g.levels[static_cast<size_t>(n)].src.push_back(
            index[static_cast<size_t>(n - 1)].at(pos_src(t, p)));
        g.levels[static_cast<size_t>(n)].tgt.push_back(
            index[static_cast<size_t>(n - 1)].at(pos_tgt(t, p)));
      }
    }
  }
  return g;
}

/// The globular set with two parallel cells in every dimension up to n:
/// what the n-sphere computad is free on. n = -1 gives the empty set.
inline GlobSet sphere_globset(int n) {
  GlobSet g;
  g.levels.resize(static_cast<size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    auto& l = g.levels[static_cast<size_t>(k)];
    l.cells = {"e" + std::to_string(k) + "-", "e" + std::to_string(k) + "+"};
    if (k >= 1) {
      l.src = {0, 0};
      l.tgt = {1, 1};
    }
  }
  return g;
}

/// The position map of a tree inclusion as a map of globular sets.
inline GlobMap pos_globmap(const PositionMap& pm) {
  GlobMap f;
  f.source = pos_globset(pm.source);
  f.target = pos_globset(pm.target);
  f.map.resize(f.source.levels.size());
  for (const auto& [p, q] : pm.map) {
    size_t n = static_cast<size_t>(p.dim());
    if (f.map[n].size() < f.source.levels[n].cells.size())
      f.map[n].resize(f.source.levels[n].cells.size(), -1);
    f.map[n][static_cast<size_t>(f.source.find(p.dim(), p.to_string()))] =
        f.target.find(p.dim(), q.to_string());
  }
  return f;
}

// ---------------------------------------------------------------------------
// Zigzag codec.
//
// The sequence of br[B1,...,Bn] starts at 0 and appends, for each child,
// its sequence with entries raised by 1 followed by a 0. This records the
// node heights met when walking the outline of the tree.

inline void zigzag_encode_into(const Tree& t, int lift, std::vector<int>& out) {
  out.push_back(lift);
  for (const Tree& c : t.children()) {
    zigzag_encode_into(c, lift + 1, out);
    out.push_back(lift);
  }
}

inline std::vector<int> zigzag_encode(const Tree& t) {
  std::vector<int> out;
  zigzag_encode_into(t, 0, out);
  return out;
}

namespace detail {
inline Tree zigzag_decode_range(const std::vector<int>& zs, size_t begin, size_t end, int base) {
  require(end > begin && zs[begin] == base && zs[end - 1] == base, "MalformedZigzag", "",
          "sequence must start and end at its base level");
  std::vector<Tree> kids;
  size_t i = begin + 1;
  size_t run_start = i;
  while (i < end) {
    require(zs[i] >= base, "MalformedZigzag", "", "entry below base level");
    if (zs[i] == base) {
      require(i > run_start, "MalformedZigzag", "", "adjacent base-level entries");
      kids.push_back(zigzag_decode_range(zs, run_start, i, base + 1));
      run_start = i + 1;
    }
    ++i;
  }
  require(run_start == end, "MalformedZigzag", "", "sequence does not end at base level");
  return Tree(std::move(kids));
}
}  // namespace detail

inline Tree zigzag_decode(const std::vector<int>& zs) {
  require(!zs.empty() && zs.size() % 2 == 1, "MalformedZigzag", "",
          "zigzag sequences have odd length");
  Tree t = detail::zigzag_decode_range(zs, 0, zs.size(), 0);
  return t;
}

// ---------------------------------------------------------------------------
// Finite colimits of globular sets.

struct GlobDiagram {
  std::vector<GlobSet> objects;
  struct Arrow {
    int from = 0, to = 0;
    std::vector<std::vector<int>> map;  // per-dim
  };
  std::vector<Arrow> arrows;
};

struct GlobColimit {
  GlobSet object;
  // cocone[obj][dim][cell index] = cell index in object.levels[dim]
  std::vector<std::vector<std::vector<int>>> cocone;
};

namespace detail {
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) {
    while (parent[static_cast<size_t>(i)] != i) {
      parent[static_cast<size_t>(i)] = parent[static_cast<size_t>(parent[static_cast<size_t>(i)])];
      i = parent[static_cast<size_t>(i)];
    }
    return i;
  }
  // Keeps the smaller index as representative, so classes are canonically
  // named by the least injected cell.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[static_cast<size_t>(b)] = a;
  }
};
}  // namespace detail

/// Dimension-wise quotient of the disjoint union of the diagram's objects,
/// with cocone maps. Representatives are the least injected cells in
/// (object, cell) order, so the output is deterministic.
inline GlobColimit glob_colimit(const GlobDiagram& diagram) {
  for (const GlobSet& x : diagram.objects) x.validate();
  int top = -1;
  for (const GlobSet& x : diagram.objects) top = std::max(top, x.top_dim());

  GlobColimit result;
  result.cocone.resize(diagram.objects.size());
  for (size_t o = 0; o < diagram.objects.size(); ++o)
    result.cocone[o].resize(diagram.objects[o].levels.size());
  result.object.levels.resize(static_cast<size_t>(top) + 1);

  for (int n = 0; n <= top; ++n) {
    // Flatten all n-cells across objects.
    std::vector<size_t> offset(diagram.objects.size() + 1, 0);
    for (size_t o = 0; o < diagram.objects.size(); ++o) {
      size_t count = n <= diagram.objects[o].top_dim()
                         ? diagram.objects[o].levels[static_cast<size_t>(n)].cells.size()
                         : 0;
      offset[o + 1] = offset[o] + count;
    }
    detail::UnionFind uf(offset.back());
    for (const auto& a : diagram.arrows) {
      const GlobSet& src = diagram.objects[static_cast<size_t>(a.from)];
      if (n > src.top_dim()) continue;
      require(static_cast<size_t>(n) < a.map.size() &&
                  a.map[static_cast<size_t>(n)].size() ==
                      src.levels[static_cast<size_t>(n)].cells.size(),
              "GlobularityViolation", "", "diagram arrow map must be total");
      for (size_t i = 0; i < src.levels[static_cast<size_t>(n)].cells.size(); ++i) {
        int j = a.map[static_cast<size_t>(n)][i];
        uf.unite(static_cast<int>(offset[static_cast<size_t>(a.from)] + i),
                 static_cast<int>(offset[static_cast<size_t>(a.to)]) + j);
      }
    }
    // Classes in representative order.
    std::map<int, int> class_index;
    auto& level = result.object.levels[static_cast<size_t>(n)];
    std::set<std::string> used_names;
    for (size_t flat = 0; flat < offset.back(); ++flat) {
      int rep = uf.find(static_cast<int>(flat));
      if (class_index.count(rep)) continue;
      size_t o = 0;
      while (offset[o + 1] <= static_cast<size_t>(rep)) ++o;
      size_t idx = static_cast<size_t>(rep) - offset[o];
      std::string name = diagram.objects[o].levels[static_cast<size_t>(n)].cells[idx];
      while (!used_names.insert(name).second) name += "'";
      class_index.emplace(rep, static_cast<int>(level.cells.size()));
      level.cells.push_back(name);
      if (n >= 1) {
        const GlobSet& obj = diagram.objects[o];
        int s = obj.levels[static_cast<size_t>(n)].src[idx];
        int t = obj.levels[static_cast<size_t>(n)].tgt[idx];
        level.src.push_back(result.cocone[o][static_cast<size_t>(n - 1)][static_cast<size_t>(s)]);
        level.tgt.push_back(result.cocone[o][static_cast<size_t>(n - 1)][static_cast<size_t>(t)]);
      }
    }
    for (size_t o = 0; o < diagram.objects.size(); ++o) {
      if (n > diagram.objects[o].top_dim()) continue;
      auto& cc = result.cocone[o][static_cast<size_t>(n)];
      cc.resize(diagram.objects[o].levels[static_cast<size_t>(n)].cells.size());
      for (size_t i = 0; i < cc.size(); ++i)
        cc[i] = class_index.at(uf.find(static_cast<int>(offset[o] + i)));
    }
  }
  result.object.validate();
  return result;
}

// ---------------------------------------------------------------------------
// Tree substitution (globular sums of pasting diagrams).

namespace detail {

struct ReconstructResult {
  Tree tree;
  // For each (dim, cell index) of the input globular set, the position of
  // the reconstructed tree it corresponds to.
  std::vector<std::vector<Pos>> posmap;
};

/// Reads a pasting-shaped globular set back as a Batanin tree: orders the
/// 0-cells by following 1-cells from the unique source-boundary 0-cell,
/// then recurses into the fiber of cells over each consecutive pair.
inline ReconstructResult reconstruct_tree(const GlobSet& x) {
  ReconstructResult out;
  out.posmap.resize(x.levels.size());
  for (size_t n = 0; n < x.levels.size(); ++n)
    out.posmap[n].resize(x.levels[n].cells.size());

  require(!x.levels.empty() && !x.levels[0].cells.empty(), "NotAPastingDiagram", "",
          "a pasting diagram has at least one 0-cell");

  size_t n0 = x.levels[0].cells.size();
  size_t n1 = x.levels.size() > 1 ? x.levels[1].cells.size() : 0;

  if (n1 == 0) {
    bool higher = false;
    for (size_t n = 2; n < x.levels.size(); ++n) higher |= !x.levels[n].cells.empty();
    require(n0 == 1 && !higher, "NotAPastingDiagram", "",
            "no 1-cells but more than a point remains");
    out.tree = Tree();
    out.posmap[0][0] = Pos::here();
    return out;
  }

  // Order the 0-cells into a chain and group the 1-cells into fibers.
  std::vector<bool> is_target(n0, false);
  for (size_t i = 0; i < n1; ++i) is_target[static_cast<size_t>(x.levels[1].tgt[i])] = true;
  int cur = -1;
  for (size_t v = 0; v < n0; ++v) {
    if (!is_target[v]) {
      require(cur < 0, "NotAPastingDiagram", "", "several source-boundary 0-cells");
      cur = static_cast<int>(v);
    }
  }
  require(cur >= 0, "NotAPastingDiagram", "", "no source-boundary 0-cell (cycle)");

  std::vector<int> chain{cur};
  std::vector<std::vector<int>> fibers;  // 1-cell indices per consecutive pair
  size_t used_edges = 0;
  while (used_edges < n1) {
    std::vector<int> fiber;
    int next = -1;
    for (size_t i = 0; i < n1; ++i) {
      if (x.levels[1].src[i] != cur) continue;
      int t = x.levels[1].tgt[i];
      require(next < 0 || next == t, "NotAPastingDiagram", "",
              "1-cells out of a 0-cell with different targets");
      next = t;
      fiber.push_back(static_cast<int>(i));
    }
    require(next >= 0, "NotAPastingDiagram", "", "chain of 0-cells breaks off");
    require(next != cur, "NotAPastingDiagram", "", "1-cell loop");
    used_edges += fiber.size();
    fibers.push_back(std::move(fiber));
    chain.push_back(next);
    cur = next;
  }
  // The final 0-cell must have no outgoing 1-cells, and the chain must
  // visit every 0-cell exactly once.
  for (size_t i = 0; i < n1; ++i)
    require(x.levels[1].src[i] != cur, "NotAPastingDiagram", "", "outgoing 1-cell after chain end");
  require(chain.size() == n0, "NotAPastingDiagram", "", "0-cells not covered by the chain");
  {
    std::set<int> seen(chain.begin(), chain.end());
    require(seen.size() == n0, "NotAPastingDiagram", "", "0-cell chain revisits a cell");
  }

  // Assign each higher cell to the fiber of its iterated 1-source.
  std::vector<int> fiber_of_edge(n1, -1);
  for (size_t f = 0; f < fibers.size(); ++f)
    for (int e : fibers[f]) fiber_of_edge[static_cast<size_t>(e)] = static_cast<int>(f);

  // fiber_sets[f] = per shifted dimension, the indices of x-cells in it.
  std::vector<GlobSet> fiber_sets(fibers.size());
  std::vector<std::vector<std::vector<int>>> members(fibers.size());
  std::vector<std::vector<int>> local_index(x.levels.size());  // per dim, per cell
  std::vector<std::vector<int>> cell_fiber(x.levels.size());
  for (size_t n = 1; n < x.levels.size(); ++n) {
    local_index[n].assign(x.levels[n].cells.size(), -1);
    cell_fiber[n].assign(x.levels[n].cells.size(), -1);
  }
  for (size_t f = 0; f < fibers.size(); ++f) {
    fiber_sets[f].levels.resize(x.levels.size() - 1);
    members[f].resize(x.levels.size() - 1);
  }
  for (size_t n = 1; n < x.levels.size(); ++n) {
    for (size_t i = 0; i < x.levels[n].cells.size(); ++i) {
      int f;
      if (n == 1) {
        f = fiber_of_edge[i];
      } else {
        f = cell_fiber[n - 1][static_cast<size_t>(x.levels[n].src[i])];
        require(f == cell_fiber[n - 1][static_cast<size_t>(x.levels[n].tgt[i])],
                "NotAPastingDiagram", x.levels[n].cells[i],
                "cell straddles two fibers");
      }
      require(f >= 0, "NotAPastingDiagram", x.levels[n].cells[i], "cell not over any fiber");
      cell_fiber[n][i] = f;
      auto& lvl = fiber_sets[static_cast<size_t>(f)].levels[n - 1];
      local_index[n][i] = static_cast<int>(lvl.cells.size());
      lvl.cells.push_back(x.levels[n].cells[i]);
      members[static_cast<size_t>(f)][n - 1].push_back(static_cast<int>(i));
      if (n >= 2) {
        lvl.src.push_back(local_index[n - 1][static_cast<size_t>(x.levels[n].src[i])]);
        lvl.tgt.push_back(local_index[n - 1][static_cast<size_t>(x.levels[n].tgt[i])]);
      }
    }
  }

  std::vector<Tree> kids;
  kids.reserve(fibers.size());
  for (size_t f = 0; f < fibers.size(); ++f) {
    while (!fiber_sets[f].levels.empty() && fiber_sets[f].levels.back().cells.empty())
      fiber_sets[f].levels.pop_back();
    ReconstructResult sub = reconstruct_tree(fiber_sets[f]);
    // Positions of the f-th child embed via f inr steps then one inl.
    Pos wrap = Pos::here();
    for (size_t n = 0; n < sub.posmap.size(); ++n) {
      for (size_t i = 0; i < sub.posmap[n].size(); ++i) {
        Pos p = inl(sub.posmap[n][i]);
        for (size_t k = 0; k < f; ++k) p = inr(p);
        out.posmap[n + 1][static_cast<size_t>(members[f][n][i])] = p;
      }
    }
    kids.push_back(std::move(sub.tree));
  }
  out.tree = Tree(std::move(kids));
  for (size_t v = 0; v < n0; ++v) {
    Pos p = Pos::here();
    // chain position v sits after v inr steps.
    size_t at = 0;
    while (chain[at] != static_cast<int>(v)) ++at;
    for (size_t k = 0; k < at; ++k) p = inr(p);
    out.posmap[0][v] = p;
  }
  return out;
}

}  // namespace detail

struct SubstResult {
  Tree tree;
  // cocone[p] maps positions of label(p) to positions of the result.
  std::map<Pos, std::map<Pos, Pos>> cocone;
};

/// Substitutes a tree for every position of `b` and glues the resulting
/// pasting diagrams. `label(p)` must have dimension at most dim(p) and
/// agree with the boundaries of the labels of neighbouring positions.
inline SubstResult substitute_full(const Tree& b,
                                   const std::function<Tree(const Pos&)>& label) {
  std::vector<Pos> ps = all_positions(b);
  std::map<Pos, int> index;
  for (size_t i = 0; i < ps.size(); ++i) index.emplace(ps[i], static_cast<int>(i));

  GlobDiagram diagram;
  diagram.objects.reserve(ps.size());
  for (const Pos& p : ps) {
    Tree lp = label(p);
    require(lp.dim() <= p.dim(), "IncompatibleLabeling", p.to_string(),
            "label dimension exceeds position dimension");
    diagram.objects.push_back(pos_globset(lp));
  }
  for (const Pos& p : ps) {
    if (p.dim() == 0) continue;
    Tree lp = label(p);
    Tree expected = boundary_tree(lp, p.dim() - 1);
    require(label(pos_src(b, p)) == expected, "IncompatibleLabeling", p.to_string(),
            "source label is not the boundary of the label");
    require(label(pos_tgt(b, p)) == expected, "IncompatibleLabeling", p.to_string(),
            "target label is not the boundary of the label");
    for (Dir dir : {Dir::Src, Dir::Tgt}) {
      GlobDiagram::Arrow a;
      a.from = index.at(pos_boundary(b, p, dir));
      a.to = index.at(p);
      GlobMap gm = pos_globmap(inclusion(lp, p.dim() - 1, dir));
      a.map = gm.map;
      diagram.arrows.push_back(std::move(a));
    }
  }

  GlobColimit colim = glob_colimit(diagram);
  detail::ReconstructResult rec = detail::reconstruct_tree(colim.object);

  SubstResult out;
  out.tree = rec.tree;
  for (size_t i = 0; i < ps.size(); ++i) {
    std::map<Pos, Pos>& cc = out.cocone[ps[i]];
    const GlobSet& obj = diagram.objects[i];
    for (int n = 0; n <= obj.top_dim(); ++n) {
      for (size_t c = 0; c < obj.levels[static_cast<size_t>(n)].cells.size(); ++c) {
        int cls = colim.cocone[i][static_cast<size_t>(n)][c];
        cc.emplace(Pos::parse(obj.levels[static_cast<size_t>(n)].cells[c]),
                   rec.posmap[static_cast<size_t>(n)][static_cast<size_t>(cls)]);
      }
    }
  }
  return out;
}

inline Tree substitute(const Tree& b, const std::function<Tree(const Pos&)>& label) {
  return substitute_full(b, label).tree;
}

}  // namespace wcat
