#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "wcat/glob.hpp"

using namespace wcat;

namespace {

// The globular set with two cells in every dimension up to n and all
// boundaries glued to the two cells below (pushout oracle, independent of
// the library's builder).
GlobSet sphere_oracle(int n) {
  GlobSet g;
  g.levels.resize(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    auto& l = g.levels[static_cast<size_t>(k)];
    l.cells = {"e-", "e+"};
    if (k >= 1) {
      l.src = {0, 0};
      l.tgt = {1, 1};
    }
  }
  return g;
}

}  // namespace

TEST_CASE("pos_globset basics") {
  // Globes are representable: one cell at the top, two below.
  for (int n = 0; n <= 4; ++n) {
    GlobSet g = pos_globset(globe(n));
    g.validate();
    for (int k = 0; k <= n; ++k)
      CHECK(g.levels[static_cast<size_t>(k)].cells.size() == (k == n ? 1u : 2u));
  }
  // linear(n) is a chain of n composable arrows.
  GlobSet chain = pos_globset(linear(3));
  chain.validate();
  CHECK(chain.levels[0].cells.size() == 4);
  CHECK(chain.levels[1].cells.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(chain.levels[1].src[i] == static_cast<int>(i));
    CHECK(chain.levels[1].tgt[i] == static_cast<int>(i) + 1);
  }
  // The 9-position example.
  GlobSet ex = pos_globset(Tree::parse("[[[][]][]]"));
  ex.validate();
  CHECK(ex.cell_count() == 9);
  CHECK(ex.levels[2].cells.size() == 2);
}

TEST_CASE("pos_globmap validates as a map of globular sets") {
  for (const Tree& t : enumerate_trees(5)) {
    for (int k = 0; k <= t.dim(); ++k) {
      pos_globmap(inclusion(t, k, Dir::Src)).validate();
      pos_globmap(inclusion(t, k, Dir::Tgt)).validate();
    }
  }
}

TEST_CASE("zigzag codec") {
  CHECK(zigzag_encode(Tree()) == std::vector<int>{0});
  CHECK(zigzag_encode(linear(2)) == std::vector<int>{0, 1, 0, 1, 0});
  CHECK(zigzag_encode(globe(2)) == std::vector<int>{0, 1, 2, 1, 0});

  // Round trip over every tree with at most 7 nodes.
  for (const Tree& t : enumerate_trees(7)) {
    auto zs = zigzag_encode(t);
    CHECK(zs.size() % 2 == 1);
    CHECK(zigzag_decode(zs) == t);
  }

  CHECK_THROWS_AS(zigzag_decode({}), Error);
  CHECK_THROWS_AS(zigzag_decode({1}), Error);
  CHECK_THROWS_AS(zigzag_decode({0, 1}), Error);
  CHECK_THROWS_AS(zigzag_decode({0, 0, 0}), Error);
  CHECK_THROWS_AS(zigzag_decode({0, 2, 0}), Error);
  CHECK_THROWS_AS(zigzag_decode({0, 1, 0, 1}), Error);
}

TEST_CASE("glob_colimit of a single object is the object") {
  GlobSet g = pos_globset(Tree::parse("[[[]][]]"));
  GlobDiagram d;
  d.objects.push_back(g);
  GlobColimit c = glob_colimit(d);
  CHECK(c.object == g);
  for (int n = 0; n <= g.top_dim(); ++n)
    for (size_t i = 0; i < g.levels[static_cast<size_t>(n)].cells.size(); ++i)
      CHECK(c.cocone[0][static_cast<size_t>(n)][i] == static_cast<int>(i));
}

TEST_CASE("glob_colimit pushout of two disks along a sphere") {
  // disk(n) <- sphere(n-1) -> disk(n) glues to the n-sphere shape:
  // two cells per dimension below n and two parallel cells at n.
  for (int n = 1; n <= 3; ++n) {
    GlobSet disk = pos_globset(globe(n));
    GlobSet sph = sphere_oracle(n - 1);
    GlobDiagram d;
    d.objects = {sph, disk, disk};
    GlobDiagram::Arrow a1, a2;
    a1.from = 0;
    a1.to = 1;
    a2.from = 0;
    a2.to = 2;
    // e-/e+ at dimension k go to the two boundary k-positions of the globe.
    std::vector<std::vector<int>> incl(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      const auto& cells = disk.levels[static_cast<size_t>(k)].cells;
      int src_idx = -1, tgt_idx = -1;
      for (size_t i = 0; i < cells.size(); ++i) {
        Pos p = Pos::parse(cells[i]);
        if (boundary_positions(globe(n), k, Dir::Src).count(p)) src_idx = static_cast<int>(i);
        if (boundary_positions(globe(n), k, Dir::Tgt).count(p)) tgt_idx = static_cast<int>(i);
      }
      incl[static_cast<size_t>(k)] = {src_idx, tgt_idx};
    }
    a1.map = incl;
    a2.map = incl;
    d.arrows = {a1, a2};
    GlobColimit c = glob_colimit(d);
    for (int k = 0; k < n; ++k)
      CHECK(c.object.levels[static_cast<size_t>(k)].cells.size() == 2);
    CHECK(c.object.levels[static_cast<size_t>(n)].cells.size() == 2);
    // The two top cells are parallel.
    CHECK(c.object.levels[static_cast<size_t>(n)].src[0] ==
          c.object.levels[static_cast<size_t>(n)].src[1]);
    CHECK(c.object.levels[static_cast<size_t>(n)].tgt[0] ==
          c.object.levels[static_cast<size_t>(n)].tgt[1]);
  }
}

TEST_CASE("glob_colimit coequalizer collapses cells") {
  GlobSet two;
  two.levels.resize(1);
  two.levels[0].cells = {"x", "y"};
  GlobSet one;
  one.levels.resize(1);
  one.levels[0].cells = {"p"};
  GlobDiagram d;
  d.objects = {one, two};
  GlobDiagram::Arrow to_x{0, 1, {{0}}};
  GlobDiagram::Arrow to_y{0, 1, {{1}}};
  d.arrows = {to_x, to_y};
  GlobColimit c = glob_colimit(d);
  CHECK(c.object.levels[0].cells.size() == 1);
  CHECK(c.cocone[1][0][0] == c.cocone[1][0][1]);
}

TEST_CASE("substitute: identity labelling") {
  auto identity_label = [](const Pos& p) { return globe(p.dim()); };
  for (const Tree& t : enumerate_trees(5)) CHECK(substitute(t, identity_label) == t);
}

TEST_CASE("substitute: an arrow replaced by two composable arrows") {
  auto label = [](const Pos& p) { return p.dim() == 1 ? linear(2) : globe(0); };
  CHECK(substitute(globe(1), label) == linear(2));
}

TEST_CASE("substitute: chains concatenate") {
  auto label = [](const Pos& p) { return p.dim() == 1 ? linear(2) : globe(0); };
  CHECK(substitute(linear(2), label) == linear(4));
  CHECK(substitute(linear(3), label) == linear(6));
}

TEST_CASE("substitute: vertical pair into the 2-globe") {
  Tree vert = Tree::parse("[[[][]]]");  // two 2-cells stacked between two arrows
  auto label = [&](const Pos& p) {
    if (p.dim() == 2) return vert;
    if (p.dim() == 1) return globe(1);
    return globe(0);
  };
  CHECK(substitute(globe(2), label) == vert);
}

TEST_CASE("substitute: cocone covers the output positions") {
  auto label = [](const Pos& p) { return p.dim() == 1 ? linear(2) : globe(0); };
  SubstResult r = substitute_full(linear(2), label);
  CHECK(r.tree == linear(4));
  std::set<Pos> image;
  for (const auto& [p, cc] : r.cocone) {
    (void)p;
    for (const auto& [q, out] : cc) {
      (void)q;
      CHECK(valid_position(r.tree, out));
      image.insert(out);
    }
  }
  CHECK(image.size() == all_positions(linear(4)).size());
}

TEST_CASE("substitute commutes with boundaries") {
  std::vector<Tree> bs = {linear(2), globe(2), Tree::parse("[[[]][]]"), Tree::parse("[[][]]")};
  for (const Tree& b : bs) {
    auto label = [&](const Pos& p) {
      if (p.dim() == 1) return linear(2);
      if (p.dim() == 2) return Tree::parse("[[[]][]]");  // its 1-boundary is linear(2)
      return globe(p.dim());
    };
    Tree whole = substitute(b, label);
    for (int n = 0; n <= b.dim(); ++n) {
      PositionMap s = inclusion(b, n, Dir::Src);
      auto sub_label = [&](const Pos& p) { return label(s(p)); };
      CHECK(substitute(boundary_tree(b, n), sub_label) == boundary_tree(whole, n));
      PositionMap t = inclusion(b, n, Dir::Tgt);
      auto sub_label_t = [&](const Pos& p) { return label(t(p)); };
      CHECK(substitute(boundary_tree(b, n), sub_label_t) == boundary_tree(whole, n));
    }
  }
}

TEST_CASE("substitution position count equals the colimit cell count") {
  // Independent tally: assemble the same diagram and count the quotient's
  // cells directly, then compare with the positions of the output tree.
  auto label = [](const Pos& p) -> Tree {
    switch (p.dim()) {
      case 0: return globe(0);
      case 1: return linear(2);
      case 2: return Tree::parse("[[[]][]]");
      default: return Tree::parse("[[[[]]][]]");
    }
  };
  for (const Tree& b : enumerate_trees(4)) {
    GlobDiagram diagram;
    std::vector<Pos> ps = all_positions(b);
    std::map<Pos, int> index;
    for (size_t i = 0; i < ps.size(); ++i) {
      index.emplace(ps[i], static_cast<int>(i));
      diagram.objects.push_back(pos_globset(label(ps[i])));
    }
    for (const Pos& p : ps) {
      if (p.dim() == 0) continue;
      for (Dir dir : {Dir::Src, Dir::Tgt}) {
        GlobDiagram::Arrow a;
        a.from = index.at(pos_boundary(b, p, dir));
        a.to = index.at(p);
        a.map = pos_globmap(inclusion(label(p), p.dim() - 1, dir)).map;
        diagram.arrows.push_back(std::move(a));
      }
    }
    size_t colimit_cells = glob_colimit(diagram).object.cell_count();
    Tree subst = substitute(b, label);
    CHECK(all_positions(subst).size() == colimit_cells);
  }
}

TEST_CASE("substitute rejects incompatible labellings") {
  // Label dimension above the position dimension.
  auto bad = [](const Pos& p) { return p.dim() == 1 ? globe(2) : globe(0); };
  CHECK_THROWS_AS(substitute(globe(1), bad), Error);
  // 0-label not the boundary of the adjacent 1-label.
  auto bad2 = [](const Pos& p) {
    return p.dim() == 1 ? linear(2) : (p == Pos::here() ? linear(2) : globe(0));
  };
  CHECK_THROWS_AS(substitute(linear(2), bad2), Error);
}

TEST_CASE("reconstruction failure reports NotAPastingDiagram") {
  // A cospan of 1-cells (two arrows into one vertex) is not a pasting shape.
  GlobSet g;
  g.levels.resize(2);
  g.levels[0].cells = {"x", "y", "z"};
  g.levels[1].cells = {"f", "g"};
  g.levels[1].src = {0, 2};
  g.levels[1].tgt = {1, 1};
  g.validate();
  CHECK_THROWS_AS(static_cast<void>(wcat::detail::reconstruct_tree(g)), Error);
  // A loop.
  GlobSet loop;
  loop.levels.resize(2);
  loop.levels[0].cells = {"x"};
  loop.levels[1].cells = {"f"};
  loop.levels[1].src = {0};
  loop.levels[1].tgt = {0};
  CHECK_THROWS_AS(static_cast<void>(wcat::detail::reconstruct_tree(loop)), Error);
}
