// Acceptance suite: runs every criterion exactly and prints one line per
// criterion. All checks are symbolic; the whole suite is expected to take
// well under a minute.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "test_util.hpp"
#include "wcat/wcat.hpp"

using namespace wcat;
using namespace wcat_test;

namespace {

struct Failure {
  std::string message;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

template <typename A, typename B>
void expect_eq(const A& a, const B& b, const std::string& what) {
  if (!(a == b)) {
    std::ostringstream ss;
    ss << what;
    throw Failure{ss.str()};
  }
}

// --- shared corpora ---------------------------------------------------------

ComputadPtr corpus_computad() {
  // Four objects on a path, three edges, two parallel 2-cells on the
  // composite of the first two edges, and a 3-cell on the first of them:
  // enough room for dimension-3 cells.
  ComputadPtr c1 = Builder(1)
                       .point("x")
                       .point("y")
                       .point("z")
                       .point("w")
                       .edge("f", "x", "y")
                       .edge("g", "y", "z")
                       .edge("h", "z", "w")
                       .done();
  Cell fg = binary_comp(c1, v1("f"), v1("g"), 0);
  Builder b(3);
  b.point("x").point("y").point("z").point("w");
  b.edge("f", "x", "y").edge("g", "y", "z").edge("h", "z", "w");
  b.gen("al", fg, fg).gen("be", fg, fg);
  b.gen("th", Cell::var(2, "al"), Cell::var(2, "al"));
  return b.done();
}

/// Deterministic pools of well-formed cells per dimension, boundary-indexed.
struct Pools {
  ComputadPtr ctx;
  std::vector<std::vector<Cell>> by_dim;

  std::vector<Cell> with_boundary(const Sphere& s) const {
    std::vector<Cell> out;
    int n = s.dim() + 1;
    if (n >= static_cast<int>(by_dim.size())) return out;
    for (const Cell& c : by_dim[static_cast<size_t>(n)])
      if (ty(ctx, c) == s) out.push_back(c);
    return out;
  }
};

Pools make_pools(const ComputadPtr& c, int max_dim) {
  Pools p;
  p.ctx = level(c, max_dim);
  p.by_dim.resize(static_cast<size_t>(max_dim) + 1);
  std::set<std::string> seen;
  auto add = [&](int k, const Cell& cell) {
    if (p.by_dim[static_cast<size_t>(k)].size() >= 64) return;
    if (!seen.insert(cell_to_string(cell)).second) return;
    p.by_dim[static_cast<size_t>(k)].push_back(cell);
  };
  for (int k = 0; k <= max_dim; ++k) {
    if (k <= c->max_dim())
      for (const auto& g : c->dims[static_cast<size_t>(k)]) add(k, Cell::var(k, g.name));
    if (k >= 1) {
      // Identities of the dimension below.
      for (const Cell& cell : std::vector<Cell>(p.by_dim[static_cast<size_t>(k - 1)]))
        add(k, id_cell(p.ctx, cell));
      // Two rounds of binary composites at the top codimension.
      for (int round = 0; round < 2; ++round) {
        std::vector<Cell> snapshot = p.by_dim[static_cast<size_t>(k)];
        for (const Cell& a : snapshot)
          for (const Cell& b : snapshot)
            if (boundary_cell(p.ctx, a, k - 1, Dir::Tgt) ==
                boundary_cell(p.ctx, b, k - 1, Dir::Src))
              add(k, binary_comp(p.ctx, a, b, k - 1));
      }
    }
  }
  return p;
}

/// A random endomorphism of the corpus computad. The 0-cells move
/// monotonically along the path so that every edge image exists; higher
/// generators pick among pool cells with the required boundary, with the
/// canonical path composite or an identity as fallback.
Hom random_endo(const Pools& p) {
  const ComputadPtr& c = p.ctx;
  const std::vector<std::string> pts{"x", "y", "z", "w"};
  const std::vector<std::string> edges{"f", "g", "h"};
  std::vector<int> img(4);
  img[0] = static_cast<int>(pick(4));
  for (int i = 1; i < 4; ++i)
    img[static_cast<size_t>(i)] =
        img[static_cast<size_t>(i - 1)] +
        static_cast<int>(pick(static_cast<size_t>(4 - img[static_cast<size_t>(i - 1)])));

  auto path_cell = [&](int u, int v) -> Cell {
    if (u == v) return id_cell(c, v0(pts[static_cast<size_t>(u)]));
    std::vector<Cell> chain;
    for (int i = u; i < v; ++i) chain.push_back(v1(edges[static_cast<size_t>(i)]));
    return nary_comp(c, chain);
  };
  auto choose = [&](const Sphere& want, const Cell& fallback) -> Cell {
    std::vector<Cell> candidates = p.with_boundary(want);
    candidates.push_back(fallback);
    return candidates[pick(candidates.size())];
  };

  std::vector<std::map<std::string, Cell>> assign(static_cast<size_t>(c->max_dim()) + 1);
  for (int i = 0; i < 4; ++i)
    assign[0].emplace(pts[static_cast<size_t>(i)], v0(pts[static_cast<size_t>(img[static_cast<size_t>(i)])]));
  for (int i = 0; i < 3; ++i) {
    const Computad::Gen* g = c->find(1, edges[static_cast<size_t>(i)]);
    Sphere want = apply_hom_sphere(level_hom(Hom(c, c, assign), 0), g->attach);
    assign[1].emplace(edges[static_cast<size_t>(i)],
                      choose(want, path_cell(img[static_cast<size_t>(i)],
                                             img[static_cast<size_t>(i + 1)])));
  }
  for (const std::string& name : {std::string("al"), std::string("be")}) {
    const Computad::Gen* g = c->find(2, name);
    Sphere want = apply_hom_sphere(level_hom(Hom(c, c, assign), 1), g->attach);
    assign[2].emplace(name, choose(want, id_cell(c, want.pr1())));
  }
  {
    const Computad::Gen* g = c->find(3, "th");
    Sphere want = apply_hom_sphere(level_hom(Hom(c, c, assign), 2), g->attach);
    assign[3].emplace("th", choose(want, id_cell(c, want.pr1())));
  }
  return Hom(c, c, std::move(assign));
}

Cell random_cell(const Pools& p, int max_dim) {
  int dim = 1 + static_cast<int>(pick(static_cast<size_t>(max_dim)));
  const auto& pool = p.by_dim[static_cast<size_t>(dim)];
  return pool[pick(pool.size())];
}

// --- criteria ----------------------------------------------------------------

void criterion_1() {
  Tree b = Tree::parse("[[[][]][]]");
  expect_eq(all_positions(b).size(), size_t{9}, "the example tree has 9 positions");
  expect_eq(positions(b, 0).size(), size_t{3}, "dimension profile (3,4,2): 0-positions");
  expect_eq(positions(b, 1).size(), size_t{4}, "dimension profile (3,4,2): 1-positions");
  expect_eq(positions(b, 2).size(), size_t{2}, "dimension profile (3,4,2): 2-positions");
  for (int n = 0; n <= 10; ++n) {
    expect_eq(positions(linear(n), 0).size(), static_cast<size_t>(n + 1), "linear 0-positions");
    expect_eq(positions(linear(n), 1).size(), static_cast<size_t>(n), "linear 1-positions");
    for (int k = 0; k <= n + 1; ++k) {
      size_t want = k < n ? 2 : (k == n ? 1 : 0);
      expect_eq(positions(globe(n), k).size(), want, "globe position census");
    }
  }
}

void criterion_2() {
  for (const Tree& t : enumerate_trees(6)) {
    for (const Pos& p : all_positions(t)) {
      if (p.dim() < 2) continue;
      Pos s = pos_src(t, p), g = pos_tgt(t, p);
      expect_eq(pos_src(t, s), pos_src(t, g), "globularity src-src");
      expect_eq(pos_tgt(t, s), pos_tgt(t, g), "globularity tgt-tgt");
    }
    int d = t.dim();
    for (int k = 0; k <= d + 2; ++k) {
      PositionMap s = inclusion(t, k, Dir::Src);
      PositionMap gt = inclusion(t, k, Dir::Tgt);
      expect_eq(s.source.dim(), std::min(k, d), "item 1: boundary dimension");
      if (k >= d) {
        expect_eq(s.source, t, "item 2: boundary is the tree");
        for (const auto& [p, q] : s.map) expect_eq(p, q, "item 2: source inclusion identity");
        for (const auto& [p, q] : gt.map) expect_eq(p, q, "item 2: target inclusion identity");
      }
      std::set<Pos> at_k;
      for (const auto& [p, q] : s.map) {
        if (p.dim() < k) expect_eq(gt(p), q, "item 4: s = t below k");
        if (p.dim() == k) expect(at_k.insert(q).second, "item 4: injectivity at k");
      }
      for (int l = 0; l < k; ++l) {
        expect_eq(boundary_tree(s.source, l), boundary_tree(t, l), "item 3: boundary tower");
        PositionMap sl = inclusion(t, l, Dir::Src);
        PositionMap tl = inclusion(t, l, Dir::Tgt);
        PositionMap sls = inclusion(s.source, l, Dir::Src);
        PositionMap tls = inclusion(s.source, l, Dir::Tgt);
        for (const Pos& p : all_positions(sls.source)) {
          expect_eq(s(sls(p)), sl(p), "item 3: s o s = s");
          expect_eq(gt(sls(p)), sl(p), "item 3: t o s = s");
          expect_eq(s(tls(p)), tl(p), "item 3: s o t = t");
          expect_eq(gt(tls(p)), tl(p), "item 3: t o t = t");
        }
      }
    }
  }
}

void criterion_3() {
  for (const Tree& t : enumerate_trees(5)) {
    for (int k = 0; k <= t.dim() + 1; ++k) {
      for (Dir dir : {Dir::Src, Dir::Tgt}) {
        PositionMap pm = inclusion(t, k, dir);
        std::set<Pos> image;
        for (const auto& [p, q] : pm.map) image.insert(q);
        std::set<Pos> closure;
        for (int n = 0; n <= k; ++n)
          for (const Pos& p : boundary_positions(t, n, dir)) closure.insert(p);
        bool grew = true;
        while (grew) {
          grew = false;
          for (const Pos& p : std::set<Pos>(closure)) {
            if (p.dim() == 0) continue;
            grew |= closure.insert(pos_src(t, p)).second;
            grew |= closure.insert(pos_tgt(t, p)).second;
          }
        }
        expect_eq(image, closure, "inclusion image = globular closure of boundary positions");
      }
    }
  }
}

void criterion_4() {
  for (const Tree& t : enumerate_trees(6)) {
    int count = 0;
    for (const Pos& a : positions(t, 0))
      for (const Pos& b : positions(t, 0)) {
        Sphere s({{Cell::var(0, a.to_string()), Cell::var(0, b.to_string())}});
        if (is_full(t, s)) ++count;
      }
    expect_eq(count, 1, "exactly one full 0-sphere on " + t.to_string());
  }
}

void criterion_5() {
  for (const Tree& t : enumerate_trees(7)) {
    expect_eq(zigzag_decode(zigzag_encode(t)), t, "zigzag round trip " + t.to_string());
  }
}

void criterion_6() {
  ComputadPtr c = corpus_computad();
  Cell f = v1("f"), g = v1("g"), h = v1("h");
  Cell al = associator(c, f, g, h);
  Cell un = unitor(c, f, g, h);
  check_cell(level(c, 2), al);
  check_cell(level(c, 2), un);
  Sphere bd = ty(level(c, 2), al);
  Cell left = binary_comp(c, f, binary_comp(c, g, h, 0), 0);
  Cell right = binary_comp(c, binary_comp(c, f, g, 0), h, 0);
  expect_eq(bd.pr1(), left, "associator source is comp(f, comp(g, h))");
  expect_eq(bd.pr2(), right, "associator target is comp(comp(f, g), h)");

  // Graft the generic associator into three concrete edges.
  ComputadPtr fl3 = free_tree(linear(3), 1);
  Cell generic = associator(fl3, v1("inl(here)"), v1("inr(inl(here))"),
                            v1("inr(inr(inl(here)))"));
  std::map<std::string, Cell> d{
      {"here", v0("x")},           {"inr(here)", v0("y")},
      {"inr(inr(here))", v0("z")}, {"inr(inr(inr(here)))", v0("w")},
      {"inl(here)", f},            {"inr(inl(here))", g},
      {"inr(inr(inl(here)))", h}};
  Cell inst = graft(level(c, 2), pos_globset(linear(3)), d, generic);
  Sphere ibd = ty(level(c, 2), inst);
  expect_eq(ibd.pr1(), left, "grafted associator source");
  expect_eq(ibd.pr2(), right, "grafted associator target");
}

void criterion_7() {
  Pools p = make_pools(corpus_computad(), 3);
  for (int i = 0; i < 1000; ++i) {
    Hom sigma = random_endo(p);
    Hom tau = random_endo(p);
    Cell c = random_cell(p, 3);
    expect_eq(apply_hom(tau, apply_hom(sigma, c)), apply_hom(compose_hom(tau, sigma), c),
              "Cell(tau o sigma) = Cell(tau) o Cell(sigma)");
    expect_eq(apply_hom(identity_hom(p.ctx), c), c, "identity acts trivially");
    expect_eq(ty(p.ctx, apply_hom(sigma, c)),
              apply_hom_sphere(level_hom(sigma, c.dim() - 1), ty(p.ctx, c)),
              "ty naturality");
  }
}

void criterion_8() {
  Pools p = make_pools(corpus_computad(), 3);
  for (int i = 0; i < 1000; ++i) {
    Hom sigma = random_endo(p);
    Cell c = random_cell(p, 3);
    Sphere bd = ty(p.ctx, c);
    for (int k = 0; k <= c.dim(); ++k) {
      auto sup = support(p.ctx, c, k);
      if (c.dim() >= 1) {
        auto ssrc = support(p.ctx, bd.pr1(), k);
        auto stgt = support(p.ctx, bd.pr2(), k);
        for (const auto& v : ssrc)
          expect(sup.count(v) == 1, "fv_k(src c) inside fv_k(c)");
        for (const auto& v : stgt)
          expect(sup.count(v) == 1, "fv_k(tgt c) inside fv_k(c)");
      }
      std::set<std::string> lhs = support(p.ctx, apply_hom(sigma, c), k);
      std::set<std::string> rhs;
      for (int m = 0; m <= c.dim(); ++m)
        for (const auto& v : support(p.ctx, c, m)) {
          auto sv = support(p.ctx, sigma.at(m, v), k);
          rhs.insert(sv.begin(), sv.end());
        }
      expect_eq(lhs, rhs, "support of an image is the image of supports");
    }
  }
}

void criterion_9() {
  Pools p = make_pools(corpus_computad(), 3);
  for (int i = 0; i < 200; ++i) {
    Hom sigma = random_endo(p);
    CoverImmersion ci = cover_immersion_factor(sigma);
    expect(is_cover(ci.cover), "cover part covers");
    expect(is_immersion(ci.immersion), "immersion part embeds");
    expect_eq(compose_hom(ci.immersion, ci.cover), sigma, "cover-immersion recomposes");
    for (int k = 0; k <= p.ctx->max_dim(); ++k) {
      std::set<std::string> mid;
      for (const auto& g : ci.middle->dims[static_cast<size_t>(k)]) mid.insert(g.name);
      expect_eq(mid, hom_support(sigma, k), "middle generators equal graded support");
    }
  }
  // Also through classifying homs of composite cells.
  Hom pick = globe_hom(p.ctx, binary_comp(p.ctx, v1("f"), v1("g"), 0));
  CoverImmersion ci = cover_immersion_factor(pick);
  expect_eq(compose_hom(ci.immersion, ci.cover), pick, "comp(f,g) hom recomposes");
}

void criterion_10() {
  ComputadPtr fl2 = free_tree(linear(2), 1);
  // Generator-preserving homs factor with identity generic part.
  Hom incl = inclusion_hom(Tree::parse("[[][]]"), 1, Dir::Src, 1);
  GenericFree gid = generic_free_factor(linear(2), identity_hom(fl2));
  expect_eq(gid.gen, identity_hom(fl2), "generator-preserving gives identity generic");
  (void)incl;

  // comp(f,g) from the disk.
  Cell fg = binary_comp(fl2, v1("inl(here)"), v1("inr(inl(here))"), 0);
  Hom pick = globe_hom(fl2, fg);
  GenericFree gf = generic_free_factor(globe(1), pick);
  expect_eq(gf.tree, linear(2), "B_sigma = linear(2) for comp(f,g)");
  expect(is_cover(gf.gen), "generic part is a cover");
  expect(is_generator_preserving(gf.fr), "free part is generator-preserving");
  expect_eq(compose_hom(gf.fr, gf.gen), pick, "generic-free recomposes");

  // A corpus of homs out of free computads on trees.
  ComputadPtr c = corpus_computad();
  for (const Tree& b : enumerate_trees(4)) {
    int n = std::max(b.dim(), 1);
    Cell comp = unbiased_comp(b, n);
    Hom h = globe_hom(free_tree(b, n), comp);
    GenericFree r = generic_free_factor(globe(n), h);
    expect(r.tree.dim() <= n, "dim bound");
    expect(is_cover(r.gen), "generic part covers");
    expect_eq(compose_hom(r.fr, r.gen), h, "recomposition");
  }
  // Homs Free(linear(2)) -> Free(linear(4)) by splitting both edges.
  {
    ComputadPtr f4 = free_tree(linear(4), 1);
    Cell e1 = v1("inl(here)"), e2 = v1("inr(inl(here))");
    Cell e3 = v1("inr(inr(inl(here)))"), e4 = v1("inr(inr(inr(inl(here))))");
    std::map<std::string, Cell> d{
        {"here", v0("here")},
        {"inr(here)", v0("inr(inr(here))")},
        {"inr(inr(here))", v0("inr(inr(inr(inr(here))))")},
        {"inl(here)", binary_comp(f4, e1, e2, 0)},
        {"inr(inl(here))", binary_comp(f4, e3, e4, 0)}};
    Hom sigma = hom_from_assignment(f4, pos_globset(linear(2)), d, 1);
    GenericFree r = generic_free_factor(linear(2), sigma);
    expect_eq(r.tree, linear(4), "splitting both edges yields linear(4)");
    expect(is_cover(r.gen), "generic part covers");
    expect_eq(compose_hom(r.fr, r.gen), sigma, "recomposition");
  }
}

std::vector<Cell> boundary_covers(const Tree& db) {
  std::vector<Cell> out;
  int n = db.dim();
  out.push_back(unbiased_comp(db, n));
  // Binary bracketings over linear boundaries.
  if (db == linear(2) && n == 1) {
    ComputadPtr f = free_tree(db, 1);
    out.push_back(binary_comp(f, v1("inl(here)"), v1("inr(inl(here))"), 0));
  }
  if (db == linear(3) && n == 1) {
    ComputadPtr f = free_tree(db, 1);
    Cell e1 = v1("inl(here)"), e2 = v1("inr(inl(here))"), e3 = v1("inr(inr(inl(here)))");
    out.push_back(binary_comp(f, e1, binary_comp(f, e2, e3, 0), 0));
    out.push_back(binary_comp(f, binary_comp(f, e1, e2, 0), e3, 0));
  }
  return out;
}

void criterion_11() {
  int spheres_checked = 0;
  for (const Tree& b : enumerate_trees(5)) {
    if (b.dim() > 3) continue;
    // Full spheres from unbiased composites.
    for (int n = b.dim(); n <= b.dim() + 1; ++n) {
      Sphere a = unbiased_sphere(b, n);
      auto [ac, bc] = full_to_covers(b, a);
      expect_eq(covers_to_full(b, ac, bc), a, "covers -> full round trip (unbiased)");
      ++spheres_checked;
    }
    // Full spheres from contraction lifts of parallel boundary covers.
    for (int n = std::max(b.dim() - 1, 0); n <= b.dim(); ++n) {
      Tree db = boundary_tree(b, n);
      std::vector<Cell> covers = boundary_covers(db);
      for (const Cell& cc : covers)
        for (const Cell& dd : covers) {
          Sphere full = covers_to_full(b, cc, dd);
          expect(is_full(b, full), "contraction sphere is full");
          auto [ac2, bc2] = full_to_covers(b, full);
          expect_eq(ac2, cc, "full -> covers recovers the first cover");
          expect_eq(bc2, dd, "full -> covers recovers the second cover");
          Cell lift = contraction_lift(b, cc, dd);
          expect_eq(ty(free_tree(b, n + 1), lift), full, "lift fills the sphere");
          ++spheres_checked;
        }
    }
  }
  expect(spheres_checked > 100, "corpus is nonempty");
}

void criterion_12() {
  for (const Tree& b : enumerate_trees(5)) {
    for (int n = b.dim(); n <= b.dim() + 2; ++n) {
      Cell c = unbiased_comp(b, n);
      ComputadPtr fb = free_tree(b, n);
      check_cell(fb, c);
      expect(cell_covers(fb, c), "comp is a cover");
      if (n >= 1)
        expect_eq(ty(fb, c), unbiased_sphere(b, n - 1), "boundary is the unbiased sphere");
    }
  }
}

void criterion_13() {
  std::vector<ComputadPtr> computads{
      Builder(2).point("x").point("y").edge("f", "x", "y").edge("g", "x", "y").done(),
      Builder(2)
          .point("x")
          .point("y")
          .edge("f", "x", "y")
          .edge("g", "x", "y")
          .gen("al", v1("f"), v1("g"))
          .gen("be", v1("f"), v1("g"))
          .done(),
      // A loop: composable edges within two generators per dimension.
      Builder(2).point("a").edge("e", "a", "a").edge("k", "a", "a").done(),
      disk_computad(2)};
  for (const ComputadPtr& c : computads)
    for (const auto& lvl : c->dims)
      expect(lvl.size() <= 2, "corpus computads have at most 2 generators per dimension");

  // Candidate shapes: from generators and small composites of the corpus.
  std::vector<ShapeCell> shapes{shape_point()};
  for (const ComputadPtr& c : computads) {
    auto pool = cell_pool(c, 2);
    for (const auto& lvl : pool)
      for (const Cell& cell : lvl) shapes.push_back(shape_of(level(c, 2), cell));
  }
  std::sort(shapes.begin(), shapes.end());
  shapes.erase(std::unique(shapes.begin(), shapes.end()), shapes.end());

  int pairs = 0;
  for (const ShapeCell& s : shapes) {
    if (shape_depth(s) > 2) continue;
    if (!s.data().var && s.data().tree.node_count() > 3) continue;
    PlexCellPtr p = plex_of_cell(s);
    for (const ComputadPtr& c : computads) {
      ComputadPtr ctx = level(c, std::max(c->max_dim(), s.data().dim));
      std::vector<Cell> cells = cells_of_shape(ctx, s);
      std::vector<Hom> homs = enumerate_var_homs(p->comp, ctx);
      expect_eq(cells.size(), homs.size(), "plex hom count = cell count");
      std::set<std::string> from_homs, from_cells;
      for (const Hom& h : homs) {
        Cell val = apply_hom(h, p->self);
        from_homs.insert(cell_to_string(val));
        expect_eq(classify_cell(p, ctx, val), h, "classify o evaluate = id");
      }
      for (const Cell& cell : cells) {
        from_cells.insert(cell_to_string(cell));
        expect_eq(apply_hom(classify_cell(p, ctx, cell), p->self), cell,
                  "evaluate o classify = id");
      }
      expect_eq(from_homs, from_cells, "evaluation image is the set of cells of the shape");
      ++pairs;
    }
  }
  expect(pairs >= 24, "plex corpus is nonempty");
}

void criterion_14() {
  json j = json::parse(R"({
    "X0": ["v0", "v1", "v2"],
    "X1": [{"name":"e01","d1":"v0","d0":"v1"},
           {"name":"e12","d1":"v1","d0":"v2"},
           {"name":"e02","d1":"v0","d0":"v2"}],
    "X2": [{"name":"t","d0":"e12","d1":"e02","d2":"e01"}]
  })");
  ComputadPtr c = ingest_simplicial(simplicial_from_json(j));
  check_computad(c);
  expect_eq(c->dims[0].size(), size_t{3}, "three vertices");
  expect_eq(c->dims[1].size(), size_t{3}, "three edges");
  expect_eq(c->dims[2].size(), size_t{1}, "one 2-generator");
  const Computad::Gen* t = c->find(2, "t");
  expect(t != nullptr, "triangle generator exists");
  Cell expect_lower =
      binary_comp(level(c, 1), Cell::var(1, "e01"), Cell::var(1, "e12"), 0);
  expect_eq(t->attach.pr1(), expect_lower, "boundary source is comp(d2, d0)");
  expect_eq(t->attach.pr2(), Cell::var(1, "e02"), "boundary target is d1");
}

void criterion_15() {
  // Free linear(2).
  {
    ComputadPtr c = free_tree(linear(2), 1);
    Hom from_initial(initial_computad(1), c, std::vector<std::map<std::string, Cell>>(2));
    auto stages = skeleton_tower(from_initial);
    expect_eq(stages.size(), size_t{2}, "two stages for a 1-computad");
    expect_eq(stages[0].added.size(), size_t{3}, "stage 0 adds three vertices");
    expect_eq(stages[1].added.size(), size_t{2}, "stage 1 adds two edges");
    expect_eq(stages[1].added[0].classify.at(0, "e0-"), Cell::var(0, "here"),
              "first edge attaches at (x, y)");
    expect_eq(stages[1].added[0].classify.at(0, "e0+"), Cell::var(0, "inr(here)"),
              "first edge attaches at (x, y)");
    expect_eq(stages[1].added[1].classify.at(0, "e0-"), Cell::var(0, "inr(here)"),
              "second edge attaches at (y, z)");
    expect_eq(stages[1].added[1].classify.at(0, "e0+"), Cell::var(0, "inr(inr(here))"),
              "second edge attaches at (y, z)");
    for (const auto& st : stages)
      for (const auto& a : st.added) check_hom(a.classify);
  }
  // Disks up to dimension 4.
  for (int n = 0; n <= 4; ++n) {
    ComputadPtr d = disk_computad(n);
    Hom from_initial(initial_computad(n), d,
                     std::vector<std::map<std::string, Cell>>(static_cast<size_t>(n) + 1));
    auto stages = skeleton_tower(from_initial);
    expect_eq(stages.size(), static_cast<size_t>(n) + 1, "n+1 stages");
    for (int k = 0; k <= n; ++k) {
      expect_eq(stages[static_cast<size_t>(k)].added.size(), k == n ? size_t{1} : size_t{2},
                "disk stage generator count");
      for (const auto& a : stages[static_cast<size_t>(k)].added) check_hom(a.classify);
    }
    expect(*stages.back().object == *d, "tower ends at the computad");
  }
}

struct Criterion {
  int number;
  const char* title;
  std::function<void()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "position census", criterion_1},
      {2, "globularity and inclusion laws (trees <= 6 nodes)", criterion_2},
      {3, "boundary generation (trees <= 5 nodes)", criterion_3},
      {4, "unique full 0-sphere (trees <= 6 nodes)", criterion_4},
      {5, "zigzag round trip (trees <= 7 nodes)", criterion_5},
      {6, "associator and unitor coherences", criterion_6},
      {7, "functor and naturality laws (1000 randomized pairs)", criterion_7},
      {8, "support laws (randomized corpus)", criterion_8},
      {9, "cover-immersion factorization", criterion_9},
      {10, "generic-free factorization", criterion_10},
      {11, "full spheres <-> boundary covers", criterion_11},
      {12, "unbiased composites are covering coherences", criterion_12},
      {13, "plex representability bijection", criterion_13},
      {14, "simplicial ingestion of the 2-simplex", criterion_14},
      {15, "skeleton-tower presentation", criterion_15},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
      c.run();
    } catch (const Failure& f) {
      verdict = "FAIL";
      detail = f.message;
      ++failures;
    } catch (const Error& e) {
      verdict = "FAIL";
      detail = e.what();
      ++failures;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::printf("%s criterion %2d: %s (%lld ms)%s%s\n", verdict.c_str(), c.number, c.title,
                static_cast<long long>(ms), detail.empty() ? "" : " -- ", detail.c_str());
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
