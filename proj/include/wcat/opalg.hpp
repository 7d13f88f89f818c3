#pragma once

#include <map>
#include <string>
#include <vector>

#include "wcat/computad.hpp"

namespace wcat {

// ---------------------------------------------------------------------------
// Classifying homomorphisms out of globes.

/// The homomorphism Free_n(D_m) -> ctx picking a cell: the top position
/// goes to the cell, the boundary positions to its iterated boundaries.
/// n defaults to the cell dimension.
inline Hom globe_hom(const ComputadPtr& ctx, const Cell& c, int n = -1) {
  int m = c.dim();
  if (n < 0) n = m;
  require(n >= m, "DimMismatch", "", "globe hom level below the cell dimension");
  ComputadPtr src = free_tree(globe(m), n);
  std::vector<std::map<std::string, Cell>> assign(static_cast<size_t>(n) + 1);
  Pos p = Pos::here();
  for (int j = 0; j < m; ++j) {
    assign[static_cast<size_t>(j)].emplace(p.to_string(), boundary_cell(ctx, c, j, Dir::Src));
    assign[static_cast<size_t>(j)].emplace(p.appended(Pos::Inr).to_string(),
                                           boundary_cell(ctx, c, j, Dir::Tgt));
    p = inl(p);
  }
  assign[static_cast<size_t>(m)].emplace(p.to_string(), c);
  return Hom(src, level(ctx, n), std::move(assign));
}

// ---------------------------------------------------------------------------
// Unbiased composites.

Cell unbiased_comp(const Tree& b, int n);

/// The full n-sphere A_{b,n}: in positive dimension, the unbiased
/// composite of the n-boundary pushed forward along the source inclusion
/// on one side and the target inclusion on the other.
inline Sphere unbiased_sphere(const Tree& b, int n) {
  if (n == 0) {
    Pos sb = *boundary_positions(b, 0, Dir::Src).begin();
    Pos tb = *boundary_positions(b, 0, Dir::Tgt).begin();
    return Sphere({{Cell::var(0, sb.to_string()), Cell::var(0, tb.to_string())}});
  }
  Sphere lower = unbiased_sphere(b, n - 1);
  Cell c = unbiased_comp(boundary_tree(b, n), n);
  Cell a = apply_hom(inclusion_hom(b, n, Dir::Src, n), c);
  Cell z = apply_hom(inclusion_hom(b, n, Dir::Tgt, n), c);
  return lower.extended(std::move(a), std::move(z));
}

/// A_{b,n} packaged with its data.
struct UnbiasedSphere {
  Tree tree;
  int n = 0;
  Sphere sphere;
};

inline UnbiasedSphere make_unbiased_sphere(const Tree& b, int n) {
  return UnbiasedSphere{b, n, unbiased_sphere(b, n)};
}

/// The unbiased composite comp^b_n: the canonical n-cell of Free b
/// composing the entire diagram. For the top position of a globe it is
/// that position; otherwise it is the coherence filling A_{b,n-1}.
inline Cell unbiased_comp(const Tree& b, int n) {
  require(n >= b.dim(), "DimTooLow", "",
          "unbiased composites exist from the tree dimension upwards");
  if (n == 0) return Cell::var(0, Pos::here().to_string());
  if (b == globe(n)) {
    Pos top = Pos::here();
    for (int i = 0; i < n; ++i) top = inl(top);
    return Cell::var(n, top.to_string());
  }
  return Cell::coh(b, unbiased_sphere(b, n - 1), identity_hom(free_tree(b, n)));
}

// ---------------------------------------------------------------------------
// Grafting.

/// The homomorphism Free_n(y) -> ctx induced by an assignment of cells to
/// the cells of a globular set. The assignment must respect sources and
/// targets; cell names of y must be globally unique.
inline Hom hom_from_assignment(const ComputadPtr& ctx, const GlobSet& y,
                               const std::map<std::string, Cell>& d, int n) {
  std::vector<std::map<std::string, Cell>> assign(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= std::min(y.top_dim(), n); ++k) {
    const auto& lvl = y.levels[static_cast<size_t>(k)];
    for (size_t i = 0; i < lvl.cells.size(); ++i) {
      auto it = d.find(lvl.cells[i]);
      require(it != d.end(), "BoundaryMismatch", lvl.cells[i], "cell missing from assignment");
      const Cell& img = it->second;
      require(img.valid() && img.dim() == k, "BoundaryMismatch", lvl.cells[i],
              "assigned cell has the wrong dimension");
      if (k >= 1) {
        const Cell& src_img = d.at(y.levels[static_cast<size_t>(k - 1)]
                                       .cells[static_cast<size_t>(lvl.src[i])]);
        const Cell& tgt_img = d.at(y.levels[static_cast<size_t>(k - 1)]
                                       .cells[static_cast<size_t>(lvl.tgt[i])]);
        Sphere bd = ty(ctx, img);
        require(bd.pr1() == src_img, "BoundaryMismatch", lvl.cells[i],
                "assigned cell source does not match the assigned source");
        require(bd.pr2() == tgt_img, "BoundaryMismatch", lvl.cells[i],
                "assigned cell target does not match the assigned target");
      }
      assign[static_cast<size_t>(k)].emplace(lvl.cells[i], img);
    }
  }
  return Hom(free_computad(y, n), level(ctx, n), std::move(assign));
}

/// Grafts cells of ctx into an outer cell over Free y: the counit
/// applied after the free functor. `outer = var x` returns d(x).
inline Cell graft(const ComputadPtr& ctx, const GlobSet& y,
                  const std::map<std::string, Cell>& d, const Cell& outer) {
  Hom h = hom_from_assignment(ctx, y, d, outer.dim());
  return apply_hom(h, outer);
}

// ---------------------------------------------------------------------------
// Builders.

/// The identity coherence on a cell: comp over its globe one dimension up.
inline Cell id_cell(const ComputadPtr& ctx, const Cell& c) {
  int m = c.dim();
  return apply_hom(globe_hom(ctx, c, m + 1), unbiased_comp(globe(m), m + 1));
}

/// The binary-composite tree: br[D_n, D_n] suspended k times.
inline Tree binary_tree(int k, int n) {
  Tree t = Tree(std::vector<Tree>{globe(n), globe(n)});
  for (int i = 0; i < k; ++i) t = Tree(std::vector<Tree>{t});
  return t;
}

/// Binary composite of two m-cells along their common k-boundary.
inline Cell binary_comp(const ComputadPtr& ctx, const Cell& a, const Cell& b, int k) {
  require(a.valid() && b.valid() && a.dim() == b.dim(), "NotComposable", "",
          "binary composites need two cells of equal dimension");
  int m = a.dim();
  require(0 <= k && k < m, "NotComposable", "", "composition codimension out of range");
  require(boundary_cell(ctx, a, k, Dir::Tgt) == boundary_cell(ctx, b, k, Dir::Src),
          "NotComposable", "", "cells do not share the k-boundary");
  for (int j = 0; j < k; ++j) {
    require(boundary_cell(ctx, a, j, Dir::Src) == boundary_cell(ctx, b, j, Dir::Src) &&
                boundary_cell(ctx, a, j, Dir::Tgt) == boundary_cell(ctx, b, j, Dir::Tgt),
            "NotComposable", "", "cells are not parallel below the composition dimension");
  }

  int n = m - k - 1;
  Tree t = binary_tree(k, n);
  std::map<std::string, Cell> d;
  for (const Pos& p : all_positions(t)) {
    const auto& w = p.steps();
    size_t i = 0;
    while (i < w.size() && i < static_cast<size_t>(k) && w[i] == Pos::Inl) ++i;
    size_t c_lead = i;
    std::vector<uint8_t> rest(w.begin() + static_cast<long>(i), w.end());
    Cell img;
    if (c_lead < static_cast<size_t>(k)) {
      // Suspension levels below k: shared boundary of both cells.
      if (rest.empty())
        img = boundary_cell(ctx, a, static_cast<int>(c_lead), Dir::Src);
      else
        img = boundary_cell(ctx, a, static_cast<int>(c_lead), Dir::Tgt);
    } else if (rest.empty()) {
      img = boundary_cell(ctx, a, k, Dir::Src);
    } else if (rest.front() == Pos::Inr) {
      std::vector<uint8_t> r2(rest.begin() + 1, rest.end());
      if (r2.empty()) {
        img = boundary_cell(ctx, a, k, Dir::Tgt);  // the shared middle
      } else if (r2.front() == Pos::Inr) {
        img = boundary_cell(ctx, b, k, Dir::Tgt);
      } else {
        // Globe positions of the second factor.
        std::vector<uint8_t> g(r2.begin() + 1, r2.end());
        int j = static_cast<int>(std::count(g.begin(), g.end(), static_cast<uint8_t>(Pos::Inl)));
        bool is_tgt = !g.empty() && g.back() == Pos::Inr;
        if (j == n && !is_tgt)
          img = b;
        else
          img = boundary_cell(ctx, b, k + 1 + j, is_tgt ? Dir::Tgt : Dir::Src);
      }
    } else {
      // Globe positions of the first factor.
      std::vector<uint8_t> g(rest.begin() + 1, rest.end());
      int j = static_cast<int>(std::count(g.begin(), g.end(), static_cast<uint8_t>(Pos::Inl)));
      bool is_tgt = !g.empty() && g.back() == Pos::Inr;
      if (j == n && !is_tgt)
        img = a;
      else
        img = boundary_cell(ctx, a, k + 1 + j, is_tgt ? Dir::Tgt : Dir::Src);
    }
    d.emplace(p.to_string(), std::move(img));
  }
  return graft(ctx, pos_globset(t), d, unbiased_comp(t, m));
}

/// n-ary composite of a chain of composable 1-cells.
inline Cell nary_comp(const ComputadPtr& ctx, const std::vector<Cell>& cells) {
  require(!cells.empty(), "NotComposable", "", "empty composite");
  for (const Cell& c : cells)
    require(c.valid() && c.dim() == 1, "NotComposable", "",
            "chain composites take 1-cells");
  int n = static_cast<int>(cells.size());
  std::map<std::string, Cell> d;
  Pos v = Pos::here();
  for (int i = 0; i < n; ++i) {
    Cell src_i = cell_src(ctx, cells[static_cast<size_t>(i)]);
    if (i > 0)
      require(src_i == cell_tgt(ctx, cells[static_cast<size_t>(i - 1)]), "NotComposable", "",
              "cells do not chain");
    d.emplace(v.to_string(), src_i);
    d.emplace(v.appended(Pos::Inl).to_string(), cells[static_cast<size_t>(i)]);
    v = v.appended(Pos::Inr);
  }
  d.emplace(v.to_string(), cell_tgt(ctx, cells.back()));
  return graft(ctx, pos_globset(linear(n)), d, unbiased_comp(linear(n), 1));
}

namespace detail {
/// The hom Free(linear(j)) -> ctx picking a chain of composable 1-cells.
inline Hom chain_hom(const ComputadPtr& ctx, const std::vector<Cell>& cells, int n) {
  std::map<std::string, Cell> d;
  Pos v = Pos::here();
  for (size_t i = 0; i < cells.size(); ++i) {
    d.emplace(v.to_string(), cell_src(ctx, cells[i]));
    d.emplace(v.appended(Pos::Inl).to_string(), cells[i]);
    v = v.appended(Pos::Inr);
  }
  d.emplace(v.to_string(), cell_tgt(ctx, cells.back()));
  return hom_from_assignment(ctx, pos_globset(linear(static_cast<int>(cells.size()))), d, n);
}
}  // namespace detail

/// The associator coherence comp(f, comp(g, h)) => comp(comp(f, g), h)
/// on three composable 1-cells.
inline Cell associator(const ComputadPtr& ctx, const Cell& f, const Cell& g, const Cell& h) {
  ComputadPtr fl3 = free_tree(linear(3), 1);
  Cell e1 = Cell::var(1, "inl(here)");
  Cell e2 = Cell::var(1, "inr(inl(here))");
  Cell e3 = Cell::var(1, "inr(inr(inl(here)))");
  Cell left = binary_comp(fl3, e1, binary_comp(fl3, e2, e3, 0), 0);
  Cell right = binary_comp(fl3, binary_comp(fl3, e1, e2, 0), e3, 0);
  Sphere a = unbiased_sphere(linear(3), 0).extended(left, right);
  Hom sigma = detail::chain_hom(ctx, {f, g, h}, 2);
  Cell cell = Cell::coh(linear(3), a, sigma);
  check_cell(level(ctx, 2), cell);
  return cell;
}

/// The unbiased unitor comp(f, g, id, h) => comp(f, g, h).
inline Cell unitor(const ComputadPtr& ctx, const Cell& f, const Cell& g, const Cell& h) {
  ComputadPtr fl3 = free_tree(linear(3), 1);
  Cell e1 = Cell::var(1, "inl(here)");
  Cell e2 = Cell::var(1, "inr(inl(here))");
  Cell e3 = Cell::var(1, "inr(inr(inl(here)))");
  Cell idv = id_cell(fl3, Cell::var(0, "inr(inr(here))"));
  Cell left = nary_comp(fl3, {e1, e2, idv, e3});
  Cell right = nary_comp(fl3, {e1, e2, e3});
  Sphere a = unbiased_sphere(linear(3), 0).extended(left, right);
  Hom sigma = detail::chain_hom(ctx, {f, g, h}, 2);
  Cell cell = Cell::coh(linear(3), a, sigma);
  check_cell(level(ctx, 2), cell);
  return cell;
}

}  // namespace wcat
