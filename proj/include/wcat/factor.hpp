#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "wcat/computad.hpp"
#include "wcat/opalg.hpp"

namespace wcat {

// ---------------------------------------------------------------------------
// Supports of morphisms, covers, immersions.

/// The k-dimensional support of a homomorphism: everything its generator
/// images touch.
inline std::set<std::string> hom_support(const Hom& h, int k) {
  std::set<std::string> out;
  for (const auto& lvl : h.assign())
    for (const auto& [name, cell] : lvl) {
      (void)name;
      auto s = support(h.target(), cell, k);
      out.insert(s.begin(), s.end());
    }
  return out;
}

/// A cover touches every generator of its target.
inline bool is_cover(const Hom& h) {
  for (int k = 0; k <= h.target()->max_dim(); ++k) {
    std::set<std::string> all;
    for (const auto& g : h.target()->dims[static_cast<size_t>(k)]) all.insert(g.name);
    if (hom_support(h, k) != all) return false;
  }
  return true;
}

/// An immersion is generator-preserving and injective on generators.
inline bool is_immersion(const Hom& h) {
  if (!is_generator_preserving(h)) return false;
  for (const auto& lvl : h.assign()) {
    std::set<std::string> seen;
    for (const auto& [name, cell] : lvl) {
      (void)name;
      if (!seen.insert(cell.var_name()).second) return false;
    }
  }
  return true;
}

/// A cell covers its computad when its classifying homomorphism does.
inline bool cell_covers(const ComputadPtr& ctx, const Cell& c) {
  return is_cover(globe_hom(ctx, c));
}

// ---------------------------------------------------------------------------
// Lifting along immersions.

namespace detail {

using NameTable = std::vector<std::map<std::string, std::string>>;

Cell lift_cell(const Cell& c, const NameTable& inv, const ComputadPtr& new_target);

inline Hom lift_hom(const Hom& h, const NameTable& inv, const ComputadPtr& new_target) {
  std::vector<std::map<std::string, Cell>> assign(h.assign().size());
  for (size_t k = 0; k < h.assign().size(); ++k)
    for (const auto& [name, cell] : h.assign()[k])
      assign[k].emplace(name, lift_cell(cell, inv, new_target));
  return Hom(h.source(), level(new_target, h.source()->max_dim()), std::move(assign));
}

/// Rewrites a cell of D as a cell of D' through the inverse generator
/// table of an immersion D' -> D.
inline Cell lift_cell(const Cell& c, const NameTable& inv, const ComputadPtr& new_target) {
  if (c.is_var()) {
    size_t k = static_cast<size_t>(c.dim());
    require(k < inv.size(), "SupportNotContained", c.var_name(),
            "generator of dimension " + std::to_string(c.dim()) + " not in the immersion image");
    auto it = inv[k].find(c.var_name());
    require(it != inv[k].end(), "SupportNotContained", c.var_name(),
            "generator of dimension " + std::to_string(c.dim()) + " not in the immersion image");
    return Cell::var(c.dim(), it->second);
  }
  return Cell::coh(c.coh_tree(), c.coh_sphere(), lift_hom(c.coh_hom(), inv, new_target));
}

inline Sphere lift_sphere(const Sphere& s, const NameTable& inv, const ComputadPtr& new_target) {
  std::vector<std::pair<Cell, Cell>> levels;
  levels.reserve(s.levels().size());
  for (const auto& [a, b] : s.levels())
    levels.emplace_back(lift_cell(a, inv, new_target), lift_cell(b, inv, new_target));
  return Sphere(std::move(levels));
}

}  // namespace detail

/// Unique lift of tau through an immersion sigma: exists exactly when the
/// support of tau is contained in the support of sigma.
inline Hom lift_through_immersion(const Hom& tau, const Hom& sigma) {
  require(is_immersion(sigma), "NotImmersion", "", "lifting requires an immersion");
  require(same_computad(tau.target(), sigma.target()), "TypeMismatch", "",
          "lift endpoints do not match");
  detail::NameTable inv(sigma.assign().size());
  for (size_t k = 0; k < sigma.assign().size(); ++k)
    for (const auto& [name, cell] : sigma.assign()[k]) inv[k].emplace(cell.var_name(), name);
  std::vector<std::map<std::string, Cell>> assign(tau.assign().size());
  for (size_t k = 0; k < tau.assign().size(); ++k)
    for (const auto& [name, cell] : tau.assign()[k])
      assign[k].emplace(name, detail::lift_cell(cell, inv, sigma.source()));
  Hom lifted(tau.source(), level(sigma.source(), tau.source()->max_dim()), std::move(assign));
  return lifted;
}

// ---------------------------------------------------------------------------
// Cover-immersion factorization.

struct CoverImmersion {
  ComputadPtr middle;  // the computad fim of graded supports
  Hom cover;           // source -> middle
  Hom immersion;       // middle -> target
};

/// Factors h through the computad carried by its graded support.
inline CoverImmersion cover_immersion_factor(const Hom& h) {
  const ComputadPtr& target = h.target();
  int top = target->max_dim();

  // Supported generators per dimension, in the target's order; the
  // inclusion keeps their names.
  detail::NameTable inv(static_cast<size_t>(top) + 1);
  std::vector<std::vector<std::string>> supported(static_cast<size_t>(top) + 1);
  for (int k = 0; k <= top; ++k) {
    std::set<std::string> sup = hom_support(h, k);
    for (const auto& g : target->dims[static_cast<size_t>(k)])
      if (sup.count(g.name)) {
        supported[static_cast<size_t>(k)].push_back(g.name);
        inv[static_cast<size_t>(k)].emplace(g.name, g.name);
      }
  }
  // Attaching data lifts through the inclusion: supports are closed under
  // iterated boundaries.
  Computad mid;
  mid.dims.resize(static_cast<size_t>(top) + 1);
  for (int k = 0; k <= top; ++k) {
    ComputadPtr partial = make_computad(mid);
    for (const std::string& name : supported[static_cast<size_t>(k)]) {
      const Computad::Gen* orig = target->find(k, name);
      mid.dims[static_cast<size_t>(k)].push_back(
          Computad::Gen{name, detail::lift_sphere(orig->attach, inv, partial)});
    }
  }
  ComputadPtr mid_ptr = make_computad(std::move(mid));

  CoverImmersion out;
  out.middle = mid_ptr;
  out.immersion = gen_hom(mid_ptr, target, inv);
  out.cover = lift_through_immersion(h, out.immersion);
  return out;
}

// ---------------------------------------------------------------------------
// Generic-free factorization.// ---------------------------------------------------------------------------
// Generic-free factorization.

/// Reads back the globular set a free computad is built on; reports
/// NotFreeTarget when the computad is not free.
inline GlobSet free_preimage(const ComputadPtr& c, const std::string& err_code) {
  GlobSet x;
  x.levels.resize(c->dims.size());
  for (int k = 0; k <= c->max_dim(); ++k) {
    auto& lvl = x.levels[static_cast<size_t>(k)];
    for (const auto& g : c->dims[static_cast<size_t>(k)]) {
      if (k > 0) {
        require(g.attach.pr1().is_var() && g.attach.pr2().is_var(), err_code, g.name,
                "attaching sphere is not made of generators");
        int s = x.find(k - 1, g.attach.pr1().var_name());
        int t = x.find(k - 1, g.attach.pr2().var_name());
        require(s >= 0 && t >= 0, err_code, g.name, "attaching generator missing");
        lvl.src.push_back(s);
        lvl.tgt.push_back(t);
      }
      lvl.cells.push_back(g.name);
    }
  }
  while (!x.levels.empty() && x.levels.back().cells.empty()) x.levels.pop_back();
  require(*free_computad(x, c->max_dim()) == *c, err_code, "",
          "computad is not free on a globular set");
  return x;
}

struct GenericFree {
  Tree tree;  // B_sigma
  Hom gen;    // Free b -> Free B_sigma, a cover
  Hom fr;     // Free B_sigma -> Free X, generator-preserving
};

namespace detail {

inline std::string globe_top_word(int m) {
  Pos p = Pos::here();
  for (int i = 0; i < m; ++i) p = inl(p);
  return p.to_string();
}

/// Generator-preserving hom Free_n(from) -> Free_n(to) renaming positions.
inline Hom pos_rename_hom(const Tree& from, const Tree& to, const std::map<Pos, Pos>& m, int n) {
  NameTable names(static_cast<size_t>(n) + 1);
  for (const auto& [p, q] : m)
    names[static_cast<size_t>(p.dim())].emplace(p.to_string(), q.to_string());
  return gen_hom(free_tree(from, n), free_tree(to, n), names);
}

GenericFree generic_free_factor_hom(const Tree& b, const Hom& sigma);

/// Factorization of the homomorphism out of a globe picking this cell.
inline GenericFree generic_free_factor_cell(const Cell& c, const Hom& sigma_globe) {
  int n = sigma_globe.source()->max_dim();
  if (c.is_var()) {
    // Generator-preserving already: identity generic part.
    int m = c.dim();
    return GenericFree{globe(m), identity_hom(free_tree(globe(m), n)), sigma_globe};
  }
  const Tree& inner = c.coh_tree();
  // sigma factors through the cover picking coh(inner, A, id).
  Cell generic_cell = Cell::coh(inner, c.coh_sphere(),
                                identity_hom(free_tree(inner, c.dim())));
  Hom sigma_tilde = globe_hom(free_tree(inner, n), generic_cell, n);
  // Lift the stored homomorphism to the ambient level.
  std::vector<std::map<std::string, Cell>> assign(static_cast<size_t>(n) + 1);
  for (size_t k = 0; k < c.coh_hom().assign().size(); ++k) assign[k] = c.coh_hom().assign()[k];
  Hom tau(free_tree(inner, n), sigma_globe.target(), std::move(assign));
  GenericFree rec = generic_free_factor_hom(inner, tau);
  return GenericFree{rec.tree, compose_hom(rec.gen, sigma_tilde), rec.fr};
}

inline GenericFree generic_free_factor_hom(const Tree& b, const Hom& sigma) {
  int n = sigma.source()->max_dim();
  if (b == globe(b.dim()))
    return generic_free_factor_cell(sigma.at(b.dim(), globe_top_word(b.dim())), sigma);

  // General tree: factor every position's cell, substitute the resulting
  // trees into b, and assemble the parts along the colimit cocone.
  std::map<Pos, GenericFree> parts;
  for (const Pos& p : all_positions(b)) {
    const Cell& cp = sigma.at(p.dim(), p.to_string());
    parts.emplace(p, generic_free_factor_cell(cp, globe_hom(sigma.target(), cp, n)));
  }
  for (const Pos& p : all_positions(b)) {
    if (p.dim() == 0) continue;
    // The factorization commutes with boundaries, so labels are coherent.
    require(parts.at(pos_src(b, p)).tree == boundary_tree(parts.at(p).tree, p.dim() - 1) &&
                parts.at(pos_tgt(b, p)).tree == boundary_tree(parts.at(p).tree, p.dim() - 1),
            "NotAPastingDiagram", p.to_string(),
            "position factorizations do not agree on boundaries");
  }
  SubstResult subst = substitute_full(b, [&](const Pos& p) { return parts.at(p).tree; });
  ComputadPtr target_tree = free_tree(subst.tree, n);

  std::vector<std::map<std::string, Cell>> gen_assign(static_cast<size_t>(n) + 1);
  NameTable fr_names(static_cast<size_t>(n) + 1);
  for (const Pos& p : all_positions(b)) {
    const GenericFree& part = parts.at(p);
    Hom psi = pos_rename_hom(part.tree, subst.tree, subst.cocone.at(p), n);
    Cell top_image = part.gen.at(p.dim(), globe_top_word(p.dim()));
    gen_assign[static_cast<size_t>(p.dim())].emplace(p.to_string(), apply_hom(psi, top_image));
    // Generator images of the free part carry over along the cocone.
    auto part_names = gen_map(part.fr);
    for (const auto& [q, q_img] : subst.cocone.at(p)) {
      size_t k = static_cast<size_t>(q.dim());
      auto name = part_names[k].at(q.to_string());
      auto [it, inserted] = fr_names[k].emplace(q_img.to_string(), name);
      require(it->second == name, "NotAPastingDiagram", q_img.to_string(),
              "free parts disagree on a shared position");
      (void)inserted;
    }
  }
  Hom gen(sigma.source(), target_tree, std::move(gen_assign));
  Hom fr = gen_hom(target_tree, sigma.target(), fr_names);
  return GenericFree{subst.tree, std::move(gen), std::move(fr)};
}

}  // namespace detail

/// Factors a homomorphism Free b -> Free X uniquely into a cover onto a
/// substituted tree followed by a generator-preserving homomorphism.
inline GenericFree generic_free_factor(const Tree& b, const Hom& sigma) {
  int n = sigma.source()->max_dim();
  require(same_computad(sigma.source(), free_tree(b, n)), "NotFreeSource", "",
          "source is not the free computad on the tree");
  free_preimage(sigma.target(), "NotFreeTarget");
  GenericFree out = detail::generic_free_factor_hom(b, sigma);
  require(compose_hom(out.fr, out.gen) == sigma, "NotAPastingDiagram", "",
          "factorization does not recompose (internal error)");
  return out;
}

// ---------------------------------------------------------------------------
// Full spheres as pairs of boundary covers.

/// The unique cells covering the n-boundary whose pushforwards along the
/// source and target inclusions are the components of a full sphere.
inline std::pair<Cell, Cell> full_to_covers(const Tree& b, const Sphere& s) {
  require(is_full(b, s), "NotFull", "", "sphere is not full over the tree");
  int n = s.dim();
  ComputadPtr fb = free_tree(b, n);
  std::pair<Cell, Cell> out;
  for (Dir dir : {Dir::Src, Dir::Tgt}) {
    Hom incl = inclusion_hom(b, n, dir, n);
    const Cell& component = dir == Dir::Src ? s.pr1() : s.pr2();
    Hom lifted = lift_through_immersion(globe_hom(fb, component, n), incl);
    Cell cov = lifted.at(n, detail::globe_top_word(n));
    require(cell_covers(incl.source(), cov), "NotACover", "",
            "lifted boundary cell does not cover the boundary tree");
    (dir == Dir::Src ? out.first : out.second) = cov;
  }
  return out;
}

/// Builds the full sphere whose components are the pushforwards of two
/// parallel covers of the n-boundary.
inline Sphere covers_to_full(const Tree& b, const Cell& a_cov, const Cell& b_cov) {
  require(a_cov.valid() && b_cov.valid() && a_cov.dim() == b_cov.dim(), "NotParallel", "",
          "boundary covers must share a dimension");
  int n = a_cov.dim();
  Tree db = boundary_tree(b, n);
  ComputadPtr fdb = free_tree(db, n);
  require(cell_covers(fdb, a_cov), "NotACover", "pr1", "first cell does not cover the boundary");
  require(cell_covers(fdb, b_cov), "NotACover", "pr2", "second cell does not cover the boundary");
  Cell a_in = apply_hom(inclusion_hom(b, n, Dir::Src, n), a_cov);
  Cell b_in = apply_hom(inclusion_hom(b, n, Dir::Tgt, n), b_cov);
  ComputadPtr fb = free_tree(b, n);
  Sphere bd_a = ty(fb, a_in);
  require(bd_a == ty(fb, b_in), "NotParallel", "",
          "included cells are not parallel over the tree");
  Sphere full = bd_a.extended(a_in, b_in);
  require(is_full(b, full), "NotFull", "", "included covers do not form a full sphere");
  return full;
}

/// The contraction lift: the coherence cover filling a parallel pair of
/// boundary covers.
inline Cell contraction_lift(const Tree& b, const Cell& c, const Cell& d) {
  require(c.valid() && d.valid() && c.dim() == d.dim(), "NotParallel", "",
          "contraction lifts take two cells of equal dimension");
  int n = c.dim();
  require(b.dim() <= n + 1, "DimTooHigh", "",
          "contraction lifts exist for trees of dimension at most n+1");
  Sphere full = covers_to_full(b, c, d);
  Cell lift = Cell::coh(b, full, identity_hom(free_tree(b, n + 1)));
  return lift;
}

// ---------------------------------------------------------------------------
// Skeleton tower of an immersion.

struct TowerStage {
  int dim = 0;
  ComputadPtr object;  // P^n
  Hom step;            // sigma^n : P^{n-1} -> P^n
  Hom proj;            // rho^n   : P^n -> D
  struct Added {
    std::string name;
    Hom classify;  // sphere(n-1) -> truncate(D, n-1) attaching hom
  };
  std::vector<Added> added;
};

/// The classifying homomorphism of a sphere: the sphere computad maps its
/// generator pairs to the levels of the tower.
inline Hom classify_sphere_hom(const ComputadPtr& ctx, const Sphere& s) {
  int n = s.dim();
  std::vector<std::map<std::string, Cell>> assign(static_cast<size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    assign[static_cast<size_t>(k)].emplace("e" + std::to_string(k) + "-",
                                           s.levels()[static_cast<size_t>(k)].first);
    assign[static_cast<size_t>(k)].emplace("e" + std::to_string(k) + "+",
                                           s.levels()[static_cast<size_t>(k)].second);
  }
  return Hom(sphere_computad(n), level(ctx, n), std::move(assign));
}

/// Decomposes an immersion C -> D into the tower of stages that adjoin
/// the missing generators dimension by dimension, with the attaching data
/// of every adjoined generator.
inline std::vector<TowerStage> skeleton_tower(const Hom& sigma) {
  require(is_immersion(sigma), "NotImmersion", "", "the tower is defined for immersions");
  int top = std::max(sigma.source()->max_dim(), sigma.target()->max_dim());
  Hom prev_proj = level_hom(sigma, top);  // rho^{n-1}, starting at rho^{-1} = sigma
  ComputadPtr prev = prev_proj.source();  // P^{n-1}, starting at C
  ComputadPtr d = prev_proj.target();

  std::vector<TowerStage> stages;
  auto sigma_names = gen_map(level_hom(sigma, top));
  for (int n = 0; n <= top; ++n) {
    TowerStage stage;
    stage.dim = n;
    // P^n: D up to n, then the generators of P^{n-1} re-attached along
    // the stage map.
    Computad pn;
    pn.dims.resize(static_cast<size_t>(top) + 1);
    for (int k = 0; k <= n; ++k) pn.dims[static_cast<size_t>(k)] = d->dims[static_cast<size_t>(k)];

    // The stage map sigma^n agrees with rho^{n-1} up to n and keeps the
    // generators above untouched.
    std::vector<std::map<std::string, Cell>> step_assign(static_cast<size_t>(top) + 1);
    for (int k = 0; k <= std::min(n, prev->max_dim()); ++k)
      for (const auto& g : prev->dims[static_cast<size_t>(k)])
        step_assign[static_cast<size_t>(k)].emplace(g.name, prev_proj.at(k, g.name));
    for (int k = n + 1; k <= prev->max_dim(); ++k)
      for (const auto& g : prev->dims[static_cast<size_t>(k)])
        step_assign[static_cast<size_t>(k)].emplace(g.name, Cell::var(k, g.name));

    for (int k = n + 1; k <= prev->max_dim(); ++k) {
      for (const auto& g : prev->dims[static_cast<size_t>(k)]) {
        Hom partial_step(level(prev, k - 1), make_computad([&] {
                           Computad snap;
                           snap.dims.assign(pn.dims.begin(), pn.dims.begin() + k);
                           return snap;
                         }()),
                         std::vector<std::map<std::string, Cell>>(
                             step_assign.begin(), step_assign.begin() + k));
        pn.dims[static_cast<size_t>(k)].push_back(
            Computad::Gen{g.name, apply_hom_sphere(partial_step, g.attach)});
      }
    }
    stage.object = make_computad(std::move(pn));
    stage.step = Hom(prev, stage.object, std::move(step_assign));

    // rho^n: identity up to n, the previous projection above.
    std::vector<std::map<std::string, Cell>> proj_assign(static_cast<size_t>(top) + 1);
    for (int k = 0; k <= n; ++k)
      for (const auto& g : stage.object->dims[static_cast<size_t>(k)])
        proj_assign[static_cast<size_t>(k)].emplace(g.name, Cell::var(k, g.name));
    for (int k = n + 1; k <= stage.object->max_dim(); ++k)
      for (const auto& g : stage.object->dims[static_cast<size_t>(k)])
        proj_assign[static_cast<size_t>(k)].emplace(g.name, prev_proj.at(k, g.name));
    stage.proj = Hom(stage.object, d, std::move(proj_assign));

    // Pushout presentation: the generators of dimension n that are not in
    // the image of the immersion, with their attaching data.
    std::set<std::string> image;
    if (n < static_cast<int>(sigma_names.size()))
      for (const auto& [from, to] : sigma_names[static_cast<size_t>(n)]) {
        (void)from;
        image.insert(to);
      }
    for (const auto& g : d->dims[static_cast<size_t>(n)]) {
      if (image.count(g.name)) continue;
      stage.added.push_back(TowerStage::Added{g.name, classify_sphere_hom(level(d, n - 1), g.attach)});
    }

    prev = stage.object;
    prev_proj = stage.proj;
    stages.push_back(std::move(stage));
  }
  return stages;
}

}  // namespace wcat
