#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "wcat/computad.hpp"
#include "wcat/factor.hpp"

namespace wcat {

// ---------------------------------------------------------------------------
// Shapes: cells and spheres of the terminal computad.
//
// Shape terms are interned, so equality is pointer equality. The interning
// table is guarded by a mutex; interning is observationally transparent.

struct ShapeCellData;
struct ShapeSphereData;

class ShapeCell {
public:
  ShapeCell() = default;
  explicit ShapeCell(std::shared_ptr<const ShapeCellData> d) : d_(std::move(d)) {}
  const ShapeCellData& data() const { return *d_; }
  bool valid() const { return d_ != nullptr; }
  bool operator==(const ShapeCell& o) const { return d_ == o.d_; }
  bool operator!=(const ShapeCell& o) const { return d_ != o.d_; }
  bool operator<(const ShapeCell& o) const { return d_ < o.d_; }
  const std::shared_ptr<const ShapeCellData>& ptr() const { return d_; }

private:
  std::shared_ptr<const ShapeCellData> d_;
};

class ShapeSphere {
public:
  ShapeSphere() = default;
  explicit ShapeSphere(std::shared_ptr<const ShapeSphereData> d) : d_(std::move(d)) {}
  const ShapeSphereData& data() const { return *d_; }
  bool valid() const { return d_ != nullptr; }
  bool operator==(const ShapeSphere& o) const { return d_ == o.d_; }
  bool operator!=(const ShapeSphere& o) const { return d_ != o.d_; }
  bool operator<(const ShapeSphere& o) const { return d_ < o.d_; }

private:
  std::shared_ptr<const ShapeSphereData> d_;
};

struct ShapeCellData {
  int dim = 0;
  uint64_t id = 0;  // interning sequence number
  bool var = true;
  ShapeSphere attach;  // var case: the attaching sphere shape
  // coh case:
  Tree tree;
  Sphere sphere;                          // full sphere over Free(tree)
  std::map<std::string, ShapeCell> hom;   // position word -> shape
};

struct ShapeSphereData {
  uint64_t id = 0;
  std::vector<std::pair<ShapeCell, ShapeCell>> levels;
  int dim() const { return static_cast<int>(levels.size()) - 1; }
};

namespace detail {

struct ShapeRegistry {
  std::mutex mu;
  std::map<std::string, std::shared_ptr<const ShapeCellData>> cells;
  std::map<std::string, std::shared_ptr<const ShapeSphereData>> spheres;
  uint64_t next_id = 1;

  static ShapeRegistry& instance() {
    static ShapeRegistry r;
    return r;
  }
};

}  // namespace detail

inline ShapeSphere shape_sphere(std::vector<std::pair<ShapeCell, ShapeCell>> levels) {
  std::string key;
  for (const auto& [a, b] : levels) {
    key += std::to_string(a.data().id) + "," + std::to_string(b.data().id) + ";";
  }
  auto& reg = detail::ShapeRegistry::instance();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto it = reg.spheres.find(key);
  if (it != reg.spheres.end()) return ShapeSphere(it->second);
  auto data = std::make_shared<ShapeSphereData>();
  data->id = reg.next_id++;
  data->levels = std::move(levels);
  reg.spheres.emplace(std::move(key), data);
  return ShapeSphere(data);
}

/// The shape of a generator with a boundary of the given shape.
inline ShapeCell shape_var(const ShapeSphere& attach) {
  std::string key = "v" + std::to_string(attach.data().id);
  auto& reg = detail::ShapeRegistry::instance();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto it = reg.cells.find(key);
  if (it != reg.cells.end()) return ShapeCell(it->second);
  auto data = std::make_shared<ShapeCellData>();
  data->id = reg.next_id++;
  data->dim = attach.data().dim() + 1;
  data->var = true;
  data->attach = attach;
  reg.cells.emplace(std::move(key), data);
  return ShapeCell(data);
}

inline ShapeCell shape_coh(const Tree& tree, const Sphere& sphere,
                           std::map<std::string, ShapeCell> hom) {
  std::string key = "c" + tree.to_string() + "|" + sphere_to_string(sphere) + "|";
  for (const auto& [p, sc] : hom) key += p + "=" + std::to_string(sc.data().id) + ";";
  auto& reg = detail::ShapeRegistry::instance();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto it = reg.cells.find(key);
  if (it != reg.cells.end()) return ShapeCell(it->second);
  auto data = std::make_shared<ShapeCellData>();
  data->id = reg.next_id++;
  data->dim = sphere.dim() + 1;
  data->var = false;
  data->tree = tree;
  data->sphere = sphere;
  data->hom = std::move(hom);
  reg.cells.emplace(std::move(key), data);
  return ShapeCell(data);
}

/// The unique 0-dimensional shape.
inline ShapeCell shape_point() { return shape_var(shape_sphere({})); }

// ---------------------------------------------------------------------------
// Computing shapes: the image under the unique generator-preserving
// homomorphism to the terminal computad.

inline ShapeCell shape_of(const ComputadPtr& ctx, const Cell& c);

inline ShapeSphere shape_of_sphere(const ComputadPtr& ctx, const Sphere& s) {
  std::vector<std::pair<ShapeCell, ShapeCell>> levels;
  levels.reserve(s.levels().size());
  for (const auto& [a, b] : s.levels()) levels.emplace_back(shape_of(ctx, a), shape_of(ctx, b));
  return shape_sphere(std::move(levels));
}

inline ShapeCell shape_of(const ComputadPtr& ctx, const Cell& c) {
  if (c.is_var()) {
    if (c.dim() == 0) return shape_point();
    return shape_var(shape_of_sphere(ctx, ty(ctx, c)));
  }
  std::map<std::string, ShapeCell> hom;
  const Hom& tau = c.coh_hom();
  for (size_t k = 0; k < tau.assign().size(); ++k)
    for (const auto& [name, cell] : tau.assign()[k])
      hom.emplace(name, shape_of(tau.target(), cell));
  return shape_coh(c.coh_tree(), c.coh_sphere(), std::move(hom));
}

/// Boundary sphere of a shape: the attach for generators, the pushforward
/// of the stored sphere for coherences.
inline ShapeSphere shape_ty(const ShapeCell& s);

namespace detail {
inline ShapeCell shape_apply(const std::map<std::string, ShapeCell>& hom, const Cell& c) {
  if (c.is_var()) return hom.at(c.var_name());
  std::map<std::string, ShapeCell> inner;
  const Hom& rho = c.coh_hom();
  for (size_t k = 0; k < rho.assign().size(); ++k)
    for (const auto& [name, cell] : rho.assign()[k]) inner.emplace(name, shape_apply(hom, cell));
  return shape_coh(c.coh_tree(), c.coh_sphere(), std::move(inner));
}
}  // namespace detail

inline ShapeSphere shape_ty(const ShapeCell& s) {
  const ShapeCellData& d = s.data();
  if (d.var) return d.attach;
  std::vector<std::pair<ShapeCell, ShapeCell>> levels;
  for (const auto& [a, b] : d.sphere.levels())
    levels.emplace_back(detail::shape_apply(d.hom, a), detail::shape_apply(d.hom, b));
  return shape_sphere(std::move(levels));
}

inline ShapeCell shape_src(const ShapeCell& s) { return shape_ty(s).data().levels.back().first; }
inline ShapeCell shape_tgt(const ShapeCell& s) { return shape_ty(s).data().levels.back().second; }

/// Structural depth of a shape term: generators count 1, coherences one
/// more than their deepest argument.
inline int shape_depth(const ShapeCell& s) {
  if (s.data().var) return 1;
  int sup = 0;
  for (const auto& [p, sc] : s.data().hom) {
    (void)p;
    sup = std::max(sup, shape_depth(sc));
  }
  return sup + 1;
}

// ---------------------------------------------------------------------------
// Plexes: representing computads for shapes.

struct PlexCell;
struct PlexSphere;
using PlexCellPtr = std::shared_ptr<const PlexCell>;
using PlexSpherePtr = std::shared_ptr<const PlexSphere>;

struct PlexSphere {
  ShapeSphere shape;
  ComputadPtr comp;
  Sphere self;
  // construction data (absent for the (-1)-sphere):
  PlexSpherePtr lower;
  PlexCellPtr a, b;
  Hom qa, qb;  // cocone legs of the pushout into comp
};

struct PlexCell {
  ShapeCell shape;
  ComputadPtr comp;
  Cell self;
  // var case:
  PlexSpherePtr lower;
  std::string self_gen;
  // coh case:
  std::map<std::string, PlexCellPtr> pos_plex;
  std::map<std::string, Hom> psi;  // cocone legs into comp
};

PlexCellPtr plex_of_cell(const ShapeCell& s);
PlexSpherePtr plex_of_sphere(const ShapeSphere& s);
Hom classify_cell(const PlexCellPtr& plex, const ComputadPtr& ctx, const Cell& c);
Hom classify_sphere(const PlexSpherePtr& plex, const ComputadPtr& ctx, const Sphere& s);

namespace detail {
struct PlexRegistry {
  std::mutex mu;
  std::map<uint64_t, PlexCellPtr> cells;
  std::map<uint64_t, PlexSpherePtr> spheres;
  static PlexRegistry& instance() {
    static PlexRegistry r;
    return r;
  }
};
}  // namespace detail

inline PlexSpherePtr plex_of_sphere(const ShapeSphere& s) {
  {
    auto& reg = detail::PlexRegistry::instance();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.spheres.find(s.data().id);
    if (it != reg.spheres.end()) return it->second;
  }
  auto out = std::make_shared<PlexSphere>();
  out->shape = s;
  int n = s.data().dim();
  if (n < 0) {
    out->comp = initial_computad(-1);
    out->self = Sphere();
  } else {
    std::vector<std::pair<ShapeCell, ShapeCell>> lower_levels(s.data().levels.begin(),
                                                              s.data().levels.end() - 1);
    out->lower = plex_of_sphere(shape_sphere(std::move(lower_levels)));
    out->a = plex_of_cell(s.data().levels.back().first);
    out->b = plex_of_cell(s.data().levels.back().second);
    // The boundary homs: classify the boundary of each canonical cell.
    Hom ja = classify_sphere(out->lower, out->a->comp, ty(out->a->comp, out->a->self));
    Hom jb = classify_sphere(out->lower, out->b->comp, ty(out->b->comp, out->b->self));
    VarDiagram d;
    d.objects = {level(out->lower->comp, n), level(out->a->comp, n), level(out->b->comp, n)};
    d.arrows.push_back({0, 1, level_hom(ja, n)});
    d.arrows.push_back({0, 2, level_hom(jb, n)});
    VarColimit colim = colimit_var(d);
    out->comp = colim.object;
    out->qa = colim.cocone[1];
    out->qb = colim.cocone[2];
    Cell a_img = apply_hom(out->qa, out->a->self);
    Cell b_img = apply_hom(out->qb, out->b->self);
    out->self = ty(out->comp, a_img).extended(std::move(a_img), std::move(b_img));
  }
  auto& reg = detail::PlexRegistry::instance();
  std::lock_guard<std::mutex> lock(reg.mu);
  return reg.spheres.emplace(s.data().id, std::move(out)).first->second;
}

inline PlexCellPtr plex_of_cell(const ShapeCell& s) {
  {
    auto& reg = detail::PlexRegistry::instance();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.cells.find(s.data().id);
    if (it != reg.cells.end()) return it->second;
  }
  auto out = std::make_shared<PlexCell>();
  out->shape = s;
  int n = s.data().dim;
  if (s.data().var) {
    out->lower = plex_of_sphere(s.data().attach);
    out->self_gen = "c" + std::to_string(n);
    Computad comp = *level(out->lower->comp, n);
    comp.dims[static_cast<size_t>(n)].push_back(
        Computad::Gen{out->self_gen, out->lower->self});
    out->comp = make_computad(std::move(comp));
    out->self = Cell::var(n, out->self_gen);
  } else {
    // Colimit of the position plexes over the category of elements of the
    // tree's positions.
    const Tree& b = s.data().tree;
    std::vector<Pos> ps = all_positions(b);
    std::map<Pos, int> index;
    VarDiagram d;
    for (size_t i = 0; i < ps.size(); ++i) {
      index.emplace(ps[i], static_cast<int>(i));
      PlexCellPtr pp = plex_of_cell(s.data().hom.at(ps[i].to_string()));
      out->pos_plex.emplace(ps[i].to_string(), pp);
      d.objects.push_back(level(pp->comp, n));
    }
    for (const Pos& p : ps) {
      if (p.dim() == 0) continue;
      const PlexCellPtr& pp = out->pos_plex.at(p.to_string());
      for (Dir dir : {Dir::Src, Dir::Tgt}) {
        Pos q = pos_boundary(b, p, dir);
        const PlexCellPtr& pq = out->pos_plex.at(q.to_string());
        Cell bdry = dir == Dir::Src ? cell_src(pp->comp, pp->self) : cell_tgt(pp->comp, pp->self);
        Hom j = classify_cell(pq, pp->comp, bdry);
        d.arrows.push_back(
            {index.at(q), index.at(p), level_hom(j, n)});
      }
    }
    VarColimit colim = colimit_var(d);
    out->comp = level(colim.object, n);
    std::vector<std::map<std::string, Cell>> sigma(static_cast<size_t>(n) + 1);
    for (size_t i = 0; i < ps.size(); ++i) {
      out->psi.emplace(ps[i].to_string(), colim.cocone[i]);
      sigma[static_cast<size_t>(ps[i].dim())].emplace(
          ps[i].to_string(),
          apply_hom(colim.cocone[i], out->pos_plex.at(ps[i].to_string())->self));
    }
    Hom sigma_dagger(free_tree(b, n), out->comp, std::move(sigma));
    out->self = Cell::coh(b, s.data().sphere, sigma_dagger);
  }
  auto& reg = detail::PlexRegistry::instance();
  std::lock_guard<std::mutex> lock(reg.mu);
  return reg.cells.emplace(s.data().id, std::move(out)).first->second;
}

// ---------------------------------------------------------------------------
// Classifying homomorphisms: the inverse of evaluation at the canonical
// cell.

namespace detail {
/// Merges a hom through a cocone leg: for every generator of the leg's
/// source, record the image of the corresponding colimit generator.
inline void merge_through(const Hom& leg, const Hom& part,
                          std::vector<std::map<std::string, Cell>>& assign) {
  auto leg_names = gen_map(leg);
  for (size_t k = 0; k < leg_names.size(); ++k) {
    for (const auto& [from, to] : leg_names[k]) {
      const Cell& value = part.at(static_cast<int>(k), from);
      auto it = assign[k].find(to);
      if (it == assign[k].end())
        assign[k].emplace(to, value);
      else
        require(it->second == value, "ShapeMismatch", to,
                "inconsistent classification through the colimit");
    }
  }
}
}  // namespace detail

inline Hom classify_sphere(const PlexSpherePtr& plex, const ComputadPtr& ctx, const Sphere& s) {
  int n = plex->shape.data().dim();
  require(shape_of_sphere(ctx, s) == plex->shape, "ShapeMismatch", "",
          "sphere does not have the plex's shape");
  std::vector<std::map<std::string, Cell>> assign(
      static_cast<size_t>(plex->comp->max_dim()) + 1);
  if (n >= 0) {
    Hom ha = classify_cell(plex->a, ctx, s.pr1());
    Hom hb = classify_cell(plex->b, ctx, s.pr2());
    detail::merge_through(plex->qa, ha, assign);
    detail::merge_through(plex->qb, hb, assign);
  }
  return Hom(plex->comp, level(ctx, plex->comp->max_dim()), std::move(assign));
}

inline Hom classify_cell(const PlexCellPtr& plex, const ComputadPtr& ctx, const Cell& c) {
  require(shape_of(ctx, c) == plex->shape, "ShapeMismatch", "",
          "cell does not have the plex's shape");
  int n = plex->shape.data().dim;
  std::vector<std::map<std::string, Cell>> assign(
      static_cast<size_t>(plex->comp->max_dim()) + 1);
  if (plex->shape.data().var) {
    Hom lower = classify_sphere(plex->lower, ctx, ty(ctx, c));
    for (size_t k = 0; k < lower.assign().size(); ++k)
      for (const auto& [name, cell] : lower.assign()[k]) assign[k].emplace(name, cell);
    assign[static_cast<size_t>(n)].emplace(plex->self_gen, c);
  } else {
    const Hom& tau = c.coh_hom();
    for (const auto& [word, pp] : plex->pos_plex) {
      Pos p = Pos::parse(word);
      Hom part = classify_cell(pp, ctx, tau.at(p.dim(), word));
      detail::merge_through(plex->psi.at(word), part, assign);
    }
  }
  return Hom(plex->comp, level(ctx, plex->comp->max_dim()), std::move(assign));
}

// ---------------------------------------------------------------------------
// Brute-force enumeration oracles.

/// All generator-preserving homomorphisms c -> d, duplicate-free.
inline std::vector<Hom> enumerate_var_homs(const ComputadPtr& c, const ComputadPtr& d) {
  ComputadPtr dd = level(d, c->max_dim());
  std::vector<Hom> done;
  // Worklist of partial name tables, filled dimension by dimension,
  // generator by generator.
  struct State {
    detail::NameTable names;
    int dim = 0;
    size_t gen = 0;
  };
  std::vector<State> work{State{detail::NameTable(static_cast<size_t>(c->max_dim()) + 1), 0, 0}};
  while (!work.empty()) {
    State st = std::move(work.back());
    work.pop_back();
    while (st.dim <= c->max_dim() &&
           st.gen >= c->dims[static_cast<size_t>(st.dim)].size()) {
      ++st.dim;
      st.gen = 0;
    }
    if (st.dim > c->max_dim()) {
      done.push_back(gen_hom(c, dd, st.names));
      continue;
    }
    const Computad::Gen& g = c->dims[static_cast<size_t>(st.dim)][st.gen];
    // Candidates: generators of d whose attaching sphere is the image of
    // g's under the partial table.
    if (st.dim <= dd->max_dim()) {
      Hom partial = gen_hom(level(c, st.dim - 1), level(dd, st.dim - 1),
                            detail::NameTable(st.names.begin(), st.names.begin() + st.dim));
      Sphere want = apply_hom_sphere(partial, g.attach);
      for (const auto& h : dd->dims[static_cast<size_t>(st.dim)]) {
        if (h.attach != want) continue;
        State next = st;
        next.names[static_cast<size_t>(st.dim)].emplace(g.name, h.name);
        ++next.gen;
        work.push_back(std::move(next));
      }
    }
  }
  return done;
}

/// All cells of the given shape in a computad, by structural recursion on
/// the shape: generators are scanned, coherence homs are enumerated
/// position by position under the boundary constraints.
inline std::vector<Cell> cells_of_shape(const ComputadPtr& ctx, const ShapeCell& s) {
  std::vector<Cell> out;
  int n = s.data().dim;
  if (s.data().var) {
    if (n <= ctx->max_dim()) {
      for (const auto& g : ctx->dims[static_cast<size_t>(n)]) {
        if (n == 0) {
          if (s == shape_point()) out.push_back(Cell::var(0, g.name));
        } else if (shape_of_sphere(ctx, g.attach) == s.data().attach) {
          out.push_back(Cell::var(n, g.name));
        }
      }
    }
    return out;
  }
  const Tree& b = s.data().tree;
  // Assign positions in order of increasing dimension so that boundary
  // constraints refer to already-chosen cells.
  std::vector<Pos> ps;
  for (int k = 0; k <= b.dim(); ++k)
    for (const Pos& p : positions(b, k)) ps.push_back(p);
  std::vector<std::vector<std::map<std::string, Cell>>> states{
      std::vector<std::map<std::string, Cell>>(static_cast<size_t>(n) + 1)};
  for (const Pos& p : ps) {
    std::vector<std::vector<std::map<std::string, Cell>>> next;
    std::vector<Cell> candidates = cells_of_shape(ctx, s.data().hom.at(p.to_string()));
    for (const auto& st : states) {
      for (const Cell& cand : candidates) {
        if (p.dim() >= 1) {
          const Cell& src_cell =
              st[static_cast<size_t>(p.dim() - 1)].at(pos_src(b, p).to_string());
          const Cell& tgt_cell =
              st[static_cast<size_t>(p.dim() - 1)].at(pos_tgt(b, p).to_string());
          Sphere bd = ty(ctx, cand);
          if (bd.pr1() != src_cell || bd.pr2() != tgt_cell) continue;
        }
        auto st2 = st;
        st2[static_cast<size_t>(p.dim())].emplace(p.to_string(), cand);
        next.push_back(std::move(st2));
      }
    }
    states = std::move(next);
  }
  for (auto& st : states) {
    Hom tau(free_tree(b, n), level(ctx, n), std::move(st));
    out.push_back(Cell::coh(b, s.data().sphere, std::move(tau)));
  }
  return out;
}

}  // namespace wcat
