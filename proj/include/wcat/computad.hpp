#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "wcat/errors.hpp"
#include "wcat/glob.hpp"
#include "wcat/tree.hpp"

namespace wcat {

class Cell;
class Sphere;
class Hom;
struct Computad;
using ComputadPtr = std::shared_ptr<const Computad>;

struct CellData;

/// A cell term: a generator (`var`) or a coherence `coh(B, A, tau)` where
/// B is a Batanin tree, A a full sphere over Free B one dimension down,
/// and tau a homomorphism out of Free B. Immutable and cheaply shareable.
class Cell {
public:
  Cell() = default;

  static Cell var(int dim, std::string name);
  static Cell coh(Tree tree, Sphere sphere, Hom hom);

  bool valid() const { return d_ != nullptr; }
  int dim() const;
  bool is_var() const;
  const std::string& var_name() const;
  const Tree& coh_tree() const;
  const Sphere& coh_sphere() const;
  const Hom& coh_hom() const;

  bool operator==(const Cell& o) const;
  bool operator!=(const Cell& o) const { return !(*this == o); }

private:
  std::shared_ptr<const CellData> d_;
};

/// A sphere of dimension n: the full tower of parallel cell pairs from
/// dimension 0 up to n. The (-1)-sphere is the empty tower. Storing the
/// tower makes boundary checks local.
class Sphere {
public:
  Sphere() = default;
  explicit Sphere(std::vector<std::pair<Cell, Cell>> levels) : levels_(std::move(levels)) {}

  int dim() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<std::pair<Cell, Cell>>& levels() const { return levels_; }
  const std::pair<Cell, Cell>& top() const { return levels_.back(); }
  const Cell& pr1() const { return levels_.back().first; }
  const Cell& pr2() const { return levels_.back().second; }

  /// The tower below the top pair.
  Sphere lower() const {
    return Sphere(std::vector<std::pair<Cell, Cell>>(levels_.begin(), levels_.end() - 1));
  }
  Sphere extended(Cell a, Cell b) const {
    auto ls = levels_;
    ls.emplace_back(std::move(a), std::move(b));
    return Sphere(std::move(ls));
  }

  bool operator==(const Sphere& o) const;
  bool operator!=(const Sphere& o) const { return !(*this == o); }

private:
  std::vector<std::pair<Cell, Cell>> levels_;
};

/// A homomorphism of computads, recorded by its action on generators.
class Hom {
public:
  Hom() = default;
  Hom(ComputadPtr source, ComputadPtr target, std::vector<std::map<std::string, Cell>> assign)
      : source_(std::move(source)), target_(std::move(target)), assign_(std::move(assign)) {}

  const ComputadPtr& source() const { return source_; }
  const ComputadPtr& target() const { return target_; }
  const std::vector<std::map<std::string, Cell>>& assign() const { return assign_; }
  const Cell& at(int dim, const std::string& name) const;

  bool operator==(const Hom& o) const;
  bool operator!=(const Hom& o) const { return !(*this == o); }

private:
  ComputadPtr source_, target_;
  std::vector<std::map<std::string, Cell>> assign_;
};

struct VarData {
  std::string name;
};
struct CohData {
  Tree tree;
  Sphere sphere;
  Hom hom;
};
struct CellData {
  int dim = 0;
  std::variant<VarData, CohData> node;
};

inline Cell Cell::var(int dim, std::string name) {
  Cell c;
  c.d_ = std::make_shared<CellData>(CellData{dim, VarData{std::move(name)}});
  return c;
}
inline Cell Cell::coh(Tree tree, Sphere sphere, Hom hom) {
  int dim = sphere.dim() + 1;
  Cell c;
  c.d_ = std::make_shared<CellData>(
      CellData{dim, CohData{std::move(tree), std::move(sphere), std::move(hom)}});
  return c;
}
inline int Cell::dim() const { return d_->dim; }
inline bool Cell::is_var() const { return std::holds_alternative<VarData>(d_->node); }
inline const std::string& Cell::var_name() const { return std::get<VarData>(d_->node).name; }
inline const Tree& Cell::coh_tree() const { return std::get<CohData>(d_->node).tree; }
inline const Sphere& Cell::coh_sphere() const { return std::get<CohData>(d_->node).sphere; }
inline const Hom& Cell::coh_hom() const { return std::get<CohData>(d_->node).hom; }

inline bool Cell::operator==(const Cell& o) const {
  if (d_ == o.d_) return true;
  if (!d_ || !o.d_) return false;
  if (d_->dim != o.d_->dim || is_var() != o.is_var()) return false;
  if (is_var()) return var_name() == o.var_name();
  return coh_tree() == o.coh_tree() && coh_sphere() == o.coh_sphere() && coh_hom() == o.coh_hom();
}

inline bool Sphere::operator==(const Sphere& o) const {
  if (levels_.size() != o.levels_.size()) return false;
  for (size_t i = 0; i < levels_.size(); ++i)
    if (levels_[i].first != o.levels_[i].first || levels_[i].second != o.levels_[i].second)
      return false;
  return true;
}

/// A finite computad: per dimension, named generators with attaching
/// spheres over the part below.
struct Computad {
  struct Gen {
    std::string name;
    Sphere attach;
  };
  std::vector<std::vector<Gen>> dims;  // dims.size() == max_dim + 1

  int max_dim() const { return static_cast<int>(dims.size()) - 1; }

  const Gen* find(int dim, const std::string& name) const {
    if (dim < 0 || dim > max_dim()) return nullptr;
    for (const Gen& g : dims[static_cast<size_t>(dim)])
      if (g.name == name) return &g;
    return nullptr;
  }

  size_t gen_count() const {
    size_t n = 0;
    for (const auto& d : dims) n += d.size();
    return n;
  }

  bool operator==(const Computad& o) const {
    if (dims.size() != o.dims.size()) return false;
    for (size_t n = 0; n < dims.size(); ++n) {
      if (dims[n].size() != o.dims[n].size()) return false;
      for (size_t i = 0; i < dims[n].size(); ++i)
        if (dims[n][i].name != o.dims[n][i].name || dims[n][i].attach != o.dims[n][i].attach)
          return false;
    }
    return true;
  }
  bool operator!=(const Computad& o) const { return !(*this == o); }
};

inline ComputadPtr make_computad(Computad c) { return std::make_shared<const Computad>(std::move(c)); }

inline bool same_computad(const ComputadPtr& a, const ComputadPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// The computad with no generators up to the given dimension.
inline ComputadPtr initial_computad(int max_dim) {
  Computad c;
  c.dims.resize(static_cast<size_t>(max_dim) + 1);
  return make_computad(std::move(c));
}

/// Truncates or pads with empty generator sets so that the result has
/// exactly the requested dimension. Padding realizes the skeleton.
inline ComputadPtr level(const ComputadPtr& c, int max_dim) {
  if (c->max_dim() == max_dim) return c;
  Computad out;
  out.dims.resize(static_cast<size_t>(max_dim) + 1);
  for (size_t n = 0; n < out.dims.size() && n < c->dims.size(); ++n) out.dims[n] = c->dims[n];
  return make_computad(std::move(out));
}

inline ComputadPtr truncate(const ComputadPtr& c, int n) {
  require(n <= c->max_dim(), "DimMismatch", "", "truncation above the computad dimension");
  return level(c, n);
}

inline ComputadPtr skeleton(const ComputadPtr& c, int n) {
  require(n >= c->max_dim(), "DimMismatch", "", "skeleton below the computad dimension");
  return level(c, n);
}

inline const Cell& Hom::at(int dim, const std::string& name) const {
  require(dim >= 0 && dim < static_cast<int>(assign_.size()), "BadHom", name,
          "no assignment at this dimension");
  auto it = assign_[static_cast<size_t>(dim)].find(name);
  require(it != assign_[static_cast<size_t>(dim)].end(), "BadHom", name,
          "generator missing from homomorphism");
  return it->second;
}

inline bool Hom::operator==(const Hom& o) const {
  return same_computad(source_, o.source_) && same_computad(target_, o.target_) &&
         assign_ == o.assign_;
}

// ---------------------------------------------------------------------------
// Free computads.

/// The n-sphere of Free X associated to a pair of parallel cells of a
/// globular set: the tower of iterated boundaries as generator cells.
inline Sphere postype(const GlobSet& x, int dim, int a_idx, int b_idx) {
  std::vector<std::pair<Cell, Cell>> levels;
  int a = a_idx, b = b_idx;
  std::vector<std::pair<Cell, Cell>> rev;
  for (int k = dim; k >= 0; --k) {
    const auto& level_k = x.levels[static_cast<size_t>(k)];
    rev.emplace_back(Cell::var(k, level_k.cells[static_cast<size_t>(a)]),
                     Cell::var(k, level_k.cells[static_cast<size_t>(b)]));
    if (k > 0) {
      a = level_k.src[static_cast<size_t>(a)];
      b = level_k.tgt[static_cast<size_t>(b)];
    }
  }
  levels.assign(rev.rbegin(), rev.rend());
  return Sphere(std::move(levels));
}

/// The free n-computad on a globular set: generators are its cells up to
/// dimension n (higher cells are forgotten), with attaching spheres given
/// by iterated sources and targets.
inline ComputadPtr free_computad(const GlobSet& x, int n) {
  x.validate();
  Computad c;
  c.dims.resize(static_cast<size_t>(n + 1));
  for (int k = 0; k <= std::min(x.top_dim(), n); ++k) {
    const auto& lvl = x.levels[static_cast<size_t>(k)];
    for (size_t i = 0; i < lvl.cells.size(); ++i) {
      Sphere attach;
      if (k > 0)
        attach = postype(x, k - 1, lvl.src[i], lvl.tgt[i]);
      c.dims[static_cast<size_t>(k)].push_back(Computad::Gen{lvl.cells[i], std::move(attach)});
    }
  }
  return make_computad(std::move(c));
}

/// The computad free on the n-globe.
inline ComputadPtr disk_computad(int n);

/// The n-sphere computad: two generators in each dimension up to n,
/// attached to the pair below. sphere_computad(-1) is the initial computad.
inline ComputadPtr sphere_computad(int n) { return free_computad(sphere_globset(n), n); }

/// Free computad on the positions of a tree, memoized: these are built
/// pervasively by cell checking.
inline ComputadPtr free_tree(const Tree& t, int n) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, ComputadPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(t.to_string(), n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  ComputadPtr c = free_computad(pos_globset(t), n);
  cache.emplace(std::move(key), c);
  return c;
}

inline ComputadPtr disk_computad(int n) { return free_tree(globe(n), n); }

// ---------------------------------------------------------------------------
// Boundary, action on cells, composition.

Sphere ty(const ComputadPtr& ctx, const Cell& c);
Cell apply_hom(const Hom& h, const Cell& c);

/// Restricts or extends a homomorphism to computads of the given
/// dimension; above the sources' generators nothing needs to be assigned.
inline Hom level_hom(const Hom& h, int n) {
  if (h.source()->max_dim() == n && h.target()->max_dim() == n) return h;
  std::vector<std::map<std::string, Cell>> assign(static_cast<size_t>(n) + 1);
  for (size_t k = 0; k < assign.size() && k < h.assign().size(); ++k) assign[k] = h.assign()[k];
  return Hom(level(h.source(), n), level(h.target(), n), std::move(assign));
}

inline Hom identity_hom(const ComputadPtr& c) {
  std::vector<std::map<std::string, Cell>> assign(static_cast<size_t>(c->max_dim()) + 1);
  for (int k = 0; k <= c->max_dim(); ++k)
    for (const auto& g : c->dims[static_cast<size_t>(k)])
      assign[static_cast<size_t>(k)].emplace(g.name, Cell::var(k, g.name));
  return Hom(c, c, std::move(assign));
}

/// Post-composition: (g o h) acts on generators by applying g to the
/// values of h.
inline Hom compose_hom(const Hom& g, const Hom& h) {
  require(same_computad(h.target(), g.source()), "TypeMismatch", "",
          "middle computads of a composition differ");
  std::vector<std::map<std::string, Cell>> assign(h.assign().size());
  for (size_t k = 0; k < h.assign().size(); ++k)
    for (const auto& [name, cell] : h.assign()[k]) assign[k].emplace(name, apply_hom(g, cell));
  return Hom(h.source(), level(g.target(), h.source()->max_dim()), std::move(assign));
}

inline Sphere apply_hom_sphere(const Hom& h, const Sphere& s) {
  std::vector<std::pair<Cell, Cell>> levels;
  levels.reserve(s.levels().size());
  for (const auto& [a, b] : s.levels()) levels.emplace_back(apply_hom(h, a), apply_hom(h, b));
  return Sphere(std::move(levels));
}

inline Cell apply_hom(const Hom& h, const Cell& c) {
  if (c.is_var()) return h.at(c.dim(), c.var_name());
  const Hom& tau = c.coh_hom();
  Hom g = level_hom(h, c.dim());
  return Cell::coh(c.coh_tree(), c.coh_sphere(), compose_hom(g, tau));
}

/// The boundary sphere of a cell: the attaching sphere for a generator,
/// the pushforward of the stored sphere for a coherence.
inline Sphere ty(const ComputadPtr& ctx, const Cell& c) {
  if (c.is_var()) {
    const Computad::Gen* g = ctx->find(c.dim(), c.var_name());
    require(g != nullptr, "UnknownGenerator", c.var_name(), "generator not found");
    return g->attach;
  }
  return apply_hom_sphere(level_hom(c.coh_hom(), c.dim() - 1), c.coh_sphere());
}

inline Cell cell_src(const ComputadPtr& ctx, const Cell& c) { return ty(ctx, c).pr1(); }
inline Cell cell_tgt(const ComputadPtr& ctx, const Cell& c) { return ty(ctx, c).pr2(); }

/// Iterated boundary of a cell down to dimension k.
inline Cell boundary_cell(const ComputadPtr& ctx, const Cell& c, int k, Dir dir) {
  require(k <= c.dim(), "DimMismatch", "", "boundary above the cell dimension");
  if (k == c.dim()) return c;
  Sphere s = ty(ctx, c);
  return dir == Dir::Src ? s.levels()[static_cast<size_t>(k)].first
                         : s.levels()[static_cast<size_t>(k)].second;
}

// ---------------------------------------------------------------------------
// Support.

/// Graded support: the k-dimensional generators occurring in a cell.
inline std::set<std::string> support(const ComputadPtr& ctx, const Cell& c, int k) {
  std::set<std::string> out;
  if (k > c.dim()) return out;
  if (c.is_var()) {
    if (k == c.dim()) {
      out.insert(c.var_name());
      return out;
    }
    Sphere bd = ty(ctx, c);
    auto s1 = support(ctx, bd.top().first, k);
    auto s2 = support(ctx, bd.top().second, k);
    out.insert(s1.begin(), s1.end());
    out.insert(s2.begin(), s2.end());
    return out;
  }
  for (size_t m = 0; m < c.coh_hom().assign().size(); ++m) {
    for (const auto& [name, cell] : c.coh_hom().assign()[m]) {
      (void)name;
      auto s = support(c.coh_hom().target(), cell, k);
      out.insert(s.begin(), s.end());
    }
  }
  return out;
}

/// Top-dimensional support of a cell.
inline std::set<std::string> support(const ComputadPtr& ctx, const Cell& c) {
  return support(ctx, c, c.dim());
}

// ---------------------------------------------------------------------------
// Fullness.

namespace detail {
inline std::set<std::string> boundary_position_names(const Tree& b, int n, Dir dir) {
  std::set<std::string> out;
  for (const Pos& p : boundary_positions(b, n, dir)) out.insert(p.to_string());
  return out;
}
}  // namespace detail

/// A sphere over Free b is full when, at every level, the support of the
/// first cell is exactly the source boundary positions and the support of
/// the second exactly the target boundary positions.
inline bool is_full(const Tree& b, const Sphere& s) {
  ComputadPtr fb = free_tree(b, std::max(s.dim(), b.dim()));
  for (int k = 0; k <= s.dim(); ++k) {
    const auto& [a, c] = s.levels()[static_cast<size_t>(k)];
    if (support(fb, a, k) != detail::boundary_position_names(b, k, Dir::Src)) return false;
    if (support(fb, c, k) != detail::boundary_position_names(b, k, Dir::Tgt)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Checking.

void check_cell(const ComputadPtr& ctx, const Cell& c, const std::string& path = "");

inline void check_sphere(const ComputadPtr& ctx, const Sphere& s, const std::string& path = "") {
  for (int k = 0; k <= s.dim(); ++k) {
    const auto& [a, b] = s.levels()[static_cast<size_t>(k)];
    std::string here = path + ".sphere[" + std::to_string(k) + "]";
    require(a.valid() && b.valid(), "IllFormedCell", here, "missing cell");
    require(a.dim() == k && b.dim() == k, "DimMismatch", here, "sphere level dimension mismatch");
    check_cell(ctx, a, here + ".pr1");
    check_cell(ctx, b, here + ".pr2");
    Sphere expect(std::vector<std::pair<Cell, Cell>>(s.levels().begin(),
                                                     s.levels().begin() + k));
    require(ty(ctx, a) == expect, "IllFormedCell", here + ".pr1",
            "cell boundary does not match the sphere tower");
    require(ty(ctx, b) == expect, "IllFormedCell", here + ".pr2",
            "cell boundary does not match the sphere tower");
  }
}

/// Validates the boundary square for every generator of the source.
inline void check_hom(const Hom& h, const std::string& path = "") {
  require(h.source() && h.target(), "BadHom", path, "homomorphism lacks endpoints");
  require(static_cast<int>(h.assign().size()) == h.source()->max_dim() + 1, "BadHom", path,
          "assignment does not cover the source dimensions");
  for (int k = 0; k <= h.source()->max_dim(); ++k) {
    for (const auto& g : h.source()->dims[static_cast<size_t>(k)]) {
      std::string here = path + "[" + g.name + "]";
      auto it = h.assign()[static_cast<size_t>(k)].find(g.name);
      require(it != h.assign()[static_cast<size_t>(k)].end(), "BadHom", here,
              "generator missing from homomorphism");
      const Cell& img = it->second;
      require(img.valid() && img.dim() == k, "BadHom", here, "image has the wrong dimension");
      check_cell(h.target(), img, here);
      Sphere expected = apply_hom_sphere(level_hom(h, k - 1), g.attach);
      require(ty(h.target(), img) == expected, "BadHom", here,
              "boundary square does not commute");
    }
    // No spurious assignments.
    for (const auto& [name, cell] : h.assign()[static_cast<size_t>(k)]) {
      (void)cell;
      require(h.source()->find(k, name) != nullptr, "BadHom", path + "[" + name + "]",
              "assignment for a generator not in the source");
    }
  }
}

inline void check_cell(const ComputadPtr& ctx, const Cell& c, const std::string& path) {
  require(c.valid(), "IllFormedCell", path, "empty cell");
  if (c.is_var()) {
    require(ctx->find(c.dim(), c.var_name()) != nullptr, "UnknownGenerator",
            path.empty() ? c.var_name() : path, "generator not found in the computad");
    return;
  }
  const Tree& b = c.coh_tree();
  int n = c.dim();
  require(n >= 1, "DimMismatch", path, "coherence cells have positive dimension");
  require(b.dim() <= n, "DimMismatch", path, "tree dimension exceeds the cell dimension");
  ComputadPtr fb = free_tree(b, n);
  ComputadPtr fb_low = free_tree(b, n - 1);
  require(c.coh_sphere().dim() == n - 1, "DimMismatch", path + ".sphere",
          "coherence sphere has the wrong dimension");
  check_sphere(fb_low, c.coh_sphere(), path);
  require(is_full(b, c.coh_sphere()), "NotFull", path + ".sphere",
          "sphere is not full over the tree");
  const Hom& tau = c.coh_hom();
  require(same_computad(tau.source(), fb), "BadHom", path + ".hom",
          "coherence homomorphism is not out of the free computad on the tree");
  require(same_computad(tau.target(), level(ctx, n)), "BadHom", path + ".hom",
          "coherence homomorphism does not land in the ambient computad");
  check_hom(tau, path + ".hom");
}

/// Validates the attaching spheres of every generator.
inline void check_computad(const ComputadPtr& c) {
  for (int k = 0; k <= c->max_dim(); ++k) {
    std::set<std::string> seen;
    for (const auto& g : c->dims[static_cast<size_t>(k)]) {
      require(seen.insert(g.name).second, "IllFormedCell", g.name,
              "duplicate generator name in a dimension");
      require(g.attach.dim() == k - 1, "DimMismatch", g.name,
              "attaching sphere has the wrong dimension");
      check_sphere(level(c, k - 1), g.attach, g.name);
    }
  }
}

// ---------------------------------------------------------------------------
// Generator-preserving morphisms and their colimits.

inline bool is_generator_preserving(const Hom& h) {
  for (const auto& lvl : h.assign())
    for (const auto& [name, cell] : lvl) {
      (void)name;
      if (!cell.is_var()) return false;
    }
  return true;
}

/// The underlying generator assignment of a generator-preserving
/// homomorphism.
inline std::vector<std::map<std::string, std::string>> gen_map(const Hom& h) {
  require(is_generator_preserving(h), "NotGeneratorPreserving", "",
          "homomorphism sends a generator to a coherence cell");
  std::vector<std::map<std::string, std::string>> out(h.assign().size());
  for (size_t k = 0; k < h.assign().size(); ++k)
    for (const auto& [name, cell] : h.assign()[k]) out[k].emplace(name, cell.var_name());
  return out;
}

/// Generator-preserving hom from per-dimension generator renamings.
inline Hom gen_hom(const ComputadPtr& src, const ComputadPtr& tgt,
                   const std::vector<std::map<std::string, std::string>>& names) {
  std::vector<std::map<std::string, Cell>> assign(static_cast<size_t>(src->max_dim()) + 1);
  for (int k = 0; k <= src->max_dim(); ++k)
    for (const auto& g : src->dims[static_cast<size_t>(k)]) {
      require(static_cast<size_t>(k) < names.size() && names[static_cast<size_t>(k)].count(g.name),
              "BadHom", g.name, "missing generator image");
      assign[static_cast<size_t>(k)].emplace(g.name,
                                             Cell::var(k, names[static_cast<size_t>(k)].at(g.name)));
    }
  return Hom(src, tgt, std::move(assign));
}

/// The hom Free X -> Free Y induced by a map of globular sets.
inline Hom free_hom(const GlobMap& f, int n) {
  ComputadPtr src = free_computad(f.source, n);
  ComputadPtr tgt = free_computad(f.target, n);
  std::vector<std::map<std::string, std::string>> names(static_cast<size_t>(n) + 1);
  for (size_t k = 0; k < f.source.levels.size(); ++k)
    for (size_t i = 0; i < f.source.levels[k].cells.size(); ++i)
      names[k].emplace(f.source.levels[k].cells[i],
                       f.target.levels[k].cells[static_cast<size_t>(f.map[k][i])]);
  return gen_hom(src, tgt, names);
}

/// The hom Free(boundary_tree(t,k)) -> Free(t) of a boundary inclusion.
inline Hom inclusion_hom(const Tree& t, int k, Dir dir, int n) {
  PositionMap pm = inclusion(t, k, dir);
  ComputadPtr src = free_tree(pm.source, n);
  ComputadPtr tgt = free_tree(t, n);
  std::vector<std::map<std::string, std::string>> names(static_cast<size_t>(n) + 1);
  for (const auto& [p, q] : pm.map)
    names[static_cast<size_t>(p.dim())].emplace(p.to_string(), q.to_string());
  return gen_hom(src, tgt, names);
}

struct VarDiagram {
  std::vector<ComputadPtr> objects;
  struct Arrow {
    int from = 0, to = 0;
    Hom hom;
  };
  std::vector<Arrow> arrows;
};

struct VarColimit {
  ComputadPtr object;
  std::vector<Hom> cocone;  // one generator-preserving hom per diagram object
};

/// Colimit of a finite diagram of generator-preserving homomorphisms:
/// dimension-wise quotient of the generator sets, with attaching maps
/// pushed forward along the cocone. Representatives are the least
/// injected generators, so the result is deterministic.
inline VarColimit colimit_var(const VarDiagram& diagram) {
  int top = 0;
  for (const auto& o : diagram.objects) top = std::max(top, o->max_dim());
  for (const auto& a : diagram.arrows)
    require(is_generator_preserving(a.hom), "NotGeneratorPreserving", "",
            "diagram arrow is not generator-preserving");

  size_t nobj = diagram.objects.size();
  Computad colim;
  colim.dims.resize(static_cast<size_t>(top) + 1);
  // names chosen so far per object per dim: generator -> colimit generator
  std::vector<std::vector<std::map<std::string, std::string>>> out_names(nobj);
  for (size_t o = 0; o < nobj; ++o) out_names[o].resize(static_cast<size_t>(top) + 1);

  ComputadPtr partial = initial_computad(top);
  for (int k = 0; k <= top; ++k) {
    // Flatten the k-generators of all objects.
    std::vector<std::pair<size_t, size_t>> flat;  // (object, generator index)
    std::vector<size_t> offset(nobj + 1, 0);
    for (size_t o = 0; o < nobj; ++o) {
      size_t count = k <= diagram.objects[o]->max_dim()
                         ? diagram.objects[o]->dims[static_cast<size_t>(k)].size()
                         : 0;
      offset[o + 1] = offset[o] + count;
      for (size_t i = 0; i < count; ++i) flat.emplace_back(o, i);
    }
    detail::UnionFind uf(flat.size());
    for (const auto& a : diagram.arrows) {
      const auto& src = diagram.objects[static_cast<size_t>(a.from)];
      if (k > src->max_dim()) continue;
      const auto& gens = src->dims[static_cast<size_t>(k)];
      for (size_t i = 0; i < gens.size(); ++i) {
        const Cell& img = a.hom.at(k, gens[i].name);
        const auto& tgens = diagram.objects[static_cast<size_t>(a.to)]->dims[static_cast<size_t>(k)];
        size_t j = 0;
        while (j < tgens.size() && tgens[j].name != img.var_name()) ++j;
        require(j < tgens.size(), "BadHom", img.var_name(), "arrow image not in target");
        uf.unite(static_cast<int>(offset[static_cast<size_t>(a.from)] + i),
                 static_cast<int>(offset[static_cast<size_t>(a.to)] + j));
      }
    }
    std::map<int, std::string> class_name;
    std::set<std::string> used;
    for (size_t f = 0; f < flat.size(); ++f) {
      int rep = uf.find(static_cast<int>(f));
      if (class_name.count(rep)) continue;
      auto [o, i] = flat[static_cast<size_t>(rep)];
      const Computad::Gen& g = diagram.objects[o]->dims[static_cast<size_t>(k)][i];
      std::string name = g.name;
      while (!used.insert(name).second) name += "'";
      class_name.emplace(rep, name);
      // Attach sphere: push the representative's sphere along the cocone
      // built so far.
      Hom cc = gen_hom(level(diagram.objects[o], k - 1), level(partial, k - 1),
                       std::vector<std::map<std::string, std::string>>(
                           out_names[o].begin(), out_names[o].begin() + k));
      colim.dims[static_cast<size_t>(k)].push_back(
          Computad::Gen{name, apply_hom_sphere(cc, g.attach)});
    }
    for (size_t f = 0; f < flat.size(); ++f) {
      auto [o, i] = flat[f];
      out_names[o][static_cast<size_t>(k)].emplace(
          diagram.objects[o]->dims[static_cast<size_t>(k)][i].name,
          class_name.at(uf.find(static_cast<int>(f))));
    }
    partial = make_computad(colim);
  }

  VarColimit result;
  result.object = partial;
  for (size_t o = 0; o < nobj; ++o)
    result.cocone.push_back(gen_hom(level(diagram.objects[o], top), result.object, out_names[o]));
  return result;
}

// ---------------------------------------------------------------------------
// Inductive depth.

int depth_hom(const Hom& h);

/// cdpth: generators have depth 1; a coherence is one more than the depth
/// of its homomorphism. The termination measure of the factorizations.
inline int depth_cell(const Cell& c) {
  if (c.is_var()) return 1;
  return depth_hom(c.coh_hom()) + 1;
}

/// mdpth: one more than the largest depth among generator images.
inline int depth_hom(const Hom& h) {
  int sup = 0;
  for (const auto& lvl : h.assign())
    for (const auto& [name, cell] : lvl) {
      (void)name;
      sup = std::max(sup, depth_cell(cell));
    }
  return sup + 1;
}

// ---------------------------------------------------------------------------
// Printing (s-expression cell terms; used by diagnostics and the frontend).

inline std::string cell_to_string(const Cell& c);

inline std::string sphere_to_string(const Sphere& s) {
  if (s.dim() < 0) return "(sphere)";
  return "(sphere " + cell_to_string(s.pr1()) + " " + cell_to_string(s.pr2()) + ")";
}

inline std::string hom_to_string(const Hom& h) {
  std::string out = "{";
  bool first = true;
  for (const auto& lvl : h.assign())
    for (const auto& [name, cell] : lvl) {
      if (!first) out += ", ";
      first = false;
      out += name + " => " + cell_to_string(cell);
    }
  return out + "}";
}

inline std::string cell_to_string(const Cell& c) {
  if (!c.valid()) return "<none>";
  if (c.is_var()) return "(var " + c.var_name() + ")";
  return "(coh " + c.coh_tree().to_string() + " " + sphere_to_string(c.coh_sphere()) + " " +
         hom_to_string(c.coh_hom()) + ")";
}

}  // namespace wcat
