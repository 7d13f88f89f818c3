// Command-line front end for the computad kernel.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "wcat/frontend.hpp"

namespace {

using namespace wcat;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("UsageError", path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CheckedFile load(const std::string& path) { return check_source(read_file(path)); }

const CheckedFile::NamedCell& get_cell(const CheckedFile& env, const std::string& name) {
  auto it = env.cells.find(name);
  require(it != env.cells.end(), "UnknownGenerator", name, "no such cell declared");
  return it->second;
}

json check_report(const CheckedFile& env) {
  json decls = json::array();
  for (const auto& line : env.order) decls.push_back(line);
  return json{{"ok", true}, {"declarations", decls}};
}

int cmd_check(const std::string& path, bool as_json) {
  CheckedFile env = load(path);
  if (as_json) {
    std::cout << check_report(env).dump(2) << "\n";
  } else {
    for (const auto& line : env.order) std::cout << "ok " << line << "\n";
    std::cout << "checked " << env.order.size() << " declaration(s)\n";
  }
  return 0;
}

int cmd_tree_positions(const std::string& literal, int dim, bool as_json) {
  Tree t = Tree::parse(literal);
  std::vector<Pos> ps = dim < 0 ? all_positions(t) : positions(t, dim);
  if (as_json) {
    json arr = json::array();
    for (const Pos& p : ps) arr.push_back(json{{"word", p.to_string()}, {"dim", p.dim()}});
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const Pos& p : ps) std::cout << p.to_string() << " : " << p.dim() << "\n";
  }
  return 0;
}

int cmd_tree_boundary(const std::string& literal, int k, const std::string& dir, bool as_json) {
  Tree t = Tree::parse(literal);
  Dir d = dir == "tgt" ? Dir::Tgt : Dir::Src;
  PositionMap pm = inclusion(t, k, d);
  if (as_json) {
    json map = json::object();
    for (const auto& [p, q] : pm.map) map[p.to_string()] = q.to_string();
    std::cout << json{{"boundary", pm.source.to_string()}, {"inclusion", map}}.dump(2) << "\n";
  } else {
    std::cout << pm.source.to_string() << "\n";
    for (const auto& [p, q] : pm.map)
      std::cout << p.to_string() << " -> " << q.to_string() << "\n";
  }
  return 0;
}

int cmd_tree_zigzag(const std::string& literal, const std::string& decode, bool as_json) {
  if (!decode.empty()) {
    std::vector<int> zs;
    std::stringstream ss(decode);
    std::string item;
    while (std::getline(ss, item, ',')) zs.push_back(std::stoi(item));
    Tree t = zigzag_decode(zs);
    std::cout << (as_json ? tree_to_json(t).dump(2) : t.to_string()) << "\n";
    return 0;
  }
  Tree t = Tree::parse(literal);
  std::vector<int> zs = zigzag_encode(t);
  if (as_json) {
    std::cout << json(zs).dump() << "\n";
  } else {
    for (size_t i = 0; i < zs.size(); ++i) std::cout << (i ? "," : "") << zs[i];
    std::cout << "\n";
  }
  return 0;
}

int cmd_cell(const std::string& op, const std::string& path, const std::string& name,
             bool as_json) {
  CheckedFile env = load(path);
  const auto& named = get_cell(env, name);
  ComputadPtr ctx = level(env.computads.at(named.computad), named.cell.dim());
  if (op == "boundary") {
    Sphere s = ty(ctx, named.cell);
    if (as_json)
      std::cout << sphere_to_json(s).dump(2) << "\n";
    else if (s.dim() < 0)
      std::cout << "(sphere)\n";
    else
      std::cout << cell_to_string(s.pr1()) << " => " << cell_to_string(s.pr2()) << "\n";
  } else if (op == "support") {
    json out = json::object();
    for (int k = 0; k <= named.cell.dim(); ++k) {
      auto sup = support(ctx, named.cell, k);
      out[std::to_string(k)] = std::vector<std::string>(sup.begin(), sup.end());
    }
    if (as_json) {
      std::cout << out.dump(2) << "\n";
    } else {
      for (auto it = out.begin(); it != out.end(); ++it) {
        std::cout << it.key() << ":";
        for (const auto& v : it.value()) std::cout << " " << v.get<std::string>();
        std::cout << "\n";
      }
    }
  } else if (op == "shape") {
    ShapeCell s = shape_of(ctx, named.cell);
    PlexCellPtr p = plex_of_cell(s);
    json out{{"dim", s.data().dim},
             {"depth", shape_depth(s)},
             {"canonical", cell_to_string(p->self)}};
    if (as_json)
      std::cout << out.dump(2) << "\n";
    else
      std::cout << "dim " << s.data().dim << ", depth " << shape_depth(s) << ", canonical "
                << cell_to_string(p->self) << "\n";
  } else {
    fail("SyntaxError", op, "unknown cell operation");
  }
  return 0;
}

int cmd_factor(const std::string& mode, const std::string& path, const std::string& name,
               bool as_json) {
  CheckedFile env = load(path);
  auto it = env.homs.find(name);
  require(it != env.homs.end(), "UnknownGenerator", name, "no such hom declared");
  const Hom& h = it->second.hom;
  json report;
  if (mode == "cover-immersion") {
    CoverImmersion ci = cover_immersion_factor(h);
    report = json{{"kind", "cover-immersion"},
                  {"middle", computad_to_json(ci.middle)},
                  {"parts", json{{"cover", hom_to_json(ci.cover)},
                                 {"immersion", hom_to_json(ci.immersion)}}},
                  {"checks",
                   json{{"cover", is_cover(ci.cover)},
                        {"immersion", is_immersion(ci.immersion)},
                        {"recomposes", compose_hom(ci.immersion, ci.cover) == h}}}};
  } else if (mode == "generic-free") {
    // Identify the source with the free computad on its underlying tree.
    GlobSet src = free_preimage(h.source(), "NotFreeSource");
    auto rec = detail::reconstruct_tree(src);
    Tree b = rec.tree;
    int n = h.source()->max_dim();
    detail::NameTable names(static_cast<size_t>(n) + 1);
    for (size_t dim = 0; dim < src.levels.size(); ++dim)
      for (size_t i = 0; i < src.levels[dim].cells.size(); ++i)
        names[dim].emplace(rec.posmap[dim][i].to_string(), src.levels[dim].cells[i]);
    Hom iso = gen_hom(free_tree(b, n), h.source(), names);
    Hom sigma = compose_hom(h, iso);
    GenericFree gf = generic_free_factor(b, sigma);
    report = json{{"kind", "generic-free"},
                  {"middle", gf.tree.to_string()},
                  {"parts", json{{"generic", hom_to_json(gf.gen)}, {"free", hom_to_json(gf.fr)}}},
                  {"checks",
                   json{{"generic_is_cover", is_cover(gf.gen)},
                        {"free_is_generator_preserving", is_generator_preserving(gf.fr)},
                        {"dim_bound", gf.tree.dim() <= b.dim()},
                        {"recomposes", compose_hom(gf.fr, gf.gen) == sigma}}}};
  } else {
    fail("SyntaxError", mode, "unknown factor mode");
  }
  std::cout << report.dump(as_json ? 2 : -1) << "\n";
  return 0;
}

int cmd_compose(const std::string& literal, int n, bool as_json) {
  Tree t = Tree::parse(literal);
  Cell c = unbiased_comp(t, n);
  ComputadPtr fb = free_tree(t, n);
  check_cell(fb, c);
  if (as_json) {
    json out{{"term", cell_to_string(c)},
             {"boundary", sphere_to_json(ty(fb, c))},
             {"cover", cell_covers(fb, c)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << cell_to_string(c) << "\n";
  }
  return 0;
}

int cmd_plex(const std::string& path, const std::string& name, bool as_json) {
  CheckedFile env = load(path);
  const auto& named = get_cell(env, name);
  ComputadPtr ctx = level(env.computads.at(named.computad), named.cell.dim());
  PlexCellPtr p = plex_of_cell(shape_of(ctx, named.cell));
  json out{{"computad", computad_to_json(p->comp)},
           {"canonical", cell_to_string(p->self)},
           {"classify", hom_to_json(classify_cell(p, ctx, named.cell))}};
  std::cout << out.dump(as_json ? 2 : 2) << "\n";
  return 0;
}

int cmd_ingest(const std::string& path, bool as_json) {
  json j = json::parse(read_file(path));
  ComputadPtr c = ingest_simplicial(simplicial_from_json(j));
  std::cout << computad_to_json(c).dump(as_json ? 2 : 2) << "\n";
  return 0;
}

int cmd_present(const std::string& path, const std::string& name, const std::string& literal,
                int max_dim, bool as_json) {
  ComputadPtr c;
  if (!literal.empty()) {
    Tree t = Tree::parse(literal);
    c = free_tree(t, max_dim >= 0 ? std::max(max_dim, t.dim()) : t.dim());
  } else {
    CheckedFile env = load(path);
    auto it = env.computads.find(name);
    require(it != env.computads.end(), "UnknownGenerator", name, "no such computad declared");
    c = it->second;
  }
  Hom from_initial(initial_computad(c->max_dim()), c,
                   std::vector<std::map<std::string, Cell>>(static_cast<size_t>(c->max_dim()) + 1));
  auto stages = skeleton_tower(from_initial);
  json out = json::array();
  for (const auto& st : stages) {
    json added = json::array();
    for (const auto& a : st.added)
      added.push_back(json{{"name", a.name}, {"attach", hom_to_json(a.classify)}});
    out.push_back(json{{"dim", st.dim}, {"added", added}, {"count", st.added.size()}});
  }
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& st : out)
      std::cout << "stage " << st["dim"] << ": " << st["count"] << " generator(s)\n";
  }
  return 0;
}

int cmd_emit_dot(const std::string& path, const std::string& name, const std::string& literal) {
  if (!literal.empty()) {
    Tree t = Tree::parse(literal);
    std::cout << emit_dot(pos_globset(t), t.to_string());
    return 0;
  }
  CheckedFile env = load(path);
  auto it = env.computads.find(name);
  require(it != env.computads.end(), "UnknownGenerator", name, "no such computad declared");
  std::cout << emit_dot(computad_one_skeleton(it->second), name);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wcat: a kernel for computads of weak omega-categories"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  std::string file, name, literal, dir = "src", mode = "cover-immersion", decode, op;
  int dim = -1, k = 0, n = 0, max_dim = -1;

  auto* check = app.add_subcommand("check", "typecheck all declarations in a file");
  check->add_option("file", file)->required();

  auto* tree = app.add_subcommand("tree", "tree operations");
  tree->require_subcommand(1);
  auto* tpos = tree->add_subcommand("positions", "list positions");
  tpos->add_option("literal", literal)->required();
  tpos->add_option("-n,--dim", dim, "restrict to one dimension");
  auto* tbound = tree->add_subcommand("boundary", "boundary tree and inclusion");
  tbound->add_option("literal", literal)->required();
  tbound->add_option("-k", k)->required();
  tbound->add_option("--dir", dir, "src or tgt");
  auto* tzig = tree->add_subcommand("zigzag", "zigzag codec");
  tzig->add_option("literal", literal);
  tzig->add_option("--decode", decode, "comma-separated sequence to decode");

  auto* cell = app.add_subcommand("cell", "operations on declared cells");
  cell->add_option("op", op, "boundary | support | shape")->required();
  cell->add_option("file", file)->required();
  cell->add_option("name", name)->required();

  auto* factor = app.add_subcommand("factor", "factor a declared hom");
  factor->add_option("--mode", mode, "cover-immersion | generic-free");
  factor->add_option("file", file)->required();
  factor->add_option("name", name)->required();

  auto* compose = app.add_subcommand("compose", "unbiased composite of a tree");
  compose->add_option("literal", literal)->required();
  compose->add_option("n", n)->required();

  auto* plex = app.add_subcommand("plex", "representing computad of a cell's shape");
  plex->add_option("file", file)->required();
  plex->add_option("name", name)->required();

  auto* ingest = app.add_subcommand("ingest-simplicial", "2-simplicial set to computad");
  ingest->add_option("file", file)->required();

  auto* present = app.add_subcommand("present", "skeleton-tower presentation");
  present->add_option("file", file);
  present->add_option("name", name);
  present->add_option("--tree", literal, "present the free computad on a tree");
  present->add_option("--max-dim", max_dim);

  auto* dot = app.add_subcommand("emit-dot", "DOT output of a pasting diagram or computad");
  dot->add_option("--tree", literal, "tree literal");
  dot->add_option("file", file);
  dot->add_option("name", name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(file, as_json);
    if (tpos->parsed()) return cmd_tree_positions(literal, dim, as_json);
    if (tbound->parsed()) return cmd_tree_boundary(literal, k, dir, as_json);
    if (tzig->parsed()) return cmd_tree_zigzag(literal, decode, as_json);
    if (cell->parsed()) return cmd_cell(op, file, name, as_json);
    if (factor->parsed()) return cmd_factor(mode, file, name, as_json);
    if (compose->parsed()) return cmd_compose(literal, n, as_json);
    if (plex->parsed()) return cmd_plex(file, name, as_json);
    if (ingest->parsed()) return cmd_ingest(file, as_json);
    if (present->parsed()) return cmd_present(file, name, literal, max_dim, as_json);
    if (dot->parsed()) return cmd_emit_dot(file, name, literal);
  } catch (const Error& e) {
    json err{{"ok", false}, {"code", e.code()}, {"path", e.path()}, {"message", e.message()}};
    if (as_json)
      std::cerr << err.dump(2) << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return e.code() == "UsageError" ? 2 : 1;
  }
  return 2;
}
