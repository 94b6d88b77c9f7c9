#include "globular/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "globular/models.hpp"
#include "globular/structural.hpp"
#include "globular/wfs.hpp"

namespace globular {

namespace {

using nlohmann::json;

/// Bad input files or arguments; exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  bool json_out = false;
  bool dry_run = false;
  std::uint64_t seed = 1;
  Bounds bounds;
  // Set when the flag was given on the command line.
  bool bounds_given = false;

  std::string from, to, table, op, tower, model, term, args, base, map, in, out;
  std::string flavor = "groupoid", strategy = "canonical", group;
  int dim = -1, i = 1, search = -1, constant = 0, trunc = 2;
  bool point = false, relabel = false;
};

json read_json(const std::string& path) {
  if (path.empty()) throw UsageError("missing input file");
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << j.dump(1) << "\n";
}

void check_distinct(const std::string& in, const std::string& out) {
  if (!in.empty() && in == out) throw UsageError("input and output paths must differ");
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
  return s;
}

ExtensionTower load_tower(const std::string& path) { return tower_from_json(read_json(path)); }
Model load_model(const std::string& path) { return model_from_json(read_json(path)); }

/// The catalog over a model's or tower's symbols.
struct CatalogOver {
  TowerProvider provider;
  StructuralCatalog cat;
  CatalogOver(const ExtensionTower& t, int search)
      : provider(t, search < 0 ? std::max(t.bounds.max_size, 3) : search), cat(provider) {}
};

// ---------------------------------------------------------------------------
// Commands

void enumerate_tables_cmd(Options& o, std::ostream& out) {
  if (o.dry_run) return;
  auto tables = enumerate_tables(o.bounds.max_dim, o.bounds.max_len);
  if (o.json_out) {
    json j = json::array();
    for (const auto& t : tables) {
      j.push_back({{"table", to_string(t)}, {"tree", to_tree_string(t)}, {"dim", dimension(t)}});
    }
    out << j.dump() << "\n";
    return;
  }
  for (const auto& t : tables) out << to_string(t) << "  " << to_tree_string(t) << "\n";
}

void hom_cmd(Options& o, std::ostream& out) {
  auto s = parse_table(o.from);
  auto t = parse_table(o.to);
  s.validate();
  t.validate();
  if (o.dry_run) return;
  auto maps = hom_theta0(s, t);
  if (o.json_out) {
    json j = json::array();
    for (const auto& f : maps) j.push_back(f.map);
    out << json{{"from", to_string(s)}, {"to", to_string(t)}, {"count", maps.size()}, {"morphisms", j}}.dump()
        << "\n";
    return;
  }
  out << maps.size() << " morphisms " << to_string(s) << " -> " << to_string(t) << "\n";
  for (std::size_t n = 0; n < maps.size(); ++n) {
    out << "  f" << n << ":";
    for (const auto& dim : maps[n].map) out << " [" << join(dim) << "]";
    out << "\n";
  }
}

void realize_cmd(Options& o, std::ostream& out) {
  auto t = parse_table(o.table);
  t.validate();
  int d = o.dim < 0 ? dimension(t) : o.dim;
  if (d < dimension(t)) throw UsageError("--dim below the dimension of the table");
  if (o.dry_run) return;
  auto x = realize(t, d);
  if (o.json_out) {
    out << to_json(x).dump() << "\n";
    return;
  }
  for (int k = 0; k <= x.trunc; ++k) {
    out << "dim " << k << ":";
    for (int c = 0; c < x.count(k); ++c) {
      out << " " << x.cells[k][c];
      if (k) out << "(" << x.cells[k - 1][x.src[k][c]] << "->" << x.cells[k - 1][x.tgt[k][c]] << ")";
    }
    out << "\n";
  }
}

void build_coherator_cmd(Options& o, std::ostream& out) {
  auto flavor = parse_flavor(o.flavor);
  auto strategy = parse_strategy(o.strategy);
  if (o.dry_run) return;
  auto tower = build_tower(flavor, strategy, o.bounds);
  if (!o.out.empty()) write_json(o.out, to_json(tower));
  if (o.json_out) {
    json counts = json::array();
    for (const auto& l : tower.levels) counts.push_back(l.symbols.size());
    json j = {{"flavor", to_string(flavor)}, {"strategy", to_string(strategy)}, {"bounds", to_json(o.bounds)},
              {"symbols_per_level", counts}};
    if (o.out.empty()) j["tower"] = to_json(tower);
    out << j.dump() << "\n";
    return;
  }
  out << to_string(flavor) << " " << to_string(strategy) << " tower, " << tower.symbol_count() << " symbols\n";
  for (int n = 1; n <= tower.top(); ++n) {
    out << "  level " << n << ": " << tower.levels[n].symbols.size() << " symbols\n";
  }
}

void derive_cmd(Options& o, std::ostream& out) {
  auto [op, params] = parse_op(o.op);
  std::optional<ExtensionTower> tower;
  if (!o.tower.empty()) tower = load_tower(o.tower);
  if (o.dry_run) {
    // A free derivation is cheap and checks the name and parameters.
    FreeProvider scratch(parse_flavor(o.flavor));
    StructuralCatalog(scratch).derive(op, params);
    return;
  }
  std::unique_ptr<LiftingProvider> provider;
  if (tower) {
    provider = std::make_unique<TowerProvider>(*tower, o.search < 0 ? std::max(tower->bounds.max_size, 3) : o.search);
  } else {
    provider = std::make_unique<FreeProvider>(parse_flavor(o.flavor));
  }
  StructuralCatalog cat(*provider);
  auto t = cat.derive(op, params);
  auto [s, g] = boundary_of(t);
  if (o.json_out) {
    out << json{{"op", o.op}, {"term", to_sexpr(t)}, {"display", to_display(t)},
                {"source", to_display(s)}, {"target", to_display(g)}}
               .dump()
        << "\n";
    return;
  }
  out << "term: " << to_display(t) << "\n";
  out << "sexpr: " << to_sexpr(t) << "\n";
  out << "boundary: (" << to_display(s) << ", " << to_display(g) << ")\n";
}

int cell_arg(const GlobularSet& x, int dim, const std::string& text) {
  for (int c = 0; c < x.count(dim); ++c) {
    if (x.cells[dim][c] == text) return c;
  }
  try {
    std::size_t used = 0;
    int c = std::stoi(text, &used);
    if (used == text.size() && c >= 0 && c < x.count(dim)) return c;
  } catch (const std::logic_error&) {
  }
  throw UsageError("no " + std::to_string(dim) + "-cell named " + text);
}

void eval_cmd(Options& o, std::ostream& out) {
  auto m = load_model(o.model);
  if (o.term.empty() == o.op.empty()) throw UsageError("give exactly one of --term and --op");
  if (o.dry_run) return;
  TermPtr t;
  std::optional<CatalogOver> catalog;
  if (!o.term.empty()) {
    t = parse_term(o.term, m.theory.lookup());
  } else {
    auto [op, params] = parse_op(o.op);
    catalog.emplace(m.theory, o.search);
    t = catalog->cat.derive(op, params);
  }
  std::vector<int> args;
  {
    std::stringstream ss(o.args);
    std::string item;
    int k = 0;
    while (std::getline(ss, item, ',')) {
      if (k >= t->table().length()) throw UsageError("too many arguments");
      args.push_back(cell_arg(m.carrier, t->table().tops[k++], item));
    }
  }
  int c = eval(m, t, args);
  const std::string& name = m.carrier.cells[t->dim()][c];
  if (o.json_out) {
    out << json{{"term", to_sexpr(t)}, {"args", args}, {"dim", t->dim()}, {"cell", c}, {"name", name}}.dump()
        << "\n";
    return;
  }
  out << name << " (dim " << t->dim() << ", index " << c << ")\n";
}

void pi_cmd(Options& o, std::ostream& out) {
  auto m = load_model(o.model);
  if (o.i < 1 || o.i + 1 > m.trunc()) throw UsageError("--i needs 1 <= i <= trunc - 1");
  int base = o.base.empty() ? 0 : cell_arg(m.carrier, 0, o.base);
  if (o.dry_run) return;
  CatalogOver catalog(m.theory, o.search);
  auto pi = pi_n(m, base, o.i, catalog.cat);
  auto groupoid = varpi(m, o.i, catalog.cat);
  std::vector<std::string> names;
  for (int cls : pi.classes) names.push_back(m.carrier.cells[o.i][groupoid.representative[cls]]);
  if (o.json_out) {
    out << json{{"i", o.i},
                {"base", m.carrier.cells[0][base]},
                {"order", pi.group.order()},
                {"elements", names},
                {"identity", pi.group.identity},
                {"table", pi.group.mul}}
               .dump()
        << "\n";
    return;
  }
  out << "pi_" << o.i << " at " << m.carrier.cells[0][base] << ": order " << pi.group.order() << "\n";
  for (int a = 0; a < pi.group.order(); ++a) {
    out << "  " << names[a] << " |";
    for (int b = 0; b < pi.group.order(); ++b) out << " " << names[pi.group.mul[a][b]];
    out << "\n";
  }
}

void weq_cmd(Options& o, std::ostream& out) {
  auto a = load_model(o.from);
  auto b = load_model(o.to);
  GSMorphism f = o.map.empty() ? identity_morphism(a.carrier) : morphism_from_json(read_json(o.map));
  if (!same_symbols(a.theory, b.theory)) throw UsageError("models over different towers");
  if (o.dry_run) return;
  CatalogOver catalog(a.theory, o.search);
  auto r = is_weak_equivalence(a, b, f, catalog.cat);
  if (o.json_out) {
    out << json{{"weak_equivalence", r.ok}, {"checked_up_to", r.checked_up_to}, {"reason", r.reason},
                {"caveat", r.caveat}}
               .dump()
        << "\n";
    return;
  }
  out << "weak equivalence: " << (r.ok ? "yes" : "no") << "\n";
  if (!r.ok) out << "reason: " << r.reason << "\n";
  out << "note: " << r.caveat << "\n";
}

void check_fibrant_cmd(Options& o, std::ostream& out) {
  auto tower = load_tower(o.tower);
  Bounds b = o.bounds_given ? o.bounds : tower.bounds;
  if (o.dry_run) return;
  auto r = check_theorem_310(tower, b);
  if (o.json_out) {
    out << to_json(r).dump() << "\n";
    return;
  }
  auto yes = [](bool v) { return v ? "yes" : "no"; };
  out << "bounds: max_dim " << b.max_dim << ", max_size " << b.max_size << ", max_len " << b.max_len << "\n";
  out << "pairs of level " << r.fibrancy.pair_level << " checked in level " << r.fibrancy.lift_level << ": "
      << r.fibrancy.pairs_checked << ", without lifting: " << r.fibrancy.failures.size() << "\n";
  for (std::size_t k = 0; k < std::min<std::size_t>(5, r.fibrancy.failures.size()); ++k) {
    const auto& p = r.fibrancy.failures[k];
    out << "  " << to_string(p.codomain) << " (" << to_display(p.f) << ", " << to_display(p.g) << ")\n";
  }
  out << "cellular: " << yes(r.cellular) << "\nfibrant: " << yes(r.fibrant())
      << "\ncoherator by construction: " << yes(r.coherator_by_construction)
      << "\nconsistent: " << yes(r.consistent()) << "\n";
}

void relayer_cmd(Options& o, std::ostream& out) {
  check_distinct(o.in, o.out);
  auto j = read_json(o.in);
  auto pres = j.contains("layers") ? presentation_from_json(j) : presentation_from_tower(tower_from_json(j));
  if (o.dry_run) return;
  auto relayered = omega_layering(pres);
  if (!o.out.empty()) write_json(o.out, to_json(relayered));
  if (o.json_out) {
    json sizes = json::array();
    for (const auto& l : relayered.layers) sizes.push_back(l.size());
    json r = {{"layers_before", pres.layers.size()}, {"layers_after", relayered.layers.size()},
              {"attachments", relayered.attachment_count()}, {"layer_sizes", sizes}};
    if (o.out.empty()) r["presentation"] = to_json(relayered);
    out << r.dump() << "\n";
    return;
  }
  out << "layers " << pres.layers.size() << " -> " << relayered.layers.size() << ", attachments "
      << relayered.attachment_count() << "\n";
  for (std::size_t n = 0; n < relayered.layers.size(); ++n) {
    out << "  layer " << n + 1 << ": " << relayered.layers[n].size() << "\n";
  }
}

Chooser chooser_for(const Model& m) {
  if (m.generator.is_object() && m.generator.value("kind", "") == "group") {
    return path_product(parse_group(m.generator.at("group").get<std::string>()));
  }
  return {};
}

void lift_cmd(Options& o, std::ostream& out) {
  check_distinct(o.model, o.out);
  auto tower = load_tower(o.tower);
  auto m = load_model(o.model);
  if (o.dry_run) return;
  ModelTarget target(tower, m.carrier, chooser_for(m));
  target.model.generator = m.generator;
  auto tables = lift_into(tower, target);
  if (!o.out.empty()) write_json(o.out, to_json(target.model));
  if (o.json_out) {
    out << json{{"symbols", tables.size()}, {"tables", target.model.ops.size()}}.dump() << "\n";
    return;
  }
  out << "interpreted " << target.model.ops.size() << " of " << tables.size() << " symbols\n";
}

void model_cmd(Options& o, std::ostream& out) {
  int kinds = !o.group.empty() + (o.constant > 0) + o.point;
  if (kinds != 1) throw UsageError("give exactly one of --group, --constant, --point");
  std::optional<ExtensionTower> tower;
  if (!o.tower.empty()) tower = load_tower(o.tower);
  int trunc = o.group.empty() ? o.trunc : 2;
  std::optional<FiniteGroup> g;
  if (!o.group.empty()) g = parse_group(o.group);
  if (o.dry_run) return;
  if (!tower) {
    FreeProvider provider;
    StructuralCatalog cat(provider);
    populate(cat, trunc);
    tower = as_tower(provider);
  }
  Model m = g ? group_model(*g, *tower)
              : o.point ? one_point_model(trunc, *tower) : constant_model(o.constant, trunc, *tower);
  if (o.relabel) {
    std::mt19937_64 rng(o.seed);
    GSMorphism perm;
    for (int k = 0; k <= m.trunc(); ++k) {
      std::vector<int> v(m.carrier.count(k));
      std::iota(v.begin(), v.end(), 0);
      std::shuffle(v.begin(), v.end(), rng);
      perm.map.push_back(std::move(v));
    }
    m = transport(m, perm);
    if (!o.map.empty()) write_json(o.map, to_json(perm));
  }
  if (!o.out.empty()) write_json(o.out, to_json(m));
  std::vector<int> counts;
  for (int k = 0; k <= m.trunc(); ++k) counts.push_back(m.carrier.count(k));
  if (o.json_out) {
    json j = {{"generator", m.generator}, {"cells", counts}, {"tables", m.ops.size()}};
    if (o.out.empty()) j["model"] = to_json(m);
    out << j.dump() << "\n";
    return;
  }
  out << "model " << m.generator.dump() << ": cells " << join(counts) << ", tables " << m.ops.size() << "\n";
}

void emit_error(std::ostream& err, bool as_json, const std::string& kind, const std::string& message) {
  if (as_json) {
    err << json{{"error", kind}, {"message", message}}.dump() << "\n";
  } else {
    err << "error: " << message << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Globular theories: tables, towers, structural operations and finite models", "globular"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json_out, "Machine-readable output");
  app.add_flag("--dry-run", o.dry_run, "Validate inputs without computing");
  app.add_option("--seed", o.seed, "Seed for randomized choices");
  std::vector<CLI::Option*> bound_opts{
      app.add_option("--max-dim", o.bounds.max_dim, "Largest dimension")->check(CLI::NonNegativeNumber),
      app.add_option("--max-size", o.bounds.max_size, "Largest term size")->check(CLI::NonNegativeNumber),
      app.add_option("--max-len", o.bounds.max_len, "Longest codomain table")->check(CLI::NonNegativeNumber),
      app.add_option("--levels", o.bounds.levels, "Tower levels")->check(CLI::NonNegativeNumber),
      app.add_option("--budget", o.bounds.budget, "Most pairs per level and terms per table")};

  std::map<CLI::App*, std::function<void(Options&, std::ostream&)>> handlers;
  auto sub = [&](const char* name, const char* help, auto fn) {
    auto* s = app.add_subcommand(name, help);
    handlers[s] = fn;
    return s;
  };

  sub("enumerate-tables", "List tables of dimensions within --max-dim and --max-len", enumerate_tables_cmd);
  auto* hom = sub("hom", "Morphisms of Θ₀ between two tables", hom_cmd);
  hom->add_option("--from", o.from, "Source table, e.g. \"(1 1 | 0)\"")->required();
  hom->add_option("--to", o.to, "Target table")->required();
  auto* re = sub("realize", "Cells of a globular sum", realize_cmd);
  re->add_option("--table", o.table, "Table")->required();
  re->add_option("--dim", o.dim, "Truncation, at least the table's dimension");
  auto* bc = sub("build-coherator", "Build a tower of formal liftings", build_coherator_cmd);
  bc->add_option("--flavor", o.flavor, "groupoid or category");
  bc->add_option("--strategy", o.strategy, "canonical, bl or reduced");
  bc->add_option("--out", o.out, "Tower JSON file");
  auto* de = sub("derive", "Derive a structural operation, e.g. comp:l=1,i=1", derive_cmd);
  de->add_option("--op", o.op, "Operation")->required();
  de->add_option("--tower", o.tower, "Answer from this tower instead of adjoining freely");
  de->add_option("--flavor", o.flavor, "Flavor of the free provider");
  de->add_option("--search", o.search, "Term size bound for lifting search");
  auto* ev = sub("eval", "Evaluate a term in a model", eval_cmd);
  ev->add_option("--model", o.model, "Model JSON")->required();
  ev->add_option("--term", o.term, "Term in s-expression syntax");
  ev->add_option("--op", o.op, "Structural operation instead of a term");
  ev->add_option("--args", o.args, "Comma-separated cell names or indices, one per summand")->required();
  ev->add_option("--search", o.search, "Term size bound for lifting search");
  auto* pi = sub("pi", "Homotopy group of a model", pi_cmd);
  pi->add_option("--model", o.model, "Model JSON")->required();
  pi->add_option("--i", o.i, "Degree");
  pi->add_option("--base", o.base, "Base point, name or index");
  pi->add_option("--search", o.search, "Term size bound for lifting search");
  auto* we = sub("weq", "Check a model morphism for weak equivalence", weq_cmd);
  we->add_option("--from", o.from, "Source model JSON")->required();
  we->add_option("--to", o.to, "Target model JSON")->required();
  we->add_option("--map", o.map, "Morphism JSON {map: [[...]]}, identity when omitted");
  we->add_option("--search", o.search, "Term size bound for lifting search");
  auto* cf = sub("check-fibrant", "Bounded fibrancy and cellularity of a tower", check_fibrant_cmd);
  cf->add_option("--tower", o.tower, "Tower JSON")->required();
  auto* rl = sub("relayer", "Re-layer a presentation or tower by dependency depth", relayer_cmd);
  rl->add_option("--in", o.in, "Presentation or tower JSON")->required();
  rl->add_option("--out", o.out, "Presentation JSON");
  auto* li = sub("lift", "Interpret a tower on a model's carrier", lift_cmd);
  li->add_option("--tower", o.tower, "Tower JSON")->required();
  li->add_option("--model", o.model, "Model JSON")->required();
  li->add_option("--out", o.out, "Model JSON with the new tables");
  auto* mo = sub("model", "Generate a group, constant or one-point model", model_cmd);
  mo->add_option("--group", o.group, "z<n>, s3 or trivial");
  mo->add_option("--constant", o.constant, "Number of elements of a constant model");
  mo->add_flag("--point", o.point, "One-point model");
  mo->add_option("--trunc", o.trunc, "Truncation of constant and one-point models");
  mo->add_option("--tower", o.tower, "Tower to interpret; the structural catalog when omitted");
  mo->add_flag("--relabel", o.relabel, "Permute the cells at random (see --seed)");
  mo->add_option("--map-out", o.map, "Where to write the relabeling");
  mo->add_option("--out", o.out, "Model JSON file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, o.json_out, "usage", e.what());
    return 2;
  }
  for (auto* opt : bound_opts) o.bounds_given = o.bounds_given || opt->count() > 0;

  try {
    for (const auto& [s, fn] : handlers) {
      if (s->parsed()) {
        fn(o, out);
        if (o.dry_run) out << (o.json_out ? "{\"valid\":true}" : "inputs ok") << "\n";
      }
    }
    return 0;
  } catch (const NotParallel& e) {
    emit_error(err, o.json_out, "not_parallel", e.what());
  } catch (const NotAdmissible& e) {
    emit_error(err, o.json_out, "not_admissible", e.what());
  } catch (const CoherenceFailure& e) {
    emit_error(err, o.json_out, "coherence_failure", e.what());
  } catch (const ProviderFailure& e) {
    emit_error(err, o.json_out, "provider_failure", e.what());
  } catch (const BudgetExceeded& e) {
    emit_error(err, o.json_out, "budget_exceeded", e.what());
  } catch (const std::invalid_argument& e) {
    emit_error(err, o.json_out, "usage", e.what());
    return 2;
  }
  return 1;
}

}  // namespace globular
