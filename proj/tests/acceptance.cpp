// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--only N] [--expect-fail N]...
//
// Exit status is 0 when exactly the criteria named by --expect-fail fail.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "globular/models.hpp"
#include "globular/wfs.hpp"
#include "support.hpp"

using namespace globular;

namespace {

// Time limits, in seconds.
constexpr double kHomGlobesLimit = 1.0;
constexpr double kRigidityLimit = 30.0;
constexpr double kPiOneLimit = 10.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Fails the outcome with the first message.
void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

std::string fmt(double seconds) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << seconds << " s";
  return s.str();
}

// ---------------------------------------------------------------------------

Outcome globe_homs() {
  Outcome o;
  auto t0 = Clock::now();
  for (int i = 0; i <= 6; ++i) {
    for (int j = 0; j <= 6; ++j) {
      std::size_t expected = i < j ? 2 : i == j ? 1 : 0;
      require(o, hom_globes(i, j).size() == expected,
              "hom(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  double dt = since(t0);
  require(o, dt < kHomGlobesLimit, "took " + fmt(dt));
  if (o.pass) o.detail = "49 hom-sets in " + fmt(dt);
  return o;
}

Outcome rigidity() {
  Outcome o;
  auto t0 = Clock::now();
  auto tables = enumerate_tables(3, 4);
  for (const auto& t : tables) {
    int automorphisms = 0;
    bool identity_found = false;
    for (const auto& f : hom_theta0(t, t)) {
      if (!is_injective(f)) continue;
      ++automorphisms;
      identity_found = identity_found || f.map == identity_morphism(realization(t).set).map;
    }
    require(o, automorphisms == 1 && identity_found, to_string(t) + " has a non-trivial automorphism");
  }
  double dt = since(t0);
  require(o, dt < kRigidityLimit, "took " + fmt(dt));
  if (o.pass) o.detail = std::to_string(tables.size()) + " tables in " + fmt(dt);
  return o;
}

int face_to(const GlobularSet& x, int dim, int cell, int b, bool source) {
  for (int k = dim; k > b; --k) cell = source ? x.src[k][cell] : x.tgt[k][cell];
  return cell;
}

// Tuples of cells of X, one per summand, glued as the table says.
std::size_t compatible_tuples(const GlobularSet& x, const DimensionTable& t) {
  std::size_t count = 0;
  std::vector<int> chosen;
  std::function<void(int)> go = [&](int k) {
    if (k == t.length()) {
      ++count;
      return;
    }
    if (t.tops[k] > x.trunc) return;
    for (int c = 0; c < x.count(t.tops[k]); ++c) {
      if (k > 0) {
        int b = t.bottoms[k - 1];
        if (face_to(x, t.tops[k - 1], chosen.back(), b, true) != face_to(x, t.tops[k], c, b, false)) continue;
      }
      chosen.push_back(c);
      go(k + 1);
      chosen.pop_back();
    }
  };
  go(0);
  return count;
}

Outcome colimits() {
  Outcome o;
  std::mt19937 rng(2024);
  auto tables = enumerate_tables(2, 3);
  std::size_t total = 0;
  for (int trial = 0; trial < 50; ++trial) {
    GlobularSet x = globular::testing::random_globular_set(rng, 2, 12);
    const DimensionTable& t = tables[rng() % tables.size()];
    std::size_t maps = hom(realize(t, 2), x).size();
    std::size_t tuples = compatible_tuples(x, t);
    require(o, maps == tuples,
            to_string(t) + ": " + std::to_string(maps) + " maps vs " + std::to_string(tuples) + " tuples");
    total += maps;
  }
  if (o.pass) o.detail = "50 cases, " + std::to_string(total) + " morphisms";
  return o;
}

// Expected boundaries as unnormalized composites.
RawPtr rg(const DimensionTable& t, int k, GlobeMap g) {
  return raw_glob(t, g.tgt_dim, realization(t).top_cell(k), g);
}
GlobeMap S(int i) { return GlobeMap::source(i - 1, i); }
GlobeMap Tt(int i) { return GlobeMap::target(i - 1, i); }
GlobeMap Id(int i) { return GlobeMap::identity(i); }
DimensionTable disk(int i) { return DimensionTable::disk(i); }

Outcome structural_boundaries() {
  Outcome o;
  FreeProvider provider;
  StructuralCatalog cat(provider);
  int checked = 0;
  auto expect = [&](const std::string& name, const TermPtr& h, const RawPtr& s, const RawPtr& t) {
    auto [bs, bt] = boundary_of(h);
    require(o, equal(bs, normalize(s)) && equal(bt, normalize(t)), name);
    ++checked;
  };
  for (int i = 1; i <= 4; ++i) {
    std::string at = "(i=" + std::to_string(i) + ")";
    DimensionTable t2 = uniform_table(i, 2, i - 1);
    DimensionTable t3 = uniform_table(i, 3, i - 1);
    expect("comp1" + at, cat.comp(1, i), rg(t2, 1, S(i)), rg(t2, 0, Tt(i)));
    for (int l = 2; l <= i; ++l) {
      DimensionTable big = uniform_table(i, 2, i - l);
      DimensionTable low = uniform_table(i - 1, 2, i - l);
      auto lower = to_raw(cat.comp(l - 1, i - 1));
      expect("comp" + std::to_string(l) + at, cat.comp(l, i),
             raw_comp(low, {rg(big, 0, S(i)), rg(big, 1, S(i))}, lower),
             raw_comp(low, {rg(big, 0, Tt(i)), rg(big, 1, Tt(i))}, lower));
    }
    for (int m = 2; m <= 4; ++m) {
      DimensionTable tm = uniform_table(i, m, i - 1);
      expect("mary" + std::to_string(m) + at, cat.comp_mary(i, m), rg(tm, m - 1, S(i)), rg(tm, 0, Tt(i)));
    }

    auto n = to_raw(cat.comp(1, i));
    auto xy = raw_comp(t2, {rg(t3, 0, Id(i)), rg(t3, 1, Id(i))}, n);
    auto yz = raw_comp(t2, {rg(t3, 1, Id(i)), rg(t3, 2, Id(i))}, n);
    expect("assoc1" + at, cat.assoc1(i), raw_comp(t2, {xy, rg(t3, 2, Id(i))}, n),
           raw_comp(t2, {rg(t3, 0, Id(i)), yz}, n));

    if (i >= 2) {
      DimensionTable w2 = uniform_table(i, 2, i - 2);
      DimensionTable w3 = uniform_table(i, 3, i - 2);
      DimensionTable low3 = uniform_table(i - 1, 3, i - 2);
      auto n2 = to_raw(cat.comp(2, i));
      auto a1 = to_raw(cat.assoc1(i - 1));
      auto xy2 = raw_comp(w2, {rg(w3, 0, Id(i)), rg(w3, 1, Id(i))}, n2);
      auto yz2 = raw_comp(w2, {rg(w3, 1, Id(i)), rg(w3, 2, Id(i))}, n2);
      auto a_t = raw_comp(low3, {rg(w3, 0, Tt(i)), rg(w3, 1, Tt(i)), rg(w3, 2, Tt(i))}, a1);
      auto a_s = raw_comp(low3, {rg(w3, 0, S(i)), rg(w3, 1, S(i)), rg(w3, 2, S(i))}, a1);
      expect("assoc2" + at, cat.assoc2(i), raw_comp(t2, {a_t, raw_comp(w2, {xy2, rg(w3, 2, Id(i))}, n2)}, n),
             raw_comp(t2, {raw_comp(w2, {rg(w3, 0, Id(i)), yz2}, n2), a_s}, n));
    }

    expect("unit" + at, cat.unit(i), rg(disk(i), 0, Id(i)), rg(disk(i), 0, Id(i)));
    auto k = to_raw(cat.unit(i - 1));
    auto tk = raw_comp(disk(i - 1), {rg(disk(i), 0, Tt(i))}, k);
    auto sk = raw_comp(disk(i - 1), {rg(disk(i), 0, S(i))}, k);
    auto [lambda, rho] = cat.unit_constraints(i);
    expect("lambda" + at, lambda, raw_comp(t2, {tk, rg(disk(i), 0, Id(i))}, n), rg(disk(i), 0, Id(i)));
    expect("rho" + at, rho, raw_comp(t2, {rg(disk(i), 0, Id(i)), sk}, n), rg(disk(i), 0, Id(i)));

    expect("inverse1" + at, cat.inverse(1, i), rg(disk(i), 0, Tt(i)), rg(disk(i), 0, S(i)));
    for (int l = 2; l <= i; ++l) {
      auto lower = to_raw(cat.inverse(l - 1, i - 1));
      expect("inverse" + std::to_string(l) + at, cat.inverse(l, i),
             raw_comp(disk(i - 1), {rg(disk(i), 0, S(i))}, lower),
             raw_comp(disk(i - 1), {rg(disk(i), 0, Tt(i))}, lower));
    }
    auto w = to_raw(cat.inverse(1, i));
    auto [left, right] = cat.inverse_constraints(i);
    expect("inverse_left" + at, left, raw_comp(t2, {w, rg(disk(i), 0, Id(i))}, n), sk);
    expect("inverse_right" + at, right, raw_comp(t2, {rg(disk(i), 0, Id(i)), w}, n), tk);
  }
  if (o.pass) o.detail = std::to_string(checked) + " entries";
  return o;
}

Outcome negative_parallelism() {
  Outcome o;
  FreeProvider provider;
  StructuralCatalog cat(provider);
  for (int i = 2; i <= 4; ++i) {
    auto [left, right] = cat.assoc2_naive(i);
    bool rejected = false;
    try {
      make_parallel_pair(left, right);
    } catch (const NotParallel&) {
      rejected = true;
    }
    require(o, rejected, "naive pair accepted at i=" + std::to_string(i));
    try {
      cat.assoc2_pair(i);
    } catch (const DomainError& e) {
      require(o, false, std::string("corrected pair rejected: ") + e.what());
    }
  }
  if (o.pass) o.detail = "i = 2..4";
  return o;
}

struct Theory {
  FreeProvider provider;
  StructuralCatalog cat{provider};
  explicit Theory(int d) { populate(cat, d); }
  ExtensionTower tower() const { return as_tower(provider); }
};

Outcome homotopy_relation() {
  Outcome o;
  Theory th(3);
  std::vector<std::pair<std::string, Model>> models{{"const5", constant_model(5, 3, th.tower())}};
  for (const auto& g : {cyclic_group(2), cyclic_group(3), symmetric_group3()}) {
    models.emplace_back(g.name, group_model(g, th.tower()));
  }
  std::size_t witnesses = 0, pairs = 0;
  for (const auto& [name, m] : models) {
    for (int i = 0; i + 1 <= m.trunc(); ++i) {
      std::string where = name + " i=" + std::to_string(i);
      auto r = check_homotopy_equivalence(m, i, th.cat);
      require(o, r.ok, where + ": " + r.failure);
      witnesses += r.witnesses;
      // Brute-force closure check of the relation itself.
      int n = m.carrier.count(i);
      std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) rel[x][y] = homotopy_related(m, i, x, y).has_value();
      }
      pairs += std::size_t(n) * n;
      for (int x = 0; x < n; ++x) {
        require(o, rel[x][x], where + ": not reflexive");
        for (int y = 0; y < n; ++y) {
          require(o, rel[x][y] == rel[y][x], where + ": not symmetric");
          for (int z = 0; z < n; ++z) require(o, !(rel[x][y] && rel[y][z]) || rel[x][z], where + ": not transitive");
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(pairs) + " cell pairs, " + std::to_string(witnesses) + " witnesses";
  return o;
}

Outcome pi_one() {
  Outcome o;
  Theory th(2);
  std::string times;
  for (const auto& g : {cyclic_group(2), cyclic_group(3), symmetric_group3()}) {
    auto t0 = Clock::now();
    auto m = group_model(g, th.tower());
    auto pi = pi_n(m, 0, 1, th.cat);
    auto p = varpi(m, 1, th.cat);
    bool same = pi.group.order() == g.order();
    // Class c corresponds to the group element its representative sits over.
    for (int a = 0; same && a < pi.group.order(); ++a) {
      for (int b = 0; b < pi.group.order(); ++b) {
        int ea = p.representative[pi.classes[a]], eb = p.representative[pi.classes[b]];
        int eab = p.representative[pi.classes[pi.group.mul[a][b]]];
        same = same && g.mul[ea][eb] == eab;
      }
    }
    double dt = since(t0);
    require(o, same, g.name + ": tables differ");
    require(o, dt < kPiOneLimit, g.name + " took " + fmt(dt));
    times += (times.empty() ? "" : ", ") + g.name + " " + fmt(dt);
  }
  if (o.pass) o.detail = times;
  return o;
}

Outcome weak_equivalences() {
  Outcome o;
  Theory th(2);
  auto z2 = group_model(cyclic_group(2), th.tower());
  auto id = is_weak_equivalence(z2, z2, identity_morphism(z2.carrier), th.cat);
  require(o, id.ok, "identity rejected: " + id.reason);

  auto point = one_point_model(2, th.tower());
  GSMorphism collapse;
  for (int k = 0; k <= z2.trunc(); ++k) collapse.map.emplace_back(z2.carrier.count(k), 0);
  auto bad = is_weak_equivalence(z2, point, collapse, th.cat);
  require(o, !bad.ok && bad.reason.find("pi1") != std::string::npos,
          "Z/2 -> point: " + (bad.ok ? std::string("accepted") : bad.reason));

  std::mt19937 rng(17);
  int relabels = 0;
  for (const auto& g : {cyclic_group(3), symmetric_group3()}) {
    auto m = group_model(g, th.tower());
    for (int trial = 0; trial < 3; ++trial) {
      GSMorphism perm;
      for (int k = 0; k <= m.trunc(); ++k) {
        std::vector<int> v(m.carrier.count(k));
        std::iota(v.begin(), v.end(), 0);
        std::shuffle(v.begin(), v.end(), rng);
        perm.map.push_back(v);
      }
      auto r = is_weak_equivalence(m, transport(m, perm), perm, th.cat);
      require(o, r.ok, g.name + " relabeling rejected: " + r.reason);
      ++relabels;
    }
  }
  if (o.pass) o.detail = "identity ok, point rejected (" + bad.reason + "), " + std::to_string(relabels) + " relabelings ok";
  return o;
}

Outcome coherator_gate() {
  Outcome o;
  Bounds literal{2, 6, 2, 3};
  try {
    auto tower = build_tower(Flavor::groupoid, Strategy::canonical, literal);
    auto fib = is_pseudo_coherator_up_to(tower, literal);
    auto r = check_theorem_310(tower, literal);
    require(o, fib.ok() && r.cellular && r.fibrant(), "bounds (2, 6, 3 levels): check fails");
  } catch (const BudgetExceeded& e) {
    require(o, false, std::string("bounds (2, 6, 3 levels) not buildable: ") + e.what());
  }
  // Evidence at bounds that fit.
  std::string evidence;
  for (Bounds b : {Bounds{1, 6, 2, 3}, Bounds{2, 3, 2, 2}}) {
    auto tower = build_tower(Flavor::groupoid, Strategy::canonical, b);
    auto r = check_theorem_310(tower, b);
    evidence += "; (" + std::to_string(b.max_dim) + ", " + std::to_string(b.max_size) + ", " +
                std::to_string(b.levels) + " levels): " + std::to_string(tower.symbol_count()) + " symbols, " +
                (r.cellular && r.fibrant() ? "cellular and fibrant" : "FAILS");
  }
  o.detail += evidence;
  return o;
}

bool contains_pair(const std::vector<ParallelPair>& pairs, const ParallelPair& p) {
  return std::any_of(pairs.begin(), pairs.end(), [&](const ParallelPair& q) { return pairs_equal(p, q); });
}

Outcome strategies() {
  Outcome o;
  std::size_t bl_symbols = 0, reduced_symbols = 0;
  for (Bounds b : {Bounds{1, 4, 2, 3}, Bounds{2, 3, 1, 2}, Bounds{2, 2, 2, 2}}) {
    auto bl = build_tower(Flavor::groupoid, Strategy::batanin_leinster, b);
    std::vector<ParallelPair> seen;
    for (const auto& l : bl.levels) {
      for (const auto& h : l.symbols) {
        require(o, !contains_pair(seen, h->pair), "BL duplicate " + to_sexpr(h->pair.f));
        seen.push_back(h->pair);
      }
    }
    bl_symbols += seen.size();

    auto reduced = build_tower(Flavor::groupoid, Strategy::reduced, b);
    auto canonical = build_tower(Flavor::groupoid, Strategy::canonical, b);
    std::map<int, SymbolPtr> to_canonical;
    SymbolMap map = [&](const SymbolPtr& s) { return to_canonical.at(s->id); };
    for (int n = 1; n <= reduced.top() && o.pass; ++n) {
      const auto& target = canonical.levels[n].symbols;
      for (const auto& h : reduced.levels[n].symbols) {
        auto p = translate(h->pair, map);
        auto it = std::find_if(target.begin(), target.end(),
                               [&](const SymbolPtr& c) { return pairs_equal(c->pair, p); });
        require(o, it != target.end(), "reduced pair missing at level " + std::to_string(n));
        if (it == target.end()) break;
        to_canonical[h->id] = *it;
        ++reduced_symbols;
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(bl_symbols) + " BL symbols distinct, " + std::to_string(reduced_symbols) +
               " reduced pairs found in canonical";
  }
  return o;
}

Outcome admissibility() {
  Outcome o;
  Bounds b{2, 5, 2, 1};
  auto pairs = enumerate_parallel_pairs(ExtensionTower{}, 0, b);
  std::size_t asymmetric = 0;
  for (const auto& p : pairs) {
    if (is_admissible(p) && !is_admissible(make_parallel_pair(p.g, p.f))) ++asymmetric;
  }
  require(o, asymmetric > 0, "no asymmetric pair among " + std::to_string(pairs.size()));

  auto inverse = make_parallel_pair(glob(disk(1), 0, 1), glob(disk(1), 0, 0));
  FreeProvider category(Flavor::category);
  bool rejected = false;
  try {
    category.lift(inverse);
  } catch (const NotAdmissible&) {
    rejected = true;
  }
  require(o, rejected, "(τ, σ) lifted in the category flavor");
  auto tower = build_tower(Flavor::category, Strategy::canonical, Bounds{1, 2, 2, 1});
  for (const auto& h : tower.levels[1].symbols) require(o, !pairs_equal(h->pair, inverse), "(τ, σ) adjoined");
  if (o.pass) {
    o.detail = std::to_string(asymmetric) + " of " + std::to_string(pairs.size()) + " pairs admissible one way only";
  }
  return o;
}

// Independent check of every boundary equation of every table entry.
std::optional<std::pair<int, std::vector<int>>> broken_entry(const Model& m) {
  auto lookup = m.theory.lookup();
  for (const auto& [id, table] : m.ops) {
    auto h = lookup(id);
    for (const auto& [args, out] : table) {
      int d = h->out_dim;
      if (d == 0) continue;
      int s = eval(m, h->pair.f, args), t = eval(m, h->pair.g, args);
      if (m.carrier.src[d][out] != s || m.carrier.tgt[d][out] != t) return std::pair{id, args};
    }
  }
  return std::nullopt;
}

Outcome segal_sensitivity() {
  Outcome o;
  Theory th(2);
  auto m = group_model(cyclic_group(3), th.tower());
  auto clean = check_segal(m);
  require(o, clean.ok, "group model rejected: " + clean.reason);
  std::size_t corruptions = 0, detected = 0;
  auto lookup = m.theory.lookup();
  for (const auto& [id, table] : m.ops) {
    int d = lookup(id)->out_dim;
    for (const auto& [args, out] : table) {
      for (int c = 0; c < m.carrier.count(d); ++c) {
        if (c == out) continue;
        auto bad = m;
        bad.ops[id][args] = c;
        ++corruptions;
        auto r = check_segal(bad);
        auto oracle = broken_entry(bad);
        require(o, r.ok == !oracle.has_value(), "checker and oracle disagree on symbol " + std::to_string(id));
        if (r.ok) continue;
        ++detected;
        // The reported tuple must itself violate an equation.
        auto only = bad;
        bool witness = false;
        auto h = lookup(r.symbol);
        if (bad.ops.contains(r.symbol) && bad.ops.at(r.symbol).contains(r.args)) {
          int w = bad.ops.at(r.symbol).at(r.args);
          int hd = h->out_dim;
          witness = bad.carrier.src[hd][w] != eval(bad, h->pair.f, r.args) ||
                    bad.carrier.tgt[hd][w] != eval(bad, h->pair.g, r.args);
        }
        require(o, witness, "reported tuple is not a witness");
      }
    }
  }
  require(o, detected > 0, "no corruption detected");
  if (o.pass) {
    o.detail = "Z/3: " + std::to_string(detected) + " of " + std::to_string(corruptions) +
               " single-entry corruptions break an equation; all detected with a witness";
  }
  return o;
}

Outcome layering() {
  Outcome o;
  std::mt19937 rng(99);
  int trials = 0;
  for (Bounds b : {Bounds{1, 4, 2, 3}, Bounds{2, 2, 2, 3}}) {
    for (int k = 0; k < 5; ++k, ++trials) {
      auto pres = globular::testing::random_presentation(rng, b, 3, 12);
      auto relayered = omega_layering(pres);
      std::multiset<int> before, after;
      for (const auto& l : pres.layers) {
        for (const auto& a : l) before.insert(a.symbol->id);
      }
      for (const auto& l : relayered.layers) {
        for (const auto& a : l) after.insert(a.symbol->id);
      }
      require(o, before == after, "attachment set changed");
      auto original = replay(pres, b);
      auto again = replay(relayered, b);
      require(o, same_symbols(original, again), "replayed towers differ");
      require(o, same_tower(again, replay(omega_layering(relayered), b)), "relayering is not stable");
    }
  }
  if (o.pass) o.detail = std::to_string(trials) + " random 3-layer presentations";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only, expect_fail;
  app.add_option("--only", only, "Run just these criteria");
  app.add_option("--expect-fail", expect_fail, "Criteria known to fail");
  CLI11_PARSE(app, argc, argv);

  std::vector<Criterion> criteria{
      {1, "globe hom formula", globe_homs},
      {2, "Θ₀ rigidity", rigidity},
      {3, "colimit universal property", colimits},
      {4, "structural boundary equations", structural_boundaries},
      {5, "negative parallelism", negative_parallelism},
      {6, "homotopy equivalence relation", homotopy_relation},
      {7, "π₁ of group models", pi_one},
      {8, "weak-equivalence checker", weak_equivalences},
      {9, "coherator gate", coherator_gate},
      {10, "strategy properties", strategies},
      {11, "admissibility asymmetry", admissibility},
      {12, "Segal checker sensitivity", segal_sensitivity},
      {13, "ω-layering round trip", layering},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(c.id);
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << " (" << o.detail
              << ", " << fmt(since(t0)) << ")" << std::endl;
  }
  std::set<int> expected;
  for (int id : expect_fail) {
    if (only.empty() || std::find(only.begin(), only.end(), id) != only.end()) expected.insert(id);
  }
  if (!expected.empty()) {
    std::cout << "expected to fail:";
    for (int id : expected) std::cout << " " << id;
    std::cout << std::endl;
  }
  return failed == expected ? 0 : 1;
}
