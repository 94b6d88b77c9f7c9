#include <gtest/gtest.h>

#include <set>

#include "globular/wfs.hpp"
#include "support.hpp"

using namespace globular;

namespace {

DimensionTable T(const char* s) { return parse_table(s); }

Attachment attach(const ParallelPair& p) { return {{p.codomain, p.dim}, p, nullptr}; }

ParallelPair unit_pair() { return make_parallel_pair(identity_term(0), identity_term(0)); }
ParallelPair comp_pair() {
  DimensionTable two = T("(1 1 | 0)");
  return make_parallel_pair(summand_face(two, 1, GlobeMap::source(0, 1)),
                            summand_face(two, 0, GlobeMap::target(0, 1)));
}
ParallelPair inverse_pair() {
  return make_parallel_pair(glob(DimensionTable::disk(1), 0, 1), glob(DimensionTable::disk(1), 0, 0));
}

std::set<std::string> attachments(const CellularPresentation& p) {
  std::set<std::string> out;
  for (const auto& layer : p.layers) {
    for (const auto& a : layer) {
      out.insert(std::to_string(a.symbol ? a.symbol->id : 0) + " " + to_sexpr(a.pair.f) + " " +
                 to_sexpr(a.pair.g) + " " + std::to_string(a.pair.dim + 1));
    }
  }
  return out;
}

bool dependencies_in_order(const CellularPresentation& p) {
  std::set<int> seen;
  for (const auto& layer : p.layers) {
    for (const auto& a : layer) {
      for (const auto& t : {a.pair.f, a.pair.g}) {
        for (const auto& s : symbols_of(t)) {
          if (!seen.contains(s->id)) return false;
        }
      }
    }
    for (const auto& a : layer) seen.insert(a.symbol->id);
  }
  return true;
}

}  // namespace

TEST(Pushout, Layers) {
  std::vector<ExtensionLevel> levels{ExtensionLevel{}};
  auto empty = pushout_layer(levels, {});
  EXPECT_EQ(empty.index, 1);
  EXPECT_TRUE(empty.symbols.empty());

  auto one = pushout_layer(levels, {attach(unit_pair())});
  ASSERT_EQ(one.symbols.size(), 1u);
  EXPECT_TRUE(pairs_equal(one.symbols[0]->pair, unit_pair()));
  EXPECT_EQ(one.symbols[0]->out_dim, 1);

  // A layer of independent pairs against one pushout per pair.
  std::vector<ParallelPair> pairs{unit_pair(), comp_pair(), inverse_pair()};
  ExtensionTower together, apart;
  std::vector<Attachment> layer;
  for (const auto& p : pairs) layer.push_back(attach(p));
  together.levels.push_back(pushout_layer(together.levels, layer));
  for (const auto& p : pairs) apart.levels.push_back(pushout_layer(apart.levels, {attach(p)}));
  EXPECT_TRUE(same_symbols(together, apart));
  EXPECT_FALSE(same_tower(together, apart));

  Attachment wrong = attach(unit_pair());
  wrong.cell.dim = 1;
  EXPECT_THROW(pushout_layer(levels, {wrong}), std::invalid_argument);
  auto foreign = make_symbol(9, 1, unit_pair());
  auto uses_foreign = make_parallel_pair(lift(foreign, {identity_term(0)}), lift(foreign, {identity_term(0)}));
  EXPECT_THROW(pushout_layer(levels, {attach(uses_foreign)}), std::invalid_argument);
}

TEST(Pushout, KeepsSymbolIds) {
  auto h = make_symbol(7, 1, unit_pair(), "unit_0");
  std::vector<ExtensionLevel> levels{ExtensionLevel{}};
  auto level = pushout_layer(levels, {{{T("(0)"), 0}, unit_pair(), h}, attach(comp_pair())});
  ASSERT_EQ(level.symbols.size(), 2u);
  EXPECT_EQ(level.symbols[0]->id, 7);
  EXPECT_EQ(level.symbols[0]->label, "unit_0");
  EXPECT_EQ(level.symbols[1]->id, 1);
  EXPECT_THROW(pushout_layer(levels, {{{T("(0)"), 0}, unit_pair(), h}, {{T("(0)"), 0}, unit_pair(), h}}),
               std::invalid_argument);
}

TEST(Presentation, ReplayReproducesTowers) {
  for (auto s : {Strategy::canonical, Strategy::batanin_leinster, Strategy::reduced}) {
    for (Bounds b : {Bounds{1, 4, 2, 3}, Bounds{2, 2, 2, 2}}) {
      auto tower = build_tower(Flavor::groupoid, s, b);
      auto pres = presentation_from_tower(tower);
      EXPECT_EQ(pres.attachment_count(), tower.symbol_count());
      EXPECT_TRUE(same_tower(replay(pres, b, s), tower));
    }
  }
}

TEST(CellularFibrant, CanonicalTowers) {
  for (Bounds b : {Bounds{1, 4, 2, 3}, Bounds{2, 2, 2, 2}, Bounds{2, 3, 2, 2}}) {
    auto tower = build_tower(Flavor::groupoid, Strategy::canonical, b);
    auto r = check_theorem_310(tower, b);
    EXPECT_TRUE(r.cellular);
    EXPECT_TRUE(r.fibrant()) << r.fibrancy.failures.size();
    EXPECT_TRUE(r.coherator_by_construction);
    EXPECT_TRUE(r.consistent());
  }
}

TEST(CellularFibrant, ThetaZeroAndTruncation) {
  Bounds b{2, 2, 2, 2};
  auto theta0 = check_theorem_310(ExtensionTower{}, b);
  EXPECT_TRUE(theta0.cellular);
  EXPECT_FALSE(theta0.fibrant());
  EXPECT_FALSE(theta0.coherator_by_construction);

  auto tower = build_tower(Flavor::groupoid, Strategy::canonical, b);
  auto& top = tower.levels.back().symbols;
  top.resize(top.size() / 2);
  auto r = check_theorem_310(tower, b);
  EXPECT_TRUE(r.cellular);
  EXPECT_FALSE(r.fibrant());
  EXPECT_FALSE(r.fibrancy.failures.empty());
  EXPECT_FALSE(r.consistent());

  auto j = to_json(r);
  EXPECT_EQ(j.at("fibrant"), false);
  EXPECT_EQ(j.at("bounds").at("max_size"), 2);
}

TEST(Layering, MovesLatePairsForward) {
  ExtensionTower tower;
  tower.levels.push_back(add_liftings(tower.levels, std::vector<ParallelPair>{unit_pair()}));
  tower.levels.push_back(add_liftings(tower.levels, std::vector<ParallelPair>{comp_pair()}));
  auto kappa = tower.levels[1].symbols[0];
  auto loop = make_parallel_pair(lift(kappa, {identity_term(0)}), lift(kappa, {identity_term(0)}));
  tower.levels.push_back(add_liftings(tower.levels, std::vector<ParallelPair>{loop}));
  auto pres = presentation_from_tower(tower);
  auto out = omega_layering(pres);
  ASSERT_EQ(out.layers.size(), 2u);
  EXPECT_EQ(out.layers[0].size(), 2u);
  EXPECT_EQ(out.layers[1].size(), 1u);
  EXPECT_EQ(attachments(out), attachments(pres));
  EXPECT_EQ(term_depth(loop.f), 1);
  EXPECT_EQ(term_depth(identity_term(2)), 0);
}

TEST(Layering, RoundTrip) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    Bounds b = trial % 2 ? Bounds{1, 4, 2, 3} : Bounds{2, 2, 2, 3};
    auto pres = globular::testing::random_presentation(rng, b, 3, 12);
    auto once = omega_layering(pres);
    auto twice = omega_layering(once);
    EXPECT_EQ(attachments(once), attachments(pres));
    EXPECT_TRUE(dependencies_in_order(once));
    auto original = replay(pres, b);
    auto relayered = replay(once, b);
    EXPECT_TRUE(same_symbols(original, relayered));
    EXPECT_TRUE(same_tower(relayered, replay(twice, b)));
    EXPECT_LE(once.layers.size(), pres.layers.size());
  }
}

TEST(Layering, JsonRoundTrip) {
  std::mt19937 rng(9);
  auto pres = globular::testing::random_presentation(rng, {1, 4, 2, 3}, 3, 8);
  auto back = presentation_from_json(nlohmann::json::parse(to_json(pres).dump()));
  EXPECT_EQ(attachments(back), attachments(pres));
  EXPECT_EQ(to_json(back), to_json(pres));
  EXPECT_TRUE(same_tower(replay(back), replay(pres)));
  EXPECT_THROW(presentation_from_json(nlohmann::json{{"layers", 1}}), std::invalid_argument);
}

TEST(LiftInto, OwnTower) {
  Bounds b{2, 2, 2, 2};
  auto tower = build_tower(Flavor::groupoid, Strategy::canonical, b);
  TowerProvider provider(tower, b.max_size);
  TermTarget target{provider};
  auto assignment = lift_into(tower, target);
  ASSERT_EQ(assignment.size(), tower.symbol_count());
  // A repeated pair resolves to its first symbol.
  for (const auto& level : tower.levels) {
    for (const auto& h : level.symbols) {
      const auto& t = assignment.at(h->id);
      ASSERT_EQ(t->kind(), TermKind::lift);
      EXPECT_TRUE(pairs_equal(t->symbol()->pair, h->pair) || t->symbol()->id == h->id);
    }
  }
}

TEST(LiftInto, Flavors) {
  Bounds b{2, 2, 2, 1};
  auto category = build_tower(Flavor::category, Strategy::canonical, b);
  FreeProvider strict(Flavor::category);
  TermTarget into_category{strict};
  EXPECT_EQ(lift_into(category, into_category).size(), category.symbol_count());

  auto groupoid = build_tower(Flavor::groupoid, Strategy::canonical, b);
  FreeProvider strict2(Flavor::category);
  TermTarget refuses{strict2};
  EXPECT_THROW(lift_into(groupoid, refuses), NotAdmissible);
}

TEST(LiftInto, ModelTargetMatchesModels) {
  auto tower = build_tower(Flavor::groupoid, Strategy::canonical, {2, 2, 2, 2});
  for (const auto& g : {cyclic_group(3), symmetric_group3()}) {
    auto m = group_model(g, tower);
    ModelTarget target(tower, m.carrier, path_product(g));
    auto tables = lift_into(tower, target);
    for (const auto& [id, table] : m.ops) EXPECT_EQ(tables.at(id), table);
    EXPECT_EQ(target.model.ops, m.ops);
  }
}

// Substituting provider answers and then evaluating equals evaluating the
// original symbols.
TEST(LiftInto, CommutesWithEvaluation) {
  Bounds b{2, 2, 2, 2};
  auto tower = build_tower(Flavor::groupoid, Strategy::canonical, b);
  FreeProvider provider;
  TermTarget target{provider};
  auto assignment = lift_into(tower, target);
  auto theory = as_tower(provider);
  auto g = symmetric_group3();
  auto source = group_model(g, tower);
  auto image = group_model(g, theory);
  int compared = 0;
  for (const auto& h : source.interpretable()) {
    std::vector<TermPtr> comps;
    for (int k = 0; k < h->codomain.length(); ++k) comps.push_back(summand(h->codomain, k));
    auto own = lift(h, comps);
    for (const auto& args : globular_product(source.carrier, h->codomain)) {
      EXPECT_EQ(eval(source, own, args), eval(image, assignment.at(h->id), args));
      ++compared;
    }
  }
  EXPECT_GT(compared, 100);
}
