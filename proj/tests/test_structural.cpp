#include <gtest/gtest.h>

#include "globular/structural.hpp"

using namespace globular;

namespace {

// Expected boundaries are written as unnormalized composites and sent
// through the rewrite system, a separate route from the catalog's own
// composition calls.
RawPtr rg(const DimensionTable& t, int k, GlobeMap g) {
  return raw_glob(t, g.tgt_dim, realization(t).top_cell(k), g);
}
GlobeMap S(int i) { return GlobeMap::source(i - 1, i); }
GlobeMap Tt(int i) { return GlobeMap::target(i - 1, i); }
GlobeMap Id(int i) { return GlobeMap::identity(i); }
DimensionTable disk(int i) { return DimensionTable::disk(i); }

void expect_boundary(const TermPtr& h, const RawPtr& s, const RawPtr& t) {
  auto [bs, bt] = boundary_of(h);
  EXPECT_TRUE(equal(bs, normalize(s))) << to_display(bs) << " vs " << to_sexpr(s);
  EXPECT_TRUE(equal(bt, normalize(t))) << to_display(bt) << " vs " << to_sexpr(t);
}

struct Catalog : ::testing::Test {
  FreeProvider provider;
  StructuralCatalog cat{provider};
};

}  // namespace

TEST_F(Catalog, Composition) {
  for (int i = 1; i <= 4; ++i) {
    DimensionTable t = uniform_table(i, 2, i - 1);
    expect_boundary(cat.comp(1, i), rg(t, 1, S(i)), rg(t, 0, Tt(i)));
    for (int l = 2; l <= i; ++l) {
      DimensionTable big = uniform_table(i, 2, i - l);
      DimensionTable low = uniform_table(i - 1, 2, i - l);
      auto lower = to_raw(cat.comp(l - 1, i - 1));
      expect_boundary(cat.comp(l, i), raw_comp(low, {rg(big, 0, S(i)), rg(big, 1, S(i))}, lower),
                      raw_comp(low, {rg(big, 0, Tt(i)), rg(big, 1, Tt(i))}, lower));
    }
  }
}

TEST_F(Catalog, MaryComposition) {
  for (int i = 1; i <= 4; ++i) {
    for (int m = 2; m <= 4; ++m) {
      DimensionTable t = uniform_table(i, m, i - 1);
      expect_boundary(cat.comp_mary(i, m), rg(t, m - 1, S(i)), rg(t, 0, Tt(i)));
    }
    EXPECT_TRUE(pairs_equal(cat.comp_mary_pair(i, 2), cat.comp_pair(1, i)));
    EXPECT_TRUE(equal(cat.comp_mary(i, 2), cat.comp(1, i)));
  }
}

TEST_F(Catalog, Associativity) {
  for (int i = 1; i <= 4; ++i) {
    DimensionTable t2 = uniform_table(i, 2, i - 1);
    DimensionTable t3 = uniform_table(i, 3, i - 1);
    auto n = to_raw(cat.comp(1, i));
    auto xy = raw_comp(t2, {rg(t3, 0, Id(i)), rg(t3, 1, Id(i))}, n);
    auto yz = raw_comp(t2, {rg(t3, 1, Id(i)), rg(t3, 2, Id(i))}, n);
    expect_boundary(cat.assoc1(i), raw_comp(t2, {xy, rg(t3, 2, Id(i))}, n),
                    raw_comp(t2, {rg(t3, 0, Id(i)), yz}, n));
  }
}

TEST_F(Catalog, AssociativityNormalFormsByHand) {
  // (x*y)*z and x*(y*z) on 1-cells.
  auto [s, t] = boundary_of(cat.assoc1(1));
  ASSERT_EQ(s->kind(), TermKind::lift);
  EXPECT_EQ(s->components()[0]->kind(), TermKind::lift);
  EXPECT_EQ(s->components()[1]->kind(), TermKind::glob);
  EXPECT_EQ(t->components()[0]->kind(), TermKind::glob);
  EXPECT_EQ(t->components()[1]->kind(), TermKind::lift);
  EXPECT_EQ(to_display(s), "comp1_1[comp1_1[1.id_1, 2.id_1], 3.id_1]");
  EXPECT_EQ(to_display(t), "comp1_1[1.id_1, comp1_1[2.id_1, 3.id_1]]");
}

TEST_F(Catalog, LevelTwoAssociativity) {
  for (int i = 2; i <= 4; ++i) {
    auto [left, right] = cat.assoc2_naive(i);
    EXPECT_THROW(make_parallel_pair(left, right), NotParallel) << i;
    EXPECT_NO_THROW(cat.assoc2_pair(i));

    DimensionTable t2 = uniform_table(i, 2, i - 1);
    DimensionTable w2 = uniform_table(i, 2, i - 2);
    DimensionTable t3 = uniform_table(i, 3, i - 2);
    DimensionTable low3 = uniform_table(i - 1, 3, i - 2);
    auto n1 = to_raw(cat.comp(1, i));
    auto n2 = to_raw(cat.comp(2, i));
    auto a1 = to_raw(cat.assoc1(i - 1));
    auto xy = raw_comp(w2, {rg(t3, 0, Id(i)), rg(t3, 1, Id(i))}, n2);
    auto yz = raw_comp(w2, {rg(t3, 1, Id(i)), rg(t3, 2, Id(i))}, n2);
    auto xy_z = raw_comp(w2, {xy, rg(t3, 2, Id(i))}, n2);
    auto x_yz = raw_comp(w2, {rg(t3, 0, Id(i)), yz}, n2);
    auto a_t = raw_comp(low3, {rg(t3, 0, Tt(i)), rg(t3, 1, Tt(i)), rg(t3, 2, Tt(i))}, a1);
    auto a_s = raw_comp(low3, {rg(t3, 0, S(i)), rg(t3, 1, S(i)), rg(t3, 2, S(i))}, a1);
    expect_boundary(cat.assoc2(i), raw_comp(t2, {a_t, xy_z}, n1), raw_comp(t2, {x_yz, a_s}, n1));
  }
}

TEST_F(Catalog, Units) {
  for (int i = 0; i <= 5; ++i) {
    expect_boundary(cat.unit(i), rg(disk(i), 0, Id(i)), rg(disk(i), 0, Id(i)));
    EXPECT_EQ(cat.unit(i)->dim(), i + 1);
  }
  for (int i = 1; i <= 4; ++i) {
    DimensionTable t2 = uniform_table(i, 2, i - 1);
    auto n = to_raw(cat.comp(1, i));
    auto k = to_raw(cat.unit(i - 1));
    auto tk = raw_comp(disk(i - 1), {rg(disk(i), 0, Tt(i))}, k);
    auto sk = raw_comp(disk(i - 1), {rg(disk(i), 0, S(i))}, k);
    auto [lambda, rho] = cat.unit_constraints(i);
    expect_boundary(lambda, raw_comp(t2, {tk, rg(disk(i), 0, Id(i))}, n), rg(disk(i), 0, Id(i)));
    expect_boundary(rho, raw_comp(t2, {rg(disk(i), 0, Id(i)), sk}, n), rg(disk(i), 0, Id(i)));
  }
}

TEST_F(Catalog, Inverses) {
  for (int i = 1; i <= 4; ++i) {
    expect_boundary(cat.inverse(1, i), rg(disk(i), 0, Tt(i)), rg(disk(i), 0, S(i)));
    for (int l = 2; l <= i; ++l) {
      auto lower = to_raw(cat.inverse(l - 1, i - 1));
      expect_boundary(cat.inverse(l, i), raw_comp(disk(i - 1), {rg(disk(i), 0, S(i))}, lower),
                      raw_comp(disk(i - 1), {rg(disk(i), 0, Tt(i))}, lower));
    }
    DimensionTable t2 = uniform_table(i, 2, i - 1);
    auto n = to_raw(cat.comp(1, i));
    auto w = to_raw(cat.inverse(1, i));
    auto k = to_raw(cat.unit(i - 1));
    auto [left, right] = cat.inverse_constraints(i);
    expect_boundary(left, raw_comp(t2, {w, rg(disk(i), 0, Id(i))}, n),
                    raw_comp(disk(i - 1), {rg(disk(i), 0, S(i))}, k));
    expect_boundary(right, raw_comp(t2, {rg(disk(i), 0, Id(i)), w}, n),
                    raw_comp(disk(i - 1), {rg(disk(i), 0, Tt(i))}, k));
  }
}

TEST_F(Catalog, SecondLiftingIsHomotopic) {
  for (int i = 1; i <= 3; ++i) {
    TermPtr n = cat.comp(1, i);
    TermPtr other = provider.fresh_lift(cat.comp_pair(1, i));
    EXPECT_FALSE(equal(n, other));
    ParallelPair p = make_parallel_pair(n, other);
    TermPtr gamma = provider.lift(p);
    EXPECT_TRUE(equal(gamma->src(), n));
    EXPECT_TRUE(equal(gamma->tgt(), other));
    TermPtr a = cat.assoc1(i);
    TermPtr a2 = provider.fresh_lift(cat.assoc1_pair(i));
    EXPECT_NO_THROW(make_parallel_pair(a, a2));
  }
}

TEST(CategoryFlavor, InversesRejected) {
  FreeProvider provider(Flavor::category);
  StructuralCatalog cat(provider);
  for (int i = 1; i <= 3; ++i) {
    EXPECT_NO_THROW(cat.comp(1, i));
    EXPECT_NO_THROW(cat.comp_mary(i, 3));
    EXPECT_NO_THROW(cat.assoc1(i));
    EXPECT_NO_THROW(cat.unit(i));
    EXPECT_NO_THROW(cat.unit_constraints(i));
    EXPECT_THROW(cat.inverse(1, i), NotAdmissible);
    for (int l = 2; l <= i; ++l) EXPECT_NO_THROW(cat.comp(l, i));
  }
  EXPECT_NO_THROW(cat.assoc2(2));
  EXPECT_NO_THROW(cat.assoc2(3));
  // The inverse-constraint pairs, built over a groupoid catalog.
  FreeProvider free;
  StructuralCatalog g(free);
  for (int i = 1; i <= 3; ++i) {
    EXPECT_FALSE(is_admissible(g.inverse_pair(1, i)));
    EXPECT_FALSE(is_admissible(g.left_inverse_pair(i)));
    EXPECT_FALSE(is_admissible(g.right_inverse_pair(i)));
  }
}

TEST(Providers, TowerProvider) {
  Bounds b{2, 3, 2, 1};
  ExtensionTower tower = build_tower(Flavor::groupoid, Strategy::canonical, b);
  TowerProvider provider(tower, 3);
  StructuralCatalog cat(provider);
  auto k = cat.unit(0);
  EXPECT_TRUE(equal(k->src(), identity_term(0)));
  EXPECT_NO_THROW(cat.comp(1, 1));
  EXPECT_NO_THROW(cat.inverse(1, 1));
  // Unit on D_2 is out of bounds.
  EXPECT_THROW(cat.unit(2), ProviderFailure);
}

TEST(Providers, ParseOp) {
  auto [name, params] = parse_op("comp:l=2,i=3");
  EXPECT_EQ(name, "comp");
  EXPECT_EQ(params.at("l"), 2);
  EXPECT_EQ(params.at("i"), 3);
  EXPECT_EQ(parse_op("assoc2:i=2").second.at("i"), 2);
  EXPECT_THROW(parse_op("unit:i"), std::invalid_argument);
  FreeProvider p;
  StructuralCatalog cat(p);
  EXPECT_TRUE(equal(cat.derive("unit", {{"i", 1}}), cat.unit(1)));
  EXPECT_THROW(cat.derive("pentagon", {}), std::invalid_argument);
}
