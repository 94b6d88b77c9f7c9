#ifndef GLOBULAR_STRUCTURAL_HPP
#define GLOBULAR_STRUCTURAL_HPP

#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "globular/coherators.hpp"

namespace globular {

/// Resolves a parallel pair to a term D_{i+1} -> T with that boundary.
class LiftingProvider {
 public:
  virtual ~LiftingProvider() = default;
  /// `hint` names the operation, for symbol labels.
  virtual TermPtr lift(const ParallelPair& p, std::string_view hint = {}) = 0;
};

/// Adjoins a fresh symbol the first time a pair is requested, at level one
/// above the pair's symbols, and answers it from then on.
class FreeProvider : public LiftingProvider {
 public:
  explicit FreeProvider(Flavor flavor = Flavor::groupoid) : flavor_(flavor) {}

  /// Throws NotAdmissible in the category flavor.
  TermPtr lift(const ParallelPair& p, std::string_view hint = {}) override;
  /// A new symbol for p even when one exists.
  TermPtr fresh_lift(const ParallelPair& p, std::string_view hint = {});

  Flavor flavor() const { return flavor_; }
  const std::vector<ExtensionLevel>& levels() const { return levels_; }
  std::size_t symbol_count() const { return next_id_ - 1; }
  SymbolLookup lookup() const { return lookup_in(levels_); }

 private:
  struct PairKeyHash {
    std::size_t operator()(const ParallelPair& p) const { return p.f->hash() * 131 + p.g->hash(); }
  };
  struct PairKeyEq {
    bool operator()(const ParallelPair& a, const ParallelPair& b) const { return pairs_equal(a, b); }
  };

  TermPtr adjoin(const ParallelPair& p, std::string_view hint);

  Flavor flavor_;
  int next_id_ = 1;
  std::vector<ExtensionLevel> levels_{ExtensionLevel{}};
  std::unordered_map<ParallelPair, TermPtr, PairKeyHash, PairKeyEq> answers_;
};

/// Answers from an existing tower; throws ProviderFailure when the tower
/// has no lifting within the search bound.
class TowerProvider : public LiftingProvider {
 public:
  TowerProvider(const ExtensionTower& tower, int search_bound);
  TermPtr lift(const ParallelPair& p, std::string_view hint = {}) override;

 private:
  Flavor flavor_;
  LiftingIndex index_;
};

/// The named structural operations, built over a provider and memoised.
/// Each *_pair method returns the parallel pair the operation lifts.
class StructuralCatalog {
 public:
  explicit StructuralCatalog(LiftingProvider& provider) : provider_(provider) {}

  /// ∇ˡᵢ : D_i -> (i i | i-l), l >= 1, i >= l.
  TermPtr comp(int l, int i);
  ParallelPair comp_pair(int l, int i);
  /// m-ary composition into the length-m sum over D_{i-1}, i >= 1, m >= 2.
  TermPtr comp_mary(int i, int m);
  ParallelPair comp_mary_pair(int i, int m);
  /// A¹ᵢ : D_{i+1} -> (i i i | i-1 i-1), i >= 1.
  TermPtr assoc1(int i);
  ParallelPair assoc1_pair(int i);
  /// A²ᵢ : D_{i+1} -> (i i i | i-2 i-2), i >= 2.
  TermPtr assoc2(int i);
  ParallelPair assoc2_pair(int i);
  /// The two arrows ((∇²⨿id)∇², (id⨿∇²)∇²), which are not parallel.
  std::pair<TermPtr, TermPtr> assoc2_naive(int i);
  /// κᵢ : D_{i+1} -> D_i, i >= 0.
  TermPtr unit(int i);
  ParallelPair unit_pair(int i);
  /// (λᵢ, ρᵢ), i >= 1.
  std::pair<TermPtr, TermPtr> unit_constraints(int i);
  ParallelPair left_unit_pair(int i);
  ParallelPair right_unit_pair(int i);
  /// ωˡᵢ : D_i -> D_i, l >= 1, i >= l.
  TermPtr inverse(int l, int i);
  ParallelPair inverse_pair(int l, int i);
  /// Left and right inverse constraints, i >= 1.
  std::pair<TermPtr, TermPtr> inverse_constraints(int i);
  ParallelPair left_inverse_pair(int i);
  ParallelPair right_inverse_pair(int i);

  /// "comp", "mary", "assoc1", "assoc2", "unit", "lambda", "rho",
  /// "inverse", "inverse_left", "inverse_right" with parameters l, i, m.
  TermPtr derive(std::string_view op, const std::map<std::string, int>& params);

 private:
  TermPtr memo(const std::string& key, const std::function<ParallelPair()>& pair);

  LiftingProvider& provider_;
  std::map<std::string, TermPtr> cache_;
};

/// Derives every catalog entry whose output and codomain have dimension at
/// most max_dim; ternary composition is the only m-ary one. Inverses are
/// skipped when the provider refuses them.
void populate(StructuralCatalog& cat, int max_dim);

/// Parses "comp:l=2,i=3" into ("comp", {l: 2, i: 3}).
std::pair<std::string, std::map<std::string, int>> parse_op(std::string_view text);

/// The table (i ... i | b ... b) with m summands.
DimensionTable uniform_table(int i, int m, int b);

}  // namespace globular

#endif
