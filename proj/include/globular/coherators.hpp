#ifndef GLOBULAR_COHERATORS_HPP
#define GLOBULAR_COHERATORS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "globular/extensions.hpp"

namespace globular {

enum class Flavor { groupoid, category };
enum class Strategy { canonical, batanin_leinster, reduced };

std::string to_string(Flavor f);
std::string to_string(Strategy s);
Flavor parse_flavor(std::string_view s);
/// Accepts "canonical", "bl", "batanin-leinster", "reduced".
Strategy parse_strategy(std::string_view s);

/// Enumeration bounds. A pair (f, g): D_i -> T is in bounds when i + 1 <=
/// max_dim, dimension(T) <= max_dim, length(T) <= max_len and both terms
/// have at most max_size nodes.
struct Bounds {
  int max_dim = 1;
  int max_size = 3;
  int max_len = 2;
  int levels = 1;
  /// Most parallel pairs per level, and most terms per table, before
  /// enumeration stops with BudgetExceeded.
  std::size_t budget = 1'000'000;

  bool operator==(const Bounds&) const = default;
};

/// Every normal term D_j -> T of C_n within (max_dim, max_size), grown by
/// size. Terms into a table are computed on first request and kept.
class TermSpace {
 public:
  /// Throws BudgetExceeded when a table would hold more than max_terms terms.
  TermSpace(std::vector<ExtensionLevel> levels, int max_dim, int max_size,
            std::size_t max_terms = SIZE_MAX);
  ~TermSpace();
  TermSpace(TermSpace&&) noexcept;
  TermSpace& operator=(TermSpace&&) noexcept;

  /// Terms D_dim -> t of size <= max_size, ordered by `compare`.
  const std::vector<TermPtr>& terms(const DimensionTable& t, int dim);
  int max_dim() const { return max_dim_; }
  int max_size() const { return max_size_; }

 private:
  struct TableTerms;
  TableTerms& build(const DimensionTable& t);

  std::vector<SymbolPtr> symbols_;
  int max_dim_;
  int max_size_;
  std::size_t max_terms_;
  std::map<DimensionTable, std::unique_ptr<TableTerms>> cache_;
};

struct ExtensionTower {
  Flavor flavor = Flavor::groupoid;
  Strategy strategy = Strategy::canonical;
  Bounds bounds;
  /// levels[0] is Θ₀ and holds no symbols.
  std::vector<ExtensionLevel> levels{ExtensionLevel{}};

  int top() const { return static_cast<int>(levels.size()) - 1; }
  std::size_t symbol_count() const;
  SymbolLookup lookup() const { return lookup_in(levels); }
  /// levels[0..n].
  std::vector<ExtensionLevel> prefix(int n) const;
};

/// Parallel pairs of C_n in bounds, ordered by codomain table, dimension,
/// total size, then structure. The category flavor keeps admissible pairs.
/// Throws BudgetExceeded past bounds.budget pairs.
std::vector<ParallelPair> enumerate_parallel_pairs(const ExtensionTower& tower, int n,
                                                   const Bounds& bounds);
std::vector<ParallelPair> enumerate_parallel_pairs(TermSpace& space, Flavor flavor,
                                                   const Bounds& bounds);

/// Θ₀ followed by bounds.levels stages of add_liftings over the
/// strategy-filtered pairs.
ExtensionTower build_tower(Flavor flavor, Strategy strategy, const Bounds& bounds);

/// Lifting lookup into the top level of a tower: first an adjoined symbol
/// for the pair, then a bounded search over terms D_{i+1} -> T.
class LiftingIndex {
 public:
  LiftingIndex(const ExtensionTower& tower, int search_bound);
  LiftingIndex(std::vector<ExtensionLevel> levels, int max_dim, int search_bound,
               std::size_t max_terms = SIZE_MAX);

  std::optional<TermPtr> find(const ParallelPair& p);

 private:
  struct Key {
    TermPtr src, tgt;
    bool operator==(const Key& o) const { return equal(src, o.src) && equal(tgt, o.tgt); }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return k.src->hash() * 31 + k.tgt->hash(); }
  };

  /// First symbol adjoined for each pair, keyed by (f, g).
  std::unordered_map<Key, SymbolPtr, KeyHash> direct_;
  TermSpace space_;
  std::map<std::pair<DimensionTable, int>, std::unordered_map<Key, TermPtr, KeyHash>> found_;
};

std::optional<TermPtr> has_lifting(const ExtensionTower& tower, const ParallelPair& p,
                                   int search_bound);

struct FibrancyReport {
  Bounds bounds;
  int pair_level = 0;
  int lift_level = 0;
  std::size_t pairs_checked = 0;
  std::vector<ParallelPair> failures;
  bool ok() const { return failures.empty(); }
};

/// Pairs of C_{max(N-1, 0)} within bounds, each looked up in C_N.
FibrancyReport is_pseudo_coherator_up_to(const ExtensionTower& tower, const Bounds& bounds);

nlohmann::json to_json(const Bounds& b);
Bounds bounds_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExtensionLevel& level);
nlohmann::json to_json(const ExtensionTower& tower);
/// Rebuilds symbols level by level; throws std::invalid_argument on bad input.
ExtensionTower tower_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FibrancyReport& r);

}  // namespace globular

#endif
