#ifndef GLOBULAR_WFS_HPP
#define GLOBULAR_WFS_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "globular/coherators.hpp"
#include "globular/models.hpp"
#include "globular/structural.hpp"

namespace globular {

/// The generating cofibration S(T, i) -> B(T, i): two parallel arrows
/// D_i -> T, then a lifting D_{i+1} -> T for them.
struct GenCofibration {
  DimensionTable table;
  int dim = 0;

  bool operator==(const GenCofibration&) const = default;
};

/// A pushout of S(T, i) -> B(T, i) along `pair`. `symbol` is the lifting it
/// adjoins; its id and label are kept when the presentation is replayed.
struct Attachment {
  GenCofibration cell;
  ParallelPair pair;
  SymbolPtr symbol;
};

/// Layers of attachments; layer k becomes tower level k + 1. Pairs may only
/// mention symbols attached in earlier layers.
struct CellularPresentation {
  Flavor flavor = Flavor::groupoid;
  std::vector<std::vector<Attachment>> layers;

  std::size_t attachment_count() const;
};

/// The next tower level: one symbol per attachment, the pushout along the
/// sum of the S(T, i) -> B(T, i). Attachments with a symbol keep its id and
/// label, the rest are numbered after the tower's symbols. Throws
/// std::invalid_argument for pairs that mention symbols outside `levels`.
ExtensionLevel pushout_layer(std::span<const ExtensionLevel> levels, const std::vector<Attachment>& layer);

/// One layer per tower level above Θ₀.
CellularPresentation presentation_from_tower(const ExtensionTower& tower);

/// Sequential pushouts of every layer, translating pairs onto the symbols
/// created along the way.
ExtensionTower replay(const CellularPresentation& pres, const Bounds& bounds = {},
                      Strategy strategy = Strategy::canonical);

/// Same levels, and the same ids, labels and pairs in each.
bool same_tower(const ExtensionTower& a, const ExtensionTower& b);
/// The same symbols with the same pairs, whatever their levels.
bool same_symbols(const ExtensionTower& a, const ExtensionTower& b);

struct Theorem310Report {
  Bounds bounds;
  /// The tower is reproduced by replaying its own presentation.
  bool cellular = false;
  FibrancyReport fibrancy;
  /// Canonical towers adjoin every pair they enumerate.
  bool coherator_by_construction = false;

  bool fibrant() const { return fibrancy.ok(); }
  /// A tower built as a coherator must be cellular and fibrant.
  bool consistent() const { return !coherator_by_construction || (cellular && fibrant()); }
};

Theorem310Report check_theorem_310(const ExtensionTower& tower, const Bounds& bounds);

/// Nesting depth of lifting symbols, 0 for Θ₀ arrows.
int term_depth(const TermPtr& t);

/// Re-layers so that each attachment sits in the earliest layer n >= 1 with
/// depth(pair) <= n and all its dependencies in layers below n.
CellularPresentation omega_layering(const CellularPresentation& pres);

/// t with every symbol h replaced by the term assigned to it.
TermPtr substitute(const TermPtr& t, const std::map<int, TermPtr>& assignment);

/// Sends each symbol, in level order, to a term of another theory lifting
/// the image of its pair.
struct TermTarget {
  using Value = TermPtr;
  LiftingProvider& provider;

  TermPtr resolve(const LiftingSymbol& h, const std::map<int, TermPtr>& done);
};

/// Sends each symbol to an operation table on a fixed carrier. Symbols the
/// carrier's truncation cannot see get an empty table.
struct ModelTarget {
  using Value = std::map<std::vector<int>, int>;
  Model model;
  Chooser chooser;

  ModelTarget(const ExtensionTower& theory, GlobularSet carrier, Chooser c = {});
  Value resolve(const LiftingSymbol& h, const std::map<int, Value>& done);
};

/// The morphism of globular extensions out of a tower given by answering
/// its pairs in order. Failures of the target propagate.
template <class Target>
std::map<int, typename Target::Value> lift_into(const ExtensionTower& tower, Target& target) {
  std::map<int, typename Target::Value> out;
  for (const auto& level : tower.levels) {
    for (const auto& h : level.symbols) out.emplace(h->id, target.resolve(*h, out));
  }
  return out;
}

nlohmann::json to_json(const CellularPresentation& pres);
CellularPresentation presentation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Theorem310Report& r);

}  // namespace globular

#endif
