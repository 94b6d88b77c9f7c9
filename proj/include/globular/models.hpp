#ifndef GLOBULAR_MODELS_HPP
#define GLOBULAR_MODELS_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "globular/coherators.hpp"
#include "globular/structural.hpp"

namespace globular {

/// A finite group by its multiplication table, mul[a][b] = a·b.
struct FiniteGroup {
  std::string name;
  std::vector<std::vector<int>> mul;
  int identity = 0;

  int order() const { return static_cast<int>(mul.size()); }
  int inverse(int a) const;
  /// Associativity, identity and inverses on the table.
  bool valid() const;
};

FiniteGroup cyclic_group(int n);
/// S₃ as permutations of {0,1,2} in lexicographic order.
FiniteGroup symmetric_group3();
/// "z2", "z3", "z<n>", "s3", "trivial".
FiniteGroup parse_group(std::string_view name);
/// A bijection between element sets that respects multiplication.
bool is_isomorphism(const FiniteGroup& a, const FiniteGroup& b, const std::vector<int>& map);
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b);

/// A presheaf on a tower, truncated at carrier.trunc: the cells F_k with
/// their faces and, per interpreted symbol, a table from compatible tuples of
/// summand cells to an output cell of dimension out_dim.
struct Model {
  GlobularSet carrier;
  ExtensionTower theory;
  std::map<int, std::map<std::vector<int>, int>> ops;
  /// Where the model came from, e.g. {"kind": "group", "group": "z3"}.
  nlohmann::json generator;

  int trunc() const { return carrier.trunc; }
  /// Symbols with out_dim and codomain within trunc whose pairs only use
  /// such symbols.
  std::vector<SymbolPtr> interpretable() const;
  bool interprets(int symbol_id) const { return ops.contains(symbol_id); }
};

/// t applied to `args`, a compatible tuple of summand cells of t's codomain.
/// Throws std::invalid_argument when the tuple is not composable, a symbol
/// has no table, or the term leaves the truncation.
int eval(const Model& m, const TermPtr& t, const std::vector<int>& args);

/// Picks the output cell of h on args given the evaluated boundary (s, t);
/// std::nullopt leaves it to the default rule.
using Chooser = std::function<std::optional<int>(const Model&, const LiftingSymbol& h,
                                                 const std::vector<int>& args, int s, int t)>;

/// The table of h over every tuple of the carrier, evaluating its pair with
/// the tables m already has. The output for a tuple is the chooser's
/// answer, else the unique cell with boundary (s, t). Throws
/// CoherenceFailure when no cell has that boundary.
std::map<std::vector<int>, int> fill_table(const Model& m, const LiftingSymbol& h,
                                           const Chooser& chooser = {});

/// Product along the path between two points of the codomain, for symbols
/// of output dimension 1 on a group model.
Chooser path_product(const FiniteGroup& g);

/// Fills the tables of every interpretable symbol in level order.
Model interpret(const ExtensionTower& theory, GlobularSet carrier, const Chooser& chooser = {},
                nlohmann::json generator = {});

/// F_0 = {*}, F_1 = F_2 = G with 2-cells the identities. A symbol lifting
/// two points returns the product along the path between them in its
/// codomain; higher symbols must agree on both sides.
Model group_model(const FiniteGroup& g, const ExtensionTower& theory);
/// F_k = S for every k <= trunc, all faces the identity.
Model constant_model(int elements, int trunc, const ExtensionTower& theory);
Model one_point_model(int trunc, const ExtensionTower& theory);
Model disjoint_union(const Model& a, const Model& b);

/// Wraps provider symbols as a tower so models can interpret them.
ExtensionTower as_tower(const FreeProvider& provider);

struct SegalReport {
  bool ok = true;
  int symbol = 0;
  std::vector<int> args;
  std::string reason;
};

/// Carrier relations, totality of every table on exactly the globular
/// product of its codomain, and the boundary equations of each entry.
SegalReport check_segal(const Model& m);

/// An (i+1)-cell from x to y.
std::optional<int> homotopy_related(const Model& m, int i, int x, int y);

struct EquivalenceReport {
  bool ok = true;
  int dim = 0;
  std::size_t witnesses = 0;
  std::string failure;
};

/// ∼_i, i + 1 <= trunc, as an equivalence relation on every pair of i-cells, with the
/// witnesses κᵢ(x), ω(h) and ∇(k, h) checked against their boundaries.
EquivalenceReport check_homotopy_equivalence(const Model& m, int i, StructuralCatalog& cat);

/// ∼_0 classes of 0-cells.
std::vector<std::vector<int>> pi0(const Model& m);

/// ϖ_i(G): objects the (i-1)-cells, arrows the ∼_i classes of i-cells,
/// composition from ∇¹ᵢ.
struct PiGroupoid {
  int dim = 1;
  int objects = 0;
  /// class_of[c] for every i-cell c.
  std::vector<int> class_of;
  /// A representative i-cell per class.
  std::vector<int> representative;
  std::vector<int> src, tgt;
  /// comp[{a, b}] = a∗b for s(a) = t(b).
  std::map<std::pair<int, int>, int> comp;
  std::vector<int> identity;
  std::vector<int> inverse;

  int arrows() const { return static_cast<int>(representative.size()); }
  /// Category axioms and inverses on the finite tables.
  bool is_groupoid() const;
};

/// Throws std::invalid_argument when i < 1 or i + 1 > trunc, and
/// CoherenceFailure when ∇ does not descend to classes.
PiGroupoid varpi(const Model& m, int i, StructuralCatalog& cat);

/// π_i(G; x): the automorphisms of the iterated unit of x in ϖ_i.
struct PiGroup {
  FiniteGroup group;
  /// The ϖ_i arrow class of each element.
  std::vector<int> classes;
  int base = 0;
};
PiGroup pi_n(const Model& m, int x, int i, StructuralCatalog& cat);

/// The same model with k-cell c renamed to perm.map[k][c], a bijection.
Model transport(const Model& m, const GSMorphism& perm);

/// A carrier map commuting with faces and every table.
bool is_model_morphism(const Model& a, const Model& b, const GSMorphism& f);

struct WeqReport {
  bool ok = true;
  int checked_up_to = 0;
  std::string reason;
  /// Always set: the check only sees π_i for i + 1 <= trunc.
  std::string caveat;
};
WeqReport is_weak_equivalence(const Model& a, const Model& b, const GSMorphism& f,
                              StructuralCatalog& cat);

nlohmann::json to_json(const GlobularSet& x);
GlobularSet globular_set_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Model& m);
Model model_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GSMorphism& f);
GSMorphism morphism_from_json(const nlohmann::json& j);

}  // namespace globular

#endif
