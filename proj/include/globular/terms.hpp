#ifndef GLOBULAR_TERMS_HPP
#define GLOBULAR_TERMS_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "globular/errors.hpp"
#include "globular/globes.hpp"
#include "globular/pasting.hpp"

namespace globular {

struct LiftingSymbol;
using SymbolPtr = std::shared_ptr<const LiftingSymbol>;

class Term;
using TermPtr = std::shared_ptr<const Term>;

enum class TermKind { glob, lift };

/// A normal-form arrow D_dim -> table of a free extension of Θ₀.
///
/// Either a cell of realize(table), or a lifting symbol h applied along a
/// sum arrow codomain(h) -> table (one component per summand). Nodes are
/// immutable and carry their boundary terms, so boundary_of is O(1).
class Term {
 public:
  TermKind kind() const { return kind_; }
  const DimensionTable& table() const { return table_; }
  int dim() const { return dim_; }
  /// Cell index in realize(table) for glob nodes.
  int cell() const { return cell_; }
  const SymbolPtr& symbol() const { return symbol_; }
  const std::vector<TermPtr>& components() const { return components_; }
  /// Boundary terms, null when dim() == 0.
  const TermPtr& src() const { return src_; }
  const TermPtr& tgt() const { return tgt_; }
  std::size_t hash() const { return hash_; }
  /// Node count.
  int size() const { return size_; }
  /// Highest tower level of a symbol in the term, 0 for Θ₀ arrows.
  int level() const { return level_; }

 private:
  friend TermPtr glob(const DimensionTable& t, int dim, int cell);
  friend TermPtr lift(const SymbolPtr& h, std::vector<TermPtr> components);
  friend struct TermFactory;

  TermKind kind_ = TermKind::glob;
  DimensionTable table_;
  int dim_ = 0;
  int cell_ = -1;
  SymbolPtr symbol_;
  std::vector<TermPtr> components_;
  TermPtr src_, tgt_;
  std::size_t hash_ = 0;
  int size_ = 1;
  int level_ = 0;
};

/// Two arrows D_dim -> codomain with equal boundaries.
struct ParallelPair {
  TermPtr f, g;
  int dim = 0;
  DimensionTable codomain;
};

/// A formal lifting h: D_{dim+1} -> codomain of `pair`, added at `level`.
struct LiftingSymbol {
  int id = 0;
  int level = 1;
  ParallelPair pair;
  int out_dim = 1;
  DimensionTable codomain;
  std::string label;
};

/// The globular arrow D_dim -> t picking a cell of realize(t). Cached.
TermPtr glob(const DimensionTable& t, int dim, int cell);
/// The identity of a table's single disk, or the inclusion of summand k.
TermPtr identity_term(int i);
TermPtr summand(const DimensionTable& t, int k);
/// The globular arrow D_j -> t given by a globe map into summand k.
TermPtr summand_face(const DimensionTable& t, int k, const GlobeMap& g);
/// h along the sum arrow `components`. Throws std::invalid_argument when the
/// components have the wrong shape or disagree on the gluing.
TermPtr lift(const SymbolPtr& h, std::vector<TermPtr> components);
/// As `lift`, for callers that built the components compatibly already.
TermPtr lift_unchecked(const SymbolPtr& h, std::vector<TermPtr> components);

/// The sum arrow components that restrict to a Θ₀ map realize(x) -> realize(t).
std::vector<TermPtr> globular_components(const DimensionTable& x, const DimensionTable& t,
                                         const GSMorphism& f);
/// Throws std::invalid_argument unless the components form an arrow out of x.
void check_sum_arrow(const DimensionTable& x, std::span<const TermPtr> components);

/// u precomposed with g: D_j -> D_{u.dim}.
TermPtr precompose(const TermPtr& u, const GlobeMap& g);
/// The sum arrow v: X -> T after t: D_j -> X.
TermPtr compose(std::span<const TermPtr> v, const TermPtr& t);
/// Componentwise composite of sum arrows.
std::vector<TermPtr> compose(std::span<const TermPtr> v, std::span<const TermPtr> w);

bool equal(const TermPtr& a, const TermPtr& b);
/// Size, then structure; a total order for deterministic enumeration.
std::strong_ordering compare(const TermPtr& a, const TermPtr& b);

struct TermLess {
  bool operator()(const TermPtr& a, const TermPtr& b) const { return compare(a, b) < 0; }
};
struct TermHash {
  std::size_t operator()(const TermPtr& t) const { return t->hash(); }
};
struct TermEq {
  bool operator()(const TermPtr& a, const TermPtr& b) const { return equal(a, b); }
};

/// (t after σ, t after τ). Throws std::invalid_argument at dimension 0.
std::pair<TermPtr, TermPtr> boundary_of(const TermPtr& t);

/// Throws NotParallel when f and g do not share domain, codomain and
/// boundaries.
ParallelPair make_parallel_pair(const TermPtr& f, const TermPtr& g);
bool pairs_equal(const ParallelPair& a, const ParallelPair& b);
std::strong_ordering compare(const ParallelPair& a, const ParallelPair& b);

/// t with every symbol replaced through `map`.
using SymbolMap = std::function<SymbolPtr(const SymbolPtr&)>;
TermPtr translate(const TermPtr& t, const SymbolMap& map);
ParallelPair translate(const ParallelPair& p, const SymbolMap& map);

/// Every symbol occurring in t (with repetition removed), in id order.
std::vector<SymbolPtr> symbols_of(const TermPtr& t);

// ---------------------------------------------------------------------------
// Unnormalized terms and the rewrite system

struct RawTerm;
using RawPtr = std::shared_ptr<const RawTerm>;

enum class RawKind { glob, lift, comp };

/// glob: cell (cell_dim, cell) of realize(table) after `pre`.
/// lift: symbol along `post` after `pre`.
/// comp: the sum arrow `post` out of `table` after `inner`.
struct RawTerm {
  RawKind kind = RawKind::glob;
  DimensionTable table;
  int cell_dim = 0;
  int cell = 0;
  SymbolPtr symbol;
  std::vector<RawPtr> post;
  RawPtr inner;
  GlobeMap pre;
};

RawPtr raw_glob(const DimensionTable& t, int cell_dim, int cell, GlobeMap pre);
RawPtr raw_lift(const SymbolPtr& h, std::vector<RawPtr> post, GlobeMap pre);
RawPtr raw_comp(const DimensionTable& x, std::vector<RawPtr> post, RawPtr inner);

int raw_dim(const RawTerm& r);
DimensionTable raw_codomain(const RawTerm& r);
int raw_size(const RawTerm& r);

RawPtr to_raw(const TermPtr& t);
/// Innermost evaluation to the unique normal form.
TermPtr normalize(const RawPtr& r);
/// All one-step reducts, over every position and rule.
std::vector<RawPtr> rewrite_steps(const RawPtr& r);
bool is_normal(const RawTerm& r);

// ---------------------------------------------------------------------------
// Text syntax
//
//   term ::= (glob TABLE DIM IDX) | (glob TABLE DIM IDX PRE)
//          | (lift h#ID [term ...] PRE)
//          | (comp [term ...] term)
//   TABLE ::= (i1 ... im | i'1 ... i'm-1)     PRE ::= id_j | s^j_i | t^j_i

using SymbolLookup = std::function<SymbolPtr(int)>;

std::string to_sexpr(const TermPtr& t);
std::string to_sexpr(const RawPtr& r);
/// Throws std::invalid_argument on syntax errors or unknown symbols.
RawPtr parse_sexpr(std::string_view text, const SymbolLookup& lookup);
TermPtr parse_term(std::string_view text, const SymbolLookup& lookup);

/// Short human-readable rendering, e.g. "h3[c1.id_1, c2.id_1]".
std::string to_display(const TermPtr& t);

}  // namespace globular

#endif
