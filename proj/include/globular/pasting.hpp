#ifndef GLOBULAR_PASTING_HPP
#define GLOBULAR_PASTING_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "globular/globes.hpp"

namespace globular {

/// Table of dimensions of a globular sum
///
///   i_1     i_2    ...    i_m
///       i'_1   ...  i'_{m-1}
///
/// with i'_k < i_k and i'_k < i_{k+1}. Summand k is glued to summand k+1 along
/// D_{i'_k}, through the source side of summand k and the target side of
/// summand k+1.
struct DimensionTable {
  std::vector<int> tops;
  std::vector<int> bottoms;

  DimensionTable() = default;
  DimensionTable(std::vector<int> t, std::vector<int> b) : tops(std::move(t)), bottoms(std::move(b)) {}

  static DimensionTable disk(int i) { return {{i}, {}}; }

  int length() const { return static_cast<int>(tops.size()); }
  bool valid() const;
  /// Throws std::invalid_argument with the reason when invalid.
  void validate() const;

  bool operator==(const DimensionTable&) const = default;
  /// Length first, then lexicographic on i_1, i'_1, i_2, ...
  std::strong_ordering operator<=>(const DimensionTable& other) const;
};

int dimension(const DimensionTable& t);

/// Tops of maximal dimension lowered by one. When a bottom equals the new
/// top on both sides the two summands are glued along their whole boundary
/// and merge into one.
DimensionTable boundary(const DimensionTable& t);

std::string to_string(const DimensionTable& t);
/// Parses "(i1 i2 ... im | i'1 ... i'm-1)"; "(i)" for a single disk.
DimensionTable parse_table(std::string_view text);

/// Planar rooted tree of the table, rendered with nested brackets: leaves sit
/// at height i_k and consecutive leaves branch at height i'_k. Display only.
std::string to_tree_string(const DimensionTable& t);
DimensionTable parse_tree_string(std::string_view text);

/// All valid tables with tops <= max_dim and length in [1, max_len], ordered.
std::vector<DimensionTable> enumerate_tables(int max_dim, int max_len);

/// A k-cell of a globular set.
struct CellRef {
  int dim = 0;
  int index = 0;
  auto operator<=>(const CellRef&) const = default;
};

/// A finite globular set truncated at `trunc`.
///
/// cells[k] holds the names of the k-cells; src[k][c] and tgt[k][c] give the
/// (k-1)-cells bounding k-cell c (src[0], tgt[0] are empty).
struct GlobularSet {
  int trunc = 0;
  std::vector<std::vector<std::string>> cells;
  std::vector<std::vector<int>> src;
  std::vector<std::vector<int>> tgt;

  explicit GlobularSet(int d = 0) : trunc(d), cells(d + 1), src(d + 1), tgt(d + 1) {}

  int count(int k) const {
    return k >= 0 && k <= trunc ? static_cast<int>(cells[k].size()) : 0;
  }
  int total_cells() const;
  /// Appends a k-cell and returns its index.
  int add_cell(int k, std::string name, int s = -1, int t = -1);
  bool contains(CellRef c) const { return c.dim >= 0 && c.index >= 0 && c.index < count(c.dim); }

  /// Index ranges and the globular relations ss = st, ts = tt.
  bool valid() const;
  void validate() const;

  /// The image of a cell under the globe map g: D_j -> D_{dim}.
  int face(int dim, int cell, const GlobeMap& g) const;

  bool operator==(const GlobularSet&) const = default;
};

/// Per-dimension cell assignment X -> Y.
struct GSMorphism {
  std::vector<std::vector<int>> map;

  int operator()(CellRef c) const { return map[c.dim][c.index]; }
  bool operator==(const GSMorphism&) const = default;
  auto operator<=>(const GSMorphism&) const = default;
};

bool is_morphism(const GlobularSet& x, const GlobularSet& y, const GSMorphism& f);
bool is_injective(const GSMorphism& f);
GSMorphism identity_morphism(const GlobularSet& x);
GSMorphism compose(const GSMorphism& g, const GSMorphism& f);

/// Every morphism X -> Y, by backtracking over dimension-preserving cell
/// assignments. Deterministic order.
std::vector<GSMorphism> hom(const GlobularSet& x, const GlobularSet& y);

/// The globular sum described by `t`, computed as an explicit colimit of
/// disks. Requires d >= dimension(t).
GlobularSet realize(const DimensionTable& t, int d);

/// Cached realization of a table together with the colimit bookkeeping: each
/// cell's first (summand, globe map) representative and the reverse lookup.
struct Realization {
  DimensionTable table;
  GlobularSet set;
  /// origin[k][c] = (summand, map D_k -> D_{i_summand}) for k-cell c.
  std::vector<std::vector<std::pair<int, GlobeMap>>> origin;

  int top_cell(int summand) const;
  /// Cell reached from summand's top along g.
  int cell_of(int summand, const GlobeMap& g) const;

  /// summand_cells[summand][dim][side], side 0 for the source or the top.
  std::vector<std::vector<std::vector<int>>> summand_cells;
};

const Realization& realization(const DimensionTable& t);

/// Extends an assignment of summand top cells of X into `y` to the morphism
/// realize(X) -> y. Throws std::invalid_argument when the tuple is incompatible.
GSMorphism morphism_from_tops(const DimensionTable& x, const GlobularSet& y,
                              std::span<const int> tops);

/// The generalized cosource and cotarget maps realize(boundary(t)) -> realize(t).
std::pair<GSMorphism, GSMorphism> cosource_cotarget(const DimensionTable& t);

std::vector<GSMorphism> hom_theta0(const DimensionTable& s, const DimensionTable& t);

/// A globular sum X with a morphism into a fixed table's realization.
struct SubDiagram {
  DimensionTable table;
  GSMorphism map;
  std::vector<std::uint8_t> image;  // flattened over the target's cells, dim-major
  int cell_count = 0;
};

/// Every Θ₀ arrow X -> t, for all X, found by growing compatible tuples of
/// target cells. Cached; ordered by (cell count, X, map).
const std::vector<SubDiagram>& subdiagrams(const DimensionTable& t);

/// Offset of dimension k in a dim-major flattening of a globular set.
int flat_index(const GlobularSet& x, CellRef c);

/// Maps between factors of a globular product: tuple entries k and k+1 must
/// satisfy left[x_k] == right[x_{k+1}].
struct GlueMaps {
  std::vector<int> left;
  std::vector<int> right;
};

/// The limit of a chain of finite sets glued by `glue`.
std::vector<std::vector<int>> globular_product(std::span<const int> factor_sizes,
                                               std::span<const GlueMaps> glue);

/// Compatible tuples (x_1, ..., x_m), x_k an i_k-cell of x, with the source
/// face of x_k at i'_k equal to the target face of x_{k+1}.
std::vector<std::vector<int>> globular_product(const GlobularSet& x, const DimensionTable& t);

}  // namespace globular

#endif
