#include "globular/pasting.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace globular {

// ---------------------------------------------------------------------------
// DimensionTable

bool DimensionTable::valid() const {
  if (tops.empty() || bottoms.size() + 1 != tops.size()) return false;
  for (int v : tops) {
    if (v < 0) return false;
  }
  for (std::size_t k = 0; k < bottoms.size(); ++k) {
    if (bottoms[k] < 0 || bottoms[k] >= tops[k] || bottoms[k] >= tops[k + 1]) return false;
  }
  return true;
}

void DimensionTable::validate() const {
  if (tops.empty()) throw std::invalid_argument("table of dimensions needs at least one disk");
  if (bottoms.size() + 1 != tops.size()) {
    throw std::invalid_argument("table " + to_string(*this) + " needs exactly m-1 bottoms");
  }
  if (!valid()) {
    throw std::invalid_argument("table " + to_string(*this) +
                                " violates i'_k < i_k and i'_k < i_{k+1}");
  }
}

std::strong_ordering DimensionTable::operator<=>(const DimensionTable& other) const {
  if (auto c = tops.size() <=> other.tops.size(); c != 0) return c;
  for (std::size_t k = 0; k < tops.size(); ++k) {
    if (auto c = tops[k] <=> other.tops[k]; c != 0) return c;
    if (k < bottoms.size() && k < other.bottoms.size()) {
      if (auto c = bottoms[k] <=> other.bottoms[k]; c != 0) return c;
    }
  }
  return bottoms.size() <=> other.bottoms.size();
}

int dimension(const DimensionTable& t) {
  t.validate();
  return *std::max_element(t.tops.begin(), t.tops.end());
}

namespace {

struct BoundaryShape {
  DimensionTable table;
  // For each summand of the boundary, the first and last summand of `t`
  // that were merged into it.
  std::vector<std::pair<int, int>> runs;
};

BoundaryShape boundary_shape(const DimensionTable& t) {
  int i = dimension(t);
  if (i == 0) throw std::invalid_argument("boundary of a 0-dimensional table");
  auto lowered = [&](int k) { return t.tops[k] == i ? i - 1 : t.tops[k]; };
  BoundaryShape out;
  out.table.tops.push_back(lowered(0));
  out.runs.emplace_back(0, 0);
  for (int k = 0; k + 1 < t.length(); ++k) {
    if (t.bottoms[k] == i - 1) {
      out.runs.back().second = k + 1;
      continue;
    }
    out.table.bottoms.push_back(t.bottoms[k]);
    out.table.tops.push_back(lowered(k + 1));
    out.runs.emplace_back(k + 1, k + 1);
  }
  return out;
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

DimensionTable boundary(const DimensionTable& t) { return boundary_shape(t).table; }

std::string to_string(const DimensionTable& t) {
  std::string s = "(";
  for (std::size_t k = 0; k < t.tops.size(); ++k) {
    if (k) s += ' ';
    s += std::to_string(t.tops[k]);
  }
  if (!t.bottoms.empty()) {
    s += " |";
    for (int b : t.bottoms) s += ' ' + std::to_string(b);
  }
  return s + ")";
}

DimensionTable parse_table(std::string_view text) {
  auto first = text.find_first_not_of(" \t\n");
  auto last = text.find_last_not_of(" \t\n");
  if (first == std::string_view::npos || text[first] != '(' || text[last] != ')') {
    throw std::invalid_argument("table must be parenthesized: '" + std::string(text) + "'");
  }
  std::string_view body = text.substr(first + 1, last - first - 1);
  DimensionTable t;
  bool after_bar = false;
  std::size_t pos = 0;
  while (pos < body.size()) {
    char c = body[pos];
    if (c == ' ' || c == '\t') {
      ++pos;
      continue;
    }
    if (c == '|') {
      if (after_bar) throw std::invalid_argument("table has two '|'");
      after_bar = true;
      ++pos;
      continue;
    }
    auto end = body.find_first_of(" \t|", pos);
    if (end == std::string_view::npos) end = body.size();
    int v = parse_int(body.substr(pos, end - pos));
    (after_bar ? t.bottoms : t.tops).push_back(v);
    pos = end;
  }
  t.validate();
  return t;
}

std::string to_tree_string(const DimensionTable& t) {
  t.validate();
  std::vector<std::vector<int>> children(1);
  std::vector<int> path{0};
  auto grow_to = [&](int height) {
    while (static_cast<int>(path.size()) <= height) {
      int node = static_cast<int>(children.size());
      children.emplace_back();
      children[path.back()].push_back(node);
      path.push_back(node);
    }
  };
  grow_to(t.tops[0]);
  for (int k = 0; k + 1 < t.length(); ++k) {
    path.resize(t.bottoms[k] + 1);
    grow_to(t.tops[k + 1]);
  }
  std::function<std::string(int)> render = [&](int node) {
    std::string s = "[";
    for (int c : children[node]) s += render(c);
    return s + "]";
  };
  return render(0);
}

DimensionTable parse_tree_string(std::string_view text) {
  DimensionTable t;
  int h = -1;
  int low = 0;
  int depth_seen = 0;
  for (std::size_t p = 0; p < text.size(); ++p) {
    char c = text[p];
    if (c == '[') {
      ++h;
      ++depth_seen;
      if (p + 1 < text.size() && text[p + 1] == ']') {
        if (!t.tops.empty()) t.bottoms.push_back(low);
        t.tops.push_back(h);
        low = h;
      }
    } else if (c == ']') {
      --h;
      low = std::min(low, h);
      if (h < -1) throw std::invalid_argument("unbalanced tree string");
    } else if (c != ' ') {
      throw std::invalid_argument("unexpected character in tree string");
    }
    if (h == -1 && p + 1 < text.size() && depth_seen) {
      throw std::invalid_argument("tree string has more than one root");
    }
  }
  if (h != -1 || t.tops.empty()) throw std::invalid_argument("unbalanced tree string");
  t.validate();
  return t;
}

std::vector<DimensionTable> enumerate_tables(int max_dim, int max_len) {
  if (max_dim < 0 || max_len < 0) throw std::invalid_argument("negative enumeration bound");
  std::vector<DimensionTable> out;
  DimensionTable cur;
  std::function<void()> extend = [&]() {
    out.push_back(cur);
    if (cur.length() >= max_len) return;
    int last = cur.tops.back();
    for (int b = 0; b < last; ++b) {
      for (int top = b + 1; top <= max_dim; ++top) {
        cur.bottoms.push_back(b);
        cur.tops.push_back(top);
        extend();
        cur.tops.pop_back();
        cur.bottoms.pop_back();
      }
    }
  };
  if (max_len >= 1) {
    for (int top = 0; top <= max_dim; ++top) {
      cur.tops = {top};
      extend();
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// GlobularSet

int GlobularSet::total_cells() const {
  int n = 0;
  for (auto& c : cells) n += static_cast<int>(c.size());
  return n;
}

int GlobularSet::add_cell(int k, std::string name, int s, int t) {
  if (k < 0 || k > trunc) throw std::invalid_argument("cell dimension above truncation");
  cells[k].push_back(std::move(name));
  if (k > 0) {
    src[k].push_back(s);
    tgt[k].push_back(t);
  }
  return static_cast<int>(cells[k].size()) - 1;
}

bool GlobularSet::valid() const {
  if (trunc < 0 || static_cast<int>(cells.size()) != trunc + 1 ||
      static_cast<int>(src.size()) != trunc + 1 || static_cast<int>(tgt.size()) != trunc + 1) {
    return false;
  }
  if (!src[0].empty() || !tgt[0].empty()) return false;
  for (int k = 1; k <= trunc; ++k) {
    if (src[k].size() != cells[k].size() || tgt[k].size() != cells[k].size()) return false;
    for (std::size_t c = 0; c < cells[k].size(); ++c) {
      if (src[k][c] < 0 || src[k][c] >= count(k - 1)) return false;
      if (tgt[k][c] < 0 || tgt[k][c] >= count(k - 1)) return false;
      if (k >= 2) {
        if (src[k - 1][src[k][c]] != src[k - 1][tgt[k][c]]) return false;
        if (tgt[k - 1][src[k][c]] != tgt[k - 1][tgt[k][c]]) return false;
      }
    }
  }
  return true;
}

void GlobularSet::validate() const {
  if (!valid()) throw std::invalid_argument("malformed globular set or globular relations violated");
}

int GlobularSet::face(int dim, int cell, const GlobeMap& g) const {
  if (g.tgt_dim != dim) throw std::invalid_argument("face: globe map codomain mismatch");
  if (g.is_identity()) return cell;
  const auto& step = g.polarity == Polarity::source ? src : tgt;
  for (int k = dim; k > g.src_dim; --k) cell = step[k][cell];
  return cell;
}

bool is_morphism(const GlobularSet& x, const GlobularSet& y, const GSMorphism& f) {
  if (static_cast<int>(f.map.size()) != x.trunc + 1) return false;
  for (int k = 0; k <= x.trunc; ++k) {
    if (static_cast<int>(f.map[k].size()) != x.count(k)) return false;
    for (int c = 0; c < x.count(k); ++c) {
      int img = f.map[k][c];
      if (img < 0 || img >= y.count(k)) return false;
      if (k > 0) {
        if (f.map[k - 1][x.src[k][c]] != y.src[k][img]) return false;
        if (f.map[k - 1][x.tgt[k][c]] != y.tgt[k][img]) return false;
      }
    }
  }
  return true;
}

bool is_injective(const GSMorphism& f) {
  for (const auto& m : f.map) {
    std::vector<int> v = m;
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
  }
  return true;
}

GSMorphism identity_morphism(const GlobularSet& x) {
  GSMorphism f;
  f.map.resize(x.trunc + 1);
  for (int k = 0; k <= x.trunc; ++k) {
    f.map[k].resize(x.count(k));
    std::iota(f.map[k].begin(), f.map[k].end(), 0);
  }
  return f;
}

GSMorphism compose(const GSMorphism& g, const GSMorphism& f) {
  GSMorphism h;
  h.map.resize(f.map.size());
  for (std::size_t k = 0; k < f.map.size(); ++k) {
    for (int c : f.map[k]) h.map[k].push_back(g.map[k][c]);
  }
  return h;
}

std::vector<GSMorphism> hom(const GlobularSet& x, const GlobularSet& y) {
  std::vector<CellRef> order;
  for (int k = x.trunc; k >= 0; --k) {
    for (int c = 0; c < x.count(k); ++c) order.push_back({k, c});
  }
  GSMorphism cur;
  cur.map.resize(x.trunc + 1);
  for (int k = 0; k <= x.trunc; ++k) cur.map[k].assign(x.count(k), -1);
  std::vector<CellRef> trail;

  // Assigns c -> img and propagates to the boundary; false on conflict.
  std::function<bool(CellRef, int)> assign = [&](CellRef c, int img) -> bool {
    int& slot = cur.map[c.dim][c.index];
    if (slot >= 0) return slot == img;
    if (img < 0 || img >= y.count(c.dim)) return false;
    slot = img;
    trail.push_back(c);
    if (c.dim == 0) return true;
    return assign({c.dim - 1, x.src[c.dim][c.index]}, y.src[c.dim][img]) &&
           assign({c.dim - 1, x.tgt[c.dim][c.index]}, y.tgt[c.dim][img]);
  };
  auto undo_to = [&](std::size_t mark) {
    while (trail.size() > mark) {
      CellRef c = trail.back();
      trail.pop_back();
      cur.map[c.dim][c.index] = -1;
    }
  };

  std::vector<GSMorphism> out;
  std::function<void(std::size_t)> search = [&](std::size_t pos) {
    while (pos < order.size() && cur.map[order[pos].dim][order[pos].index] >= 0) ++pos;
    if (pos == order.size()) {
      out.push_back(cur);
      return;
    }
    CellRef c = order[pos];
    for (int img = 0; img < y.count(c.dim); ++img) {
      std::size_t mark = trail.size();
      if (assign(c, img)) search(pos + 1);
      undo_to(mark);
    }
  };
  search(0);
  return out;
}

// ---------------------------------------------------------------------------
// Realization

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Globe cells of D_i are indexed 2j + side for j < i and 2i for the top.
int globe_slot(const GlobeMap& g) {
  switch (g.polarity) {
    case Polarity::identity:
      return 2 * g.src_dim;
    case Polarity::source:
      return 2 * g.src_dim;
    case Polarity::target:
      return 2 * g.src_dim + 1;
  }
  return 0;
}

GlobeMap slot_map(int slot, int i) {
  int j = slot / 2;
  if (j == i) return GlobeMap::identity(i);
  return slot % 2 == 0 ? GlobeMap::source(j, i) : GlobeMap::target(j, i);
}

std::unique_ptr<Realization> build_realization(const DimensionTable& t) {
  t.validate();
  int d = dimension(t);
  int m = t.length();
  std::vector<int> base(m + 1, 0);
  for (int k = 0; k < m; ++k) base[k + 1] = base[k] + 2 * t.tops[k] + 1;
  UnionFind uf(base[m]);
  auto node = [&](int k, const GlobeMap& g) { return base[k] + globe_slot(g); };
  for (int k = 0; k + 1 < m; ++k) {
    int b = t.bottoms[k];
    for (int slot = 0; slot <= 2 * b; ++slot) {
      GlobeMap g = slot_map(slot, b);
      uf.unite(node(k, compose(GlobeMap::source(b, t.tops[k]), g)),
               node(k + 1, compose(GlobeMap::target(b, t.tops[k + 1]), g)));
    }
  }

  auto r = std::make_unique<Realization>();
  r->table = t;
  r->set = GlobularSet(d);
  r->origin.resize(d + 1);
  std::vector<int> class_cell(base[m], -1);
  // Node ids increase with (summand, dim, side), so visiting nodes in order
  // and creating a cell at each new root gives a deterministic numbering.
  std::vector<std::vector<std::pair<int, int>>> pending(d + 1);  // (root, node)
  for (int k = 0; k < m; ++k) {
    for (int slot = 0; slot <= 2 * t.tops[k]; ++slot) {
      int n = base[k] + slot;
      int root = uf.find(n);
      if (class_cell[root] >= 0) continue;
      int j = slot / 2;
      class_cell[root] = static_cast<int>(pending[j].size());
      pending[j].emplace_back(root, n);
      r->origin[j].emplace_back(k, slot_map(slot, t.tops[k]));
    }
  }
  for (int j = 0; j <= d; ++j) {
    for (std::size_t c = 0; c < pending[j].size(); ++c) {
      auto [k, g] = r->origin[j][c];
      std::string name = std::to_string(k + 1) + "." + to_string(g);
      int s = -1, tt = -1;
      if (j > 0) {
        s = class_cell[uf.find(node(k, compose(g, GlobeMap::source(j - 1, j))))];
        tt = class_cell[uf.find(node(k, compose(g, GlobeMap::target(j - 1, j))))];
      }
      r->set.add_cell(j, std::move(name), s, tt);
    }
  }
  r->summand_cells.resize(m);
  for (int k = 0; k < m; ++k) {
    r->summand_cells[k].resize(t.tops[k] + 1);
    for (int slot = 0; slot <= 2 * t.tops[k]; ++slot) {
      r->summand_cells[k][slot / 2].push_back(class_cell[uf.find(base[k] + slot)]);
    }
  }
  return r;
}

}  // namespace

int Realization::top_cell(int summand) const {
  return summand_cells.at(summand).at(table.tops[summand]).at(0);
}

int Realization::cell_of(int summand, const GlobeMap& g) const {
  if (g.tgt_dim != table.tops.at(summand)) {
    throw std::invalid_argument("cell_of: globe map does not land in the summand");
  }
  const auto& cells = summand_cells[summand][g.src_dim];
  return g.polarity == Polarity::target ? cells.at(1) : cells.at(0);
}

const Realization& realization(const DimensionTable& t) {
  static std::mutex mu;
  static std::map<DimensionTable, std::unique_ptr<Realization>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(t);
  if (it == cache.end()) it = cache.emplace(t, build_realization(t)).first;
  return *it->second;
}

GlobularSet realize(const DimensionTable& t, int d) {
  int dim = dimension(t);
  if (d < dim) {
    throw std::invalid_argument("truncation " + std::to_string(d) + " below dimension of " +
                                to_string(t));
  }
  GlobularSet s = realization(t).set;
  s.trunc = d;
  s.cells.resize(d + 1);
  s.src.resize(d + 1);
  s.tgt.resize(d + 1);
  return s;
}

GSMorphism morphism_from_tops(const DimensionTable& x, const GlobularSet& y,
                              std::span<const int> tops) {
  const Realization& r = realization(x);
  if (static_cast<int>(tops.size()) != x.length()) {
    throw std::invalid_argument("morphism_from_tops: one top image per summand required");
  }
  GSMorphism f;
  f.map.resize(r.set.trunc + 1);
  for (int k = 0; k <= r.set.trunc; ++k) f.map[k].assign(r.set.count(k), -1);
  for (int k = 0; k < x.length(); ++k) {
    int i = x.tops[k];
    if (tops[k] < 0 || tops[k] >= y.count(i)) {
      throw std::invalid_argument("morphism_from_tops: top image out of range");
    }
    for (int slot = 0; slot <= 2 * i; ++slot) {
      GlobeMap g = slot_map(slot, i);
      int cell = r.cell_of(k, g);
      int img = y.face(i, tops[k], g);
      int& dst = f.map[g.src_dim][cell];
      if (dst >= 0 && dst != img) {
        throw std::invalid_argument("morphism_from_tops: incompatible tuple on the gluing");
      }
      dst = img;
    }
  }
  return f;
}

std::pair<GSMorphism, GSMorphism> cosource_cotarget(const DimensionTable& t) {
  int i = dimension(t);
  BoundaryShape shape = boundary_shape(t);
  const Realization& rt = realization(t);
  std::vector<int> s_tops, t_tops;
  for (auto [first, last] : shape.runs) {
    if (t.tops[first] < i) {
      s_tops.push_back(rt.top_cell(first));
      t_tops.push_back(rt.top_cell(first));
    } else {
      s_tops.push_back(rt.cell_of(last, GlobeMap::source(i - 1, i)));
      t_tops.push_back(rt.cell_of(first, GlobeMap::target(i - 1, i)));
    }
  }
  return {morphism_from_tops(shape.table, rt.set, s_tops),
          morphism_from_tops(shape.table, rt.set, t_tops)};
}

std::vector<GSMorphism> hom_theta0(const DimensionTable& s, const DimensionTable& t) {
  return hom(realization(s).set, realization(t).set);
}

int flat_index(const GlobularSet& x, CellRef c) {
  int off = 0;
  for (int k = 0; k < c.dim; ++k) off += x.count(k);
  return off + c.index;
}

const std::vector<SubDiagram>& subdiagrams(const DimensionTable& t) {
  static std::mutex mu;
  static std::map<DimensionTable, std::vector<SubDiagram>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(t); it != cache.end()) return it->second;
  }
  const GlobularSet& y = realization(t).set;
  std::vector<SubDiagram> out;
  DimensionTable cur;
  std::vector<int> chosen;
  std::function<void()> grow = [&]() {
    GSMorphism f = morphism_from_tops(cur, y, chosen);
    if (!is_injective(f)) return;
    SubDiagram sd;
    sd.table = cur;
    sd.image.assign(y.total_cells(), 0);
    for (int k = 0; k < static_cast<int>(f.map.size()); ++k) {
      for (int img : f.map[k]) sd.image[flat_index(y, {k, img})] = 1;
    }
    sd.cell_count = realization(cur).set.total_cells();
    sd.map = std::move(f);
    out.push_back(std::move(sd));
    int last_dim = cur.tops.back();
    for (int b = 0; b < last_dim; ++b) {
      int glue = y.face(last_dim, chosen.back(), GlobeMap::source(b, last_dim));
      for (int a = b + 1; a <= y.trunc; ++a) {
        for (int c = 0; c < y.count(a); ++c) {
          if (y.face(a, c, GlobeMap::target(b, a)) != glue) continue;
          cur.bottoms.push_back(b);
          cur.tops.push_back(a);
          chosen.push_back(c);
          grow();
          chosen.pop_back();
          cur.tops.pop_back();
          cur.bottoms.pop_back();
        }
      }
    }
  };
  for (int a = 0; a <= y.trunc; ++a) {
    for (int c = 0; c < y.count(a); ++c) {
      cur = DimensionTable::disk(a);
      chosen = {c};
      grow();
    }
  }
  std::sort(out.begin(), out.end(), [](const SubDiagram& l, const SubDiagram& r) {
    if (l.cell_count != r.cell_count) return l.cell_count < r.cell_count;
    if (l.table != r.table) return l.table < r.table;
    return l.map < r.map;
  });
  std::lock_guard lock(mu);
  return cache.emplace(t, std::move(out)).first->second;
}

// ---------------------------------------------------------------------------
// Globular products

std::vector<std::vector<int>> globular_product(std::span<const int> factor_sizes,
                                               std::span<const GlueMaps> glue) {
  if (factor_sizes.empty()) return {{}};
  if (glue.size() + 1 != factor_sizes.size()) {
    throw std::invalid_argument("globular_product: need one glue pair between adjacent factors");
  }
  std::vector<std::vector<int>> tuples;
  for (int x = 0; x < factor_sizes[0]; ++x) tuples.push_back({x});
  for (std::size_t k = 0; k < glue.size(); ++k) {
    const GlueMaps& gm = glue[k];
    std::multimap<int, int> by_right;
    for (int x = 0; x < factor_sizes[k + 1]; ++x) by_right.emplace(gm.right.at(x), x);
    std::vector<std::vector<int>> next;
    for (const auto& tup : tuples) {
      auto [lo, hi] = by_right.equal_range(gm.left.at(tup.back()));
      for (auto it = lo; it != hi; ++it) {
        next.push_back(tup);
        next.back().push_back(it->second);
      }
    }
    tuples = std::move(next);
  }
  return tuples;
}

std::vector<std::vector<int>> globular_product(const GlobularSet& x, const DimensionTable& t) {
  t.validate();
  std::vector<int> sizes;
  for (int i : t.tops) sizes.push_back(x.count(i));
  std::vector<GlueMaps> glue;
  for (int k = 0; k + 1 < t.length(); ++k) {
    GlueMaps gm;
    int b = t.bottoms[k];
    for (int c = 0; c < x.count(t.tops[k]); ++c) {
      gm.left.push_back(x.face(t.tops[k], c, GlobeMap::source(b, t.tops[k])));
    }
    for (int c = 0; c < x.count(t.tops[k + 1]); ++c) {
      gm.right.push_back(x.face(t.tops[k + 1], c, GlobeMap::target(b, t.tops[k + 1])));
    }
    glue.push_back(std::move(gm));
  }
  return globular_product(sizes, glue);
}

}  // namespace globular
