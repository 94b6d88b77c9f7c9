#include "globular/models.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace globular {

int FiniteGroup::inverse(int a) const {
  for (int b = 0; b < order(); ++b) {
    if (mul[a][b] == identity) return b;
  }
  throw std::invalid_argument("group element without inverse");
}

bool FiniteGroup::valid() const {
  const int n = order();
  if (n == 0 || identity < 0 || identity >= n) return false;
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n) return false;
    for (int v : row) {
      if (v < 0 || v >= n) return false;
    }
  }
  for (int a = 0; a < n; ++a) {
    if (mul[identity][a] != a || mul[a][identity] != a) return false;
    bool has_inverse = false;
    for (int b = 0; b < n; ++b) {
      if (mul[a][b] == identity && mul[b][a] == identity) has_inverse = true;
      for (int c = 0; c < n; ++c) {
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) return false;
      }
    }
    if (!has_inverse) return false;
  }
  return true;
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
  FiniteGroup g{"z" + std::to_string(n), std::vector<std::vector<int>>(n, std::vector<int>(n)), 0};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
  }
  return g;
}

FiniteGroup symmetric_group3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  FiniteGroup g{"s3", std::vector<std::vector<int>>(6, std::vector<int>(6)), 0};
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      g.mul[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return g;
}

FiniteGroup parse_group(std::string_view name) {
  std::string s(name);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "trivial") {
    auto g = cyclic_group(1);
    g.name = "trivial";
    return g;
  }
  if (s == "s3") return symmetric_group3();
  if (s.size() > 1 && s[0] == 'z' &&
      std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return cyclic_group(std::stoi(s.substr(1)));
  }
  throw std::invalid_argument("unknown group: " + std::string(name));
}

bool is_isomorphism(const FiniteGroup& a, const FiniteGroup& b, const std::vector<int>& map) {
  if (a.order() != b.order() || static_cast<int>(map.size()) != a.order()) return false;
  std::vector<bool> hit(b.order(), false);
  for (int v : map) {
    if (v < 0 || v >= b.order() || hit[v]) return false;
    hit[v] = true;
  }
  for (int x = 0; x < a.order(); ++x) {
    for (int y = 0; y < a.order(); ++y) {
      if (map[a.mul[x][y]] != b.mul[map[x]][map[y]]) return false;
    }
  }
  return true;
}

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  if (a.order() > 9) throw std::invalid_argument("isomorphism search limited to order 9");
  std::vector<int> map(a.order());
  std::iota(map.begin(), map.end(), 0);
  do {
    if (is_isomorphism(a, b, map)) return map;
  } while (std::next_permutation(map.begin(), map.end()));
  return std::nullopt;
}

namespace {

int eval_unchecked(const Model& m, const TermPtr& t, const std::vector<int>& args) {
  if (t->kind() == TermKind::glob) {
    const auto& r = realization(t->table());
    const auto& [k, g] = r.origin[t->dim()][t->cell()];
    return m.carrier.face(t->table().tops[k], args[k], g);
  }
  const auto& h = *t->symbol();
  auto table = m.ops.find(h.id);
  if (table == m.ops.end()) {
    throw std::invalid_argument("symbol h#" + std::to_string(h.id) + " has no table");
  }
  std::vector<int> inner;
  inner.reserve(t->components().size());
  for (const auto& c : t->components()) inner.push_back(eval_unchecked(m, c, args));
  auto out = table->second.find(inner);
  if (out == table->second.end()) {
    throw std::invalid_argument("table of h#" + std::to_string(h.id) + " misses a tuple");
  }
  return out->second;
}

void check_tuple(const GlobularSet& x, const DimensionTable& t, const std::vector<int>& args) {
  if (dimension(t) > x.trunc) throw std::invalid_argument("term leaves the truncation");
  if (static_cast<int>(args.size()) != t.length()) {
    throw std::invalid_argument("argument tuple has the wrong length");
  }
  for (int k = 0; k < t.length(); ++k) {
    if (!x.contains({t.tops[k], args[k]})) throw std::invalid_argument("argument out of range");
  }
  for (int k = 0; k + 1 < t.length(); ++k) {
    int b = t.bottoms[k];
    int left = x.face(t.tops[k], args[k], GlobeMap::source(b, t.tops[k]));
    int right = x.face(t.tops[k + 1], args[k + 1], GlobeMap::target(b, t.tops[k + 1]));
    if (left != right) throw std::invalid_argument("argument tuple is not composable");
  }
}

/// Symbols of the theory in level order.
std::vector<SymbolPtr> theory_symbols(const ExtensionTower& theory) {
  std::vector<SymbolPtr> out;
  for (const auto& level : theory.levels) {
    auto syms = level.symbols;
    std::sort(syms.begin(), syms.end(), [](const auto& a, const auto& b) { return a->id < b->id; });
    out.insert(out.end(), syms.begin(), syms.end());
  }
  return out;
}

/// (s, t) -> k-cells with that boundary, for k >= 1.
std::map<std::pair<int, int>, std::vector<int>> cells_by_boundary(const GlobularSet& x, int k) {
  std::map<std::pair<int, int>, std::vector<int>> out;
  for (int c = 0; c < x.count(k); ++c) out[{x.src[k][c], x.tgt[k][c]}].push_back(c);
  return out;
}

}  // namespace

std::vector<SymbolPtr> Model::interpretable() const {
  std::vector<SymbolPtr> out;
  std::set<int> ok;
  for (const auto& h : theory_symbols(theory)) {
    if (h->out_dim > trunc() || dimension(h->codomain) > trunc()) continue;
    bool uses_ok = true;
    for (const auto& t : {h->pair.f, h->pair.g}) {
      for (const auto& s : symbols_of(t)) uses_ok = uses_ok && ok.contains(s->id);
    }
    if (!uses_ok) continue;
    ok.insert(h->id);
    out.push_back(h);
  }
  return out;
}

int eval(const Model& m, const TermPtr& t, const std::vector<int>& args) {
  check_tuple(m.carrier, t->table(), args);
  if (t->dim() > m.trunc()) throw std::invalid_argument("term leaves the truncation");
  return eval_unchecked(m, t, args);
}

std::map<std::vector<int>, int> fill_table(const Model& m, const LiftingSymbol& h, const Chooser& chooser) {
  if (h.out_dim > m.trunc() || dimension(h.codomain) > m.trunc()) {
    throw std::invalid_argument("h#" + std::to_string(h.id) + " lies beyond the truncation");
  }
  const GlobularSet& x = m.carrier;
  const int k = h.out_dim;
  const auto by_boundary = cells_by_boundary(x, k);
  std::map<std::vector<int>, int> table;
  for (const auto& args : globular_product(x, h.codomain)) {
    int s = eval_unchecked(m, h.pair.f, args);
    int t = eval_unchecked(m, h.pair.g, args);
    std::optional<int> out;
    if (chooser) out = chooser(m, h, args, s, t);
    if (out) {
      if (!x.contains({k, *out}) || x.src[k][*out] != s || x.tgt[k][*out] != t) {
        throw CoherenceFailure("chosen cell for h#" + std::to_string(h.id) + " has the wrong boundary");
      }
    } else {
      auto it = by_boundary.find({s, t});
      if (it == by_boundary.end()) {
        throw CoherenceFailure("no " + std::to_string(k) + "-cell from " + x.cells[k - 1][s] + " to " +
                               x.cells[k - 1][t] + " for h#" + std::to_string(h.id));
      }
      if (it->second.size() > 1) {
        throw std::invalid_argument("several cells fit h#" + std::to_string(h.id) + "; pass a chooser");
      }
      out = it->second.front();
    }
    table.emplace(args, *out);
  }
  return table;
}

Model interpret(const ExtensionTower& theory, GlobularSet carrier, const Chooser& chooser,
                nlohmann::json generator) {
  carrier.validate();
  Model m{std::move(carrier), theory, {}, std::move(generator)};
  for (const auto& h : m.interpretable()) m.ops[h->id] = fill_table(m, *h, chooser);
  return m;
}

Chooser path_product(const FiniteGroup& g) {
  return [g](const Model& m, const LiftingSymbol& h, const std::vector<int>& args, int,
             int) -> std::optional<int> {
    if (h.out_dim != 1) return std::nullopt;
    const auto& r = realization(h.codomain);
    const auto& cod = r.set;
    const int from = h.pair.f->cell();
    const int to = h.pair.g->cell();
    // Breadth-first over the 1-skeleton; a backward step contributes an inverse.
    std::vector<int> value(cod.count(0), -1);
    value[from] = g.identity;
    std::queue<int> queue;
    queue.push(from);
    while (!queue.empty()) {
      int p = queue.front();
      queue.pop();
      for (int e = 0; e < cod.count(1); ++e) {
        const auto& [k, map] = r.origin[1][e];
        int elem = m.carrier.face(h.codomain.tops[k], args[k], map);
        int next = -1, step = -1;
        if (cod.src[1][e] == p) {
          next = cod.tgt[1][e];
          step = elem;
        } else if (cod.tgt[1][e] == p) {
          next = cod.src[1][e];
          step = g.inverse(elem);
        }
        if (next < 0 || value[next] >= 0) continue;
        value[next] = g.mul[step][value[p]];
        queue.push(next);
      }
    }
    if (value[to] < 0) throw CoherenceFailure("codomain of h#" + std::to_string(h.id) + " is disconnected");
    return value[to];
  };
}

Model group_model(const FiniteGroup& g, const ExtensionTower& theory) {
  if (!g.valid()) throw std::invalid_argument("not a group table");
  GlobularSet x(2);
  x.add_cell(0, "*");
  for (int a = 0; a < g.order(); ++a) x.add_cell(1, std::to_string(a), 0, 0);
  for (int a = 0; a < g.order(); ++a) x.add_cell(2, "1_" + std::to_string(a), a, a);
  return interpret(theory, std::move(x), path_product(g), {{"kind", "group"}, {"group", g.name}});
}

Model constant_model(int elements, int trunc, const ExtensionTower& theory) {
  if (elements < 1 || trunc < 0) throw std::invalid_argument("constant model needs elements and trunc >= 0");
  GlobularSet x(trunc);
  for (int k = 0; k <= trunc; ++k) {
    for (int e = 0; e < elements; ++e) {
      x.add_cell(k, "c" + std::to_string(e) + "_" + std::to_string(k), k ? e : -1, k ? e : -1);
    }
  }
  return interpret(theory, std::move(x), {},
                   {{"kind", "constant"}, {"elements", elements}, {"trunc", trunc}});
}

Model one_point_model(int trunc, const ExtensionTower& theory) {
  auto m = constant_model(1, trunc, theory);
  m.generator = {{"kind", "point"}, {"trunc", trunc}};
  return m;
}

Model disjoint_union(const Model& a, const Model& b) {
  if (a.trunc() != b.trunc()) throw std::invalid_argument("union of models with different truncations");
  std::set<int> ka, kb;
  for (const auto& [id, _] : a.ops) ka.insert(id);
  for (const auto& [id, _] : b.ops) kb.insert(id);
  if (ka != kb) throw std::invalid_argument("union of models over different symbols");
  Model m{GlobularSet(a.trunc()), a.theory, {}, {{"kind", "union"}, {"left", a.generator}, {"right", b.generator}}};
  std::vector<int> offset(a.trunc() + 1);
  for (int k = 0; k <= a.trunc(); ++k) {
    offset[k] = a.carrier.count(k);
    for (int c = 0; c < a.carrier.count(k); ++c) {
      m.carrier.add_cell(k, "a." + a.carrier.cells[k][c], k ? a.carrier.src[k][c] : -1,
                         k ? a.carrier.tgt[k][c] : -1);
    }
  }
  for (int k = 0; k <= b.trunc(); ++k) {
    for (int c = 0; c < b.carrier.count(k); ++c) {
      m.carrier.add_cell(k, "b." + b.carrier.cells[k][c], k ? b.carrier.src[k][c] + offset[k - 1] : -1,
                         k ? b.carrier.tgt[k][c] + offset[k - 1] : -1);
    }
  }
  auto lookup = a.theory.lookup();
  for (const auto& [id, table] : a.ops) m.ops[id] = table;
  for (const auto& [id, table] : b.ops) {
    auto h = lookup(id);
    auto& out = m.ops[id];
    for (const auto& [args, v] : table) {
      std::vector<int> shifted(args.size());
      for (std::size_t k = 0; k < args.size(); ++k) shifted[k] = args[k] + offset[h->codomain.tops[k]];
      out.emplace(std::move(shifted), v + offset[h->out_dim]);
    }
  }
  return m;
}

ExtensionTower as_tower(const FreeProvider& provider) {
  ExtensionTower t;
  t.flavor = provider.flavor();
  t.levels = provider.levels();
  t.bounds.levels = t.top();
  int max_dim = 0;
  for (const auto& level : t.levels) {
    for (const auto& h : level.symbols) max_dim = std::max({max_dim, h->out_dim, dimension(h->codomain)});
  }
  t.bounds.max_dim = max_dim;
  return t;
}

SegalReport check_segal(const Model& m) {
  SegalReport r;
  auto fail = [&r](int id, std::vector<int> args, std::string why) {
    r = {false, id, std::move(args), std::move(why)};
    return r;
  };
  if (!m.carrier.valid()) return fail(0, {}, "carrier is not a globular set");
  auto syms = m.interpretable();
  std::set<int> ids;
  for (const auto& h : syms) ids.insert(h->id);
  for (const auto& [id, _] : m.ops) {
    if (!ids.contains(id)) return fail(id, {}, "table for a symbol outside the truncation");
  }
  for (const auto& h : syms) {
    auto it = m.ops.find(h->id);
    if (it == m.ops.end()) return fail(h->id, {}, "missing table");
    const auto& table = it->second;
    auto expected = globular_product(m.carrier, h->codomain);
    std::sort(expected.begin(), expected.end());
    for (const auto& args : expected) {
      if (!table.contains(args)) return fail(h->id, args, "table is not total");
    }
    if (table.size() != expected.size()) {
      for (const auto& [args, _] : table) {
        if (!std::binary_search(expected.begin(), expected.end(), args)) {
          return fail(h->id, args, "entry outside the globular product");
        }
      }
    }
    for (const auto& [args, out] : table) {
      if (!m.carrier.contains({h->out_dim, out})) return fail(h->id, args, "output out of range");
      try {
        if (m.carrier.src[h->out_dim][out] != eval_unchecked(m, h->pair.f, args)) {
          return fail(h->id, args, "source equation fails");
        }
        if (m.carrier.tgt[h->out_dim][out] != eval_unchecked(m, h->pair.g, args)) {
          return fail(h->id, args, "target equation fails");
        }
      } catch (const std::invalid_argument& e) {
        return fail(h->id, args, e.what());
      }
    }
  }
  return r;
}

std::optional<int> homotopy_related(const Model& m, int i, int x, int y) {
  if (i < 0 || i + 1 > m.trunc()) throw std::invalid_argument("homotopy needs i + 1 <= trunc");
  for (int c = 0; c < m.carrier.count(i + 1); ++c) {
    if (m.carrier.src[i + 1][c] == x && m.carrier.tgt[i + 1][c] == y) return c;
  }
  return std::nullopt;
}

namespace {

/// ∼_i classes of i-cells, numbered by first member.
std::vector<int> homotopy_classes(const Model& m, int i) {
  std::set<std::pair<int, int>> related;
  for (int c = 0; c < m.carrier.count(i + 1); ++c) {
    related.emplace(m.carrier.src[i + 1][c], m.carrier.tgt[i + 1][c]);
  }
  std::vector<int> reps;
  std::vector<int> class_of(m.carrier.count(i), -1);
  for (int x = 0; x < m.carrier.count(i); ++x) {
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if (related.contains({reps[r], x})) {
        class_of[x] = static_cast<int>(r);
        break;
      }
    }
    if (class_of[x] < 0) {
      class_of[x] = static_cast<int>(reps.size());
      reps.push_back(x);
    }
  }
  return class_of;
}

}  // namespace

EquivalenceReport check_homotopy_equivalence(const Model& m, int i, StructuralCatalog& cat) {
  if (i < 0 || i + 1 > m.trunc()) throw std::invalid_argument("witnesses need i + 1 <= trunc");
  EquivalenceReport r;
  r.dim = i;
  auto fail = [&r](std::string why) {
    r.ok = false;
    r.failure = std::move(why);
    return r;
  };
  const auto& x = m.carrier;
  auto bounds = [&x, i](int c, int s, int t) { return x.src[i + 1][c] == s && x.tgt[i + 1][c] == t; };
  auto unit = cat.unit(i);
  for (int c = 0; c < x.count(i); ++c) {
    if (!bounds(eval(m, unit, {c}), c, c)) return fail("reflexivity witness at " + x.cells[i][c]);
    ++r.witnesses;
  }
  auto omega = cat.inverse(1, i + 1);
  for (int h = 0; h < x.count(i + 1); ++h) {
    if (!bounds(eval(m, omega, {h}), x.tgt[i + 1][h], x.src[i + 1][h])) {
      return fail("symmetry witness at " + x.cells[i + 1][h]);
    }
    ++r.witnesses;
  }
  auto nabla = cat.comp(1, i + 1);
  for (int h = 0; h < x.count(i + 1); ++h) {
    for (int k = 0; k < x.count(i + 1); ++k) {
      if (x.src[i + 1][k] != x.tgt[i + 1][h]) continue;
      if (!bounds(eval(m, nabla, {k, h}), x.src[i + 1][h], x.tgt[i + 1][k])) {
        return fail("transitivity witness at " + x.cells[i + 1][k] + ", " + x.cells[i + 1][h]);
      }
      ++r.witnesses;
    }
  }
  // The relation itself, over every pair.
  for (int a = 0; a < x.count(i); ++a) {
    for (int b = 0; b < x.count(i); ++b) {
      if (!homotopy_related(m, i, a, b)) continue;
      if (!homotopy_related(m, i, b, a)) return fail("not symmetric on " + x.cells[i][a]);
      for (int c = 0; c < x.count(i); ++c) {
        if (homotopy_related(m, i, b, c) && !homotopy_related(m, i, a, c)) {
          return fail("not transitive on " + x.cells[i][a]);
        }
      }
    }
  }
  return r;
}

std::vector<std::vector<int>> pi0(const Model& m) {
  std::vector<int> class_of(m.carrier.count(0));
  if (m.trunc() >= 1) {
    class_of = homotopy_classes(m, 0);
  } else {
    std::iota(class_of.begin(), class_of.end(), 0);
  }
  std::vector<std::vector<int>> out;
  for (int x = 0; x < static_cast<int>(class_of.size()); ++x) {
    if (class_of[x] >= static_cast<int>(out.size())) out.resize(class_of[x] + 1);
    out[class_of[x]].push_back(x);
  }
  return out;
}

bool PiGroupoid::is_groupoid() const {
  const int n = arrows();
  for (int o = 0; o < objects; ++o) {
    int e = identity[o];
    if (e < 0 || src[e] != o || tgt[e] != o) return false;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (src[a] != tgt[b]) continue;
      auto ab = comp.find({a, b});
      if (ab == comp.end()) return false;
      if (src[ab->second] != src[b] || tgt[ab->second] != tgt[a]) return false;
      for (int c = 0; c < n; ++c) {
        if (src[b] != tgt[c]) continue;
        if (comp.at({ab->second, c}) != comp.at({a, comp.at({b, c})})) return false;
      }
    }
    if (comp.at({identity[tgt[a]], a}) != a || comp.at({a, identity[src[a]]}) != a) return false;
    int v = inverse[a];
    if (v < 0 || comp.at({a, v}) != identity[tgt[a]] || comp.at({v, a}) != identity[src[a]]) return false;
  }
  return true;
}

PiGroupoid varpi(const Model& m, int i, StructuralCatalog& cat) {
  if (i < 1 || i + 1 > m.trunc()) throw std::invalid_argument("varpi needs 1 <= i and i + 1 <= trunc");
  PiGroupoid p;
  p.dim = i;
  p.objects = m.carrier.count(i - 1);
  p.class_of = homotopy_classes(m, i);
  std::vector<std::vector<int>> members;
  for (int x = 0; x < m.carrier.count(i); ++x) {
    if (p.class_of[x] >= static_cast<int>(members.size())) {
      members.resize(p.class_of[x] + 1);
      p.representative.push_back(x);
      p.src.push_back(m.carrier.src[i][x]);
      p.tgt.push_back(m.carrier.tgt[i][x]);
    }
    members[p.class_of[x]].push_back(x);
  }
  auto nabla = cat.comp(1, i);
  const int n = p.arrows();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (p.src[a] != p.tgt[b]) continue;
      int cls = -1;
      for (int x : members[a]) {
        for (int y : members[b]) {
          int c = p.class_of[eval(m, nabla, {x, y})];
          if (cls >= 0 && c != cls) throw CoherenceFailure("composition does not descend to classes");
          cls = c;
        }
      }
      p.comp[{a, b}] = cls;
    }
  }
  auto unit = cat.unit(i - 1);
  for (int o = 0; o < p.objects; ++o) p.identity.push_back(p.class_of[eval(m, unit, {o})]);
  TermPtr omega;
  try {
    omega = cat.inverse(1, i);
  } catch (const DomainError&) {
  }
  for (int a = 0; a < n; ++a) {
    int v = -1;
    if (omega && m.interprets(omega->symbol()->id)) {
      v = p.class_of[eval(m, omega, {p.representative[a]})];
    } else {
      for (int b = 0; b < n && v < 0; ++b) {
        if (p.src[b] == p.tgt[a] && p.tgt[b] == p.src[a] && p.comp[{a, b}] == p.identity[p.tgt[a]] &&
            p.comp[{b, a}] == p.identity[p.src[a]]) {
          v = b;
        }
      }
    }
    p.inverse.push_back(v);
  }
  return p;
}

namespace {

struct PiData {
  PiGroupoid groupoid;
  PiGroup group;
};

PiData pi_data(const Model& m, int x, int i, StructuralCatalog& cat) {
  if (!m.carrier.contains({0, x})) throw std::invalid_argument("base point out of range");
  int u = x;
  for (int k = 0; k + 2 <= i; ++k) u = eval(m, cat.unit(k), {u});
  PiData d{varpi(m, i, cat), {}};
  const auto& p = d.groupoid;
  d.group.base = u;
  for (int a = 0; a < p.arrows(); ++a) {
    if (p.src[a] == u && p.tgt[a] == u) d.group.classes.push_back(a);
  }
  const int n = static_cast<int>(d.group.classes.size());
  auto index = [&](int cls) {
    return static_cast<int>(std::find(d.group.classes.begin(), d.group.classes.end(), cls) -
                            d.group.classes.begin());
  };
  d.group.group.name = "pi" + std::to_string(i);
  d.group.group.mul.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      d.group.group.mul[a][b] = index(p.comp.at({d.group.classes[a], d.group.classes[b]}));
    }
  }
  d.group.group.identity = index(p.identity[u]);
  return d;
}

}  // namespace

PiGroup pi_n(const Model& m, int x, int i, StructuralCatalog& cat) { return pi_data(m, x, i, cat).group; }

Model transport(const Model& m, const GSMorphism& perm) {
  if (!is_injective(perm) || perm.map.size() != m.carrier.cells.size()) {
    throw std::invalid_argument("transport needs a bijection of cells");
  }
  const auto& x = m.carrier;
  GlobularSet y(x.trunc);
  for (int k = 0; k <= x.trunc; ++k) {
    if (static_cast<int>(perm.map[k].size()) != x.count(k)) {
      throw std::invalid_argument("transport needs a bijection of cells");
    }
    y.cells[k].resize(x.count(k));
    y.src[k].assign(k ? x.count(k) : 0, 0);
    y.tgt[k].assign(k ? x.count(k) : 0, 0);
    for (int c = 0; c < x.count(k); ++c) {
      int d = perm.map[k].at(c);
      if (d < 0 || d >= x.count(k)) throw std::invalid_argument("transport needs a bijection of cells");
      y.cells[k][d] = x.cells[k][c];
      if (k) {
        y.src[k][d] = perm.map[k - 1][x.src[k][c]];
        y.tgt[k][d] = perm.map[k - 1][x.tgt[k][c]];
      }
    }
  }
  Model out{std::move(y), m.theory, {}, m.generator};
  auto lookup = m.theory.lookup();
  for (const auto& [id, table] : m.ops) {
    auto h = lookup(id);
    auto& dst = out.ops[id];
    for (const auto& [args, v] : table) {
      std::vector<int> mapped(args.size());
      for (std::size_t k = 0; k < args.size(); ++k) mapped[k] = perm.map[h->codomain.tops[k]][args[k]];
      dst.emplace(std::move(mapped), perm.map[h->out_dim][v]);
    }
  }
  return out;
}

bool is_model_morphism(const Model& a, const Model& b, const GSMorphism& f) {
  if (!is_morphism(a.carrier, b.carrier, f)) return false;
  auto lookup = a.theory.lookup();
  for (const auto& [id, table] : a.ops) {
    auto other = b.ops.find(id);
    if (other == b.ops.end()) return false;
    auto h = lookup(id);
    for (const auto& [args, out] : table) {
      std::vector<int> mapped(args.size());
      for (std::size_t k = 0; k < args.size(); ++k) mapped[k] = f.map[h->codomain.tops[k]][args[k]];
      auto it = other->second.find(mapped);
      if (it == other->second.end() || it->second != f.map[h->out_dim][out]) return false;
    }
  }
  return true;
}

WeqReport is_weak_equivalence(const Model& a, const Model& b, const GSMorphism& f, StructuralCatalog& cat) {
  WeqReport r;
  r.caveat = "homotopy groups checked for i + 1 <= " + std::to_string(std::min(a.trunc(), b.trunc())) +
             " only; higher ones are invisible at this truncation";
  auto fail = [&r](std::string why) {
    r.ok = false;
    r.reason = std::move(why);
    return r;
  };
  if (!is_model_morphism(a, b, f)) return fail("not a model morphism");
  auto ca = pi0(a), cb = pi0(b);
  std::vector<int> class_b(b.carrier.count(0));
  for (std::size_t c = 0; c < cb.size(); ++c) {
    for (int x : cb[c]) class_b[x] = static_cast<int>(c);
  }
  std::set<int> hit;
  for (const auto& cls : ca) hit.insert(class_b[f.map[0][cls.front()]]);
  if (hit.size() != ca.size() || ca.size() != cb.size()) return fail("pi0 is not a bijection");
  const int top = std::min(a.trunc(), b.trunc()) - 1;
  for (int i = 1; i <= top; ++i) {
    for (int x = 0; x < a.carrier.count(0); ++x) {
      auto da = pi_data(a, x, i, cat);
      auto db = pi_data(b, f.map[0][x], i, cat);
      std::vector<int> map;
      for (int cls : da.group.classes) {
        int image = db.groupoid.class_of[f.map[i][da.groupoid.representative[cls]]];
        auto pos = std::find(db.group.classes.begin(), db.group.classes.end(), image);
        if (pos == db.group.classes.end()) return fail("pi" + std::to_string(i) + " map leaves the base");
        map.push_back(static_cast<int>(pos - db.group.classes.begin()));
      }
      if (!is_isomorphism(da.group.group, db.group.group, map)) {
        return fail("pi" + std::to_string(i) + " at " + a.carrier.cells[0][x] + " is not an isomorphism");
      }
    }
    r.checked_up_to = i;
  }
  return r;
}

nlohmann::json to_json(const GlobularSet& x) {
  return {{"trunc", x.trunc}, {"cells", x.cells}, {"src", x.src}, {"tgt", x.tgt}};
}

GlobularSet globular_set_from_json(const nlohmann::json& j) {
  try {
    GlobularSet x(j.at("trunc").get<int>());
    x.cells = j.at("cells").get<std::vector<std::vector<std::string>>>();
    x.src = j.at("src").get<std::vector<std::vector<int>>>();
    x.tgt = j.at("tgt").get<std::vector<std::vector<int>>>();
    x.validate();
    return x;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("globular set json: ") + e.what());
  }
}

nlohmann::json to_json(const Model& m) {
  auto j = to_json(m.carrier);
  nlohmann::json ops = nlohmann::json::object();
  for (const auto& [id, table] : m.ops) {
    auto& rows = ops[std::to_string(id)] = nlohmann::json::array();
    for (const auto& [args, out] : table) rows.push_back({{"args", args}, {"out", out}});
  }
  j["ops"] = std::move(ops);
  j["tower"] = to_json(m.theory);
  if (!m.generator.is_null()) j["generator"] = m.generator;
  return j;
}

Model model_from_json(const nlohmann::json& j) {
  try {
    Model m{globular_set_from_json(j), tower_from_json(j.at("tower")), {}, j.value("generator", nlohmann::json{})};
    for (const auto& [key, rows] : j.at("ops").items()) {
      auto& table = m.ops[std::stoi(key)];
      for (const auto& row : rows) table.emplace(row.at("args").get<std::vector<int>>(), row.at("out").get<int>());
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("model json: ") + e.what());
  } catch (const std::logic_error& e) {
    throw std::invalid_argument(std::string("model json: ") + e.what());
  }
}

nlohmann::json to_json(const GSMorphism& f) { return {{"map", f.map}}; }

GSMorphism morphism_from_json(const nlohmann::json& j) {
  try {
    return {j.at("map").get<std::vector<std::vector<int>>>()};
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("morphism json: ") + e.what());
  }
}

}  // namespace globular
