#include "globular/extensions.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace globular {

SymbolPtr make_symbol(int id, int level, ParallelPair pair, std::string label) {
  auto h = std::make_shared<LiftingSymbol>();
  h->id = id;
  h->level = level;
  h->out_dim = pair.dim + 1;
  h->codomain = pair.codomain;
  h->pair = std::move(pair);
  h->label = std::move(label);
  return h;
}

int next_symbol_id(std::span<const ExtensionLevel> levels) {
  int next = 1;
  for (const auto& l : levels) {
    for (const auto& s : l.symbols) next = std::max(next, s->id + 1);
  }
  return next;
}

ExtensionLevel add_liftings(std::span<const ExtensionLevel> levels,
                            std::span<const ParallelPair> pairs) {
  std::map<int, const LiftingSymbol*> known;
  for (const auto& l : levels) {
    for (const auto& s : l.symbols) known.emplace(s->id, s.get());
  }
  ExtensionLevel out;
  out.index = static_cast<int>(levels.size());
  int id = next_symbol_id(levels);
  for (const auto& p : pairs) {
    for (const auto& term : {p.f, p.g}) {
      for (const auto& s : symbols_of(term)) {
        auto it = known.find(s->id);
        if (it == known.end() || it->second != s.get()) {
          throw std::invalid_argument("add_liftings: pair refers to symbol h#" +
                                      std::to_string(s->id) + " outside the tower");
        }
      }
    }
    out.symbols.push_back(make_symbol(id++, out.index, p));
  }
  return out;
}

SymbolLookup lookup_in(std::span<const ExtensionLevel> levels) {
  auto table = std::make_shared<std::map<int, SymbolPtr>>();
  for (const auto& l : levels) {
    for (const auto& s : l.symbols) table->emplace(s->id, s);
  }
  return [table](int id) -> SymbolPtr {
    auto it = table->find(id);
    return it == table->end() ? nullptr : it->second;
  };
}

namespace {

// Flattened cells of realize(codomain) that occur as glob leaves of t.
std::vector<std::uint8_t> leaves(const TermPtr& t) {
  const GlobularSet& y = realization(t->table()).set;
  std::vector<std::uint8_t> mark(y.total_cells(), 0);
  std::vector<const Term*> stack{t.get()};
  while (!stack.empty()) {
    const Term* n = stack.back();
    stack.pop_back();
    if (n->kind() == TermKind::glob) {
      mark[flat_index(y, {n->dim(), n->cell()})] = 1;
    } else {
      for (const auto& c : n->components()) stack.push_back(c.get());
    }
  }
  return mark;
}

bool covers(const std::vector<std::uint8_t>& image, const std::vector<std::uint8_t>& need) {
  for (std::size_t k = 0; k < need.size(); ++k) {
    if (need[k] && !image[k]) return false;
  }
  return true;
}

std::vector<std::uint8_t> image_of(const GlobularSet& y, const GSMorphism& g) {
  std::vector<std::uint8_t> mark(y.total_cells(), 0);
  for (int k = 0; k < static_cast<int>(g.map.size()); ++k) {
    for (int c : g.map[k]) mark[flat_index(y, {k, c})] = 1;
  }
  return mark;
}

TermPtr pull_back(const TermPtr& f, const DimensionTable& x,
                  const std::vector<std::vector<int>>& inverse) {
  if (f->kind() == TermKind::glob) return glob(x, f->dim(), inverse[f->dim()][f->cell()]);
  std::vector<TermPtr> comps;
  for (const auto& c : f->components()) comps.push_back(pull_back(c, x, inverse));
  return lift(f->symbol(), std::move(comps));
}

}  // namespace

std::optional<TermPtr> factor_through(const TermPtr& f, const DimensionTable& x,
                                      const GSMorphism& g) {
  const GlobularSet& y = realization(f->table()).set;
  if (!covers(image_of(y, g), leaves(f))) return std::nullopt;
  std::vector<std::vector<int>> inverse(y.trunc + 1);
  for (int k = 0; k <= y.trunc; ++k) inverse[k].assign(y.count(k), -1);
  for (int k = 0; k < static_cast<int>(g.map.size()); ++k) {
    for (int c = 0; c < static_cast<int>(g.map[k].size()); ++c) {
      if (inverse[k][g.map[k][c]] >= 0) {
        throw std::invalid_argument("factor_through: globular map is not injective");
      }
      inverse[k][g.map[k][c]] = c;
    }
  }
  return pull_back(f, x, inverse);
}

Decomposition algebraic_decompose(const TermPtr& f) {
  auto need = leaves(f);
  for (const auto& sd : subdiagrams(f->table())) {
    if (!covers(sd.image, need)) continue;
    return {sd.table, sd.map, *factor_through(f, sd.table, sd.map)};
  }
  throw std::logic_error("algebraic_decompose: identity subdiagram missing");
}

bool is_algebraic(const TermPtr& f) {
  auto need = leaves(f);
  int total = realization(f->table()).set.total_cells();
  for (const auto& sd : subdiagrams(f->table())) {
    if (sd.cell_count >= total) break;
    if (covers(sd.image, need)) return false;
  }
  return true;
}

bool is_admissible(const ParallelPair& p) {
  if (is_algebraic(p.f) && is_algebraic(p.g)) return true;
  if (dimension(p.codomain) == 0) return false;
  DimensionTable b = boundary(p.codomain);
  auto [s, t] = cosource_cotarget(p.codomain);
  auto f1 = factor_through(p.f, b, s);
  if (!f1 || !is_algebraic(*f1)) return false;
  auto g1 = factor_through(p.g, b, t);
  return g1 && is_algebraic(*g1);
}

}  // namespace globular
