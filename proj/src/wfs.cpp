#include "globular/wfs.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace globular {

std::size_t CellularPresentation::attachment_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.size();
  return n;
}

ExtensionLevel pushout_layer(std::span<const ExtensionLevel> levels, const std::vector<Attachment>& layer) {
  std::vector<ParallelPair> pairs;
  for (const auto& a : layer) {
    if (a.cell.table != a.pair.codomain || a.cell.dim != a.pair.dim) {
      throw std::invalid_argument("attachment pair does not match its cell");
    }
    pairs.push_back(a.pair);
  }
  ExtensionLevel out = add_liftings(levels, pairs);
  std::set<int> taken;
  for (const auto& l : levels) {
    for (const auto& s : l.symbols) taken.insert(s->id);
  }
  for (std::size_t k = 0; k < layer.size(); ++k) {
    const auto& given = layer[k].symbol;
    if (!given) continue;
    if (!taken.insert(given->id).second) {
      throw std::invalid_argument("symbol id h#" + std::to_string(given->id) + " attached twice");
    }
    out.symbols[k] = make_symbol(given->id, out.index, pairs[k], given->label);
  }
  int id = next_symbol_id(levels);
  for (std::size_t k = 0; k < layer.size(); ++k) {
    if (layer[k].symbol) continue;
    while (taken.contains(id)) ++id;
    taken.insert(id);
    out.symbols[k] = make_symbol(id, out.index, pairs[k]);
  }
  return out;
}

CellularPresentation presentation_from_tower(const ExtensionTower& tower) {
  CellularPresentation pres;
  pres.flavor = tower.flavor;
  for (int n = 1; n <= tower.top(); ++n) {
    auto& layer = pres.layers.emplace_back();
    for (const auto& h : tower.levels[n].symbols) {
      layer.push_back({{h->codomain, h->pair.dim}, h->pair, h});
    }
  }
  return pres;
}

ExtensionTower replay(const CellularPresentation& pres, const Bounds& bounds, Strategy strategy) {
  ExtensionTower tower;
  tower.flavor = pres.flavor;
  tower.strategy = strategy;
  tower.bounds = bounds;
  tower.bounds.levels = static_cast<int>(pres.layers.size());
  std::map<int, SymbolPtr> fresh;
  SymbolMap map = [&fresh](const SymbolPtr& s) {
    auto it = fresh.find(s->id);
    if (it == fresh.end()) {
      throw std::invalid_argument("h#" + std::to_string(s->id) + " is used before it is attached");
    }
    return it->second;
  };
  for (const auto& layer : pres.layers) {
    std::vector<Attachment> moved;
    for (const auto& a : layer) moved.push_back({a.cell, translate(a.pair, map), a.symbol});
    tower.levels.push_back(pushout_layer(tower.levels, moved));
    for (std::size_t k = 0; k < layer.size(); ++k) {
      if (layer[k].symbol) fresh[layer[k].symbol->id] = tower.levels.back().symbols[k];
    }
  }
  return tower;
}

namespace {

bool same_symbol(const LiftingSymbol& a, const LiftingSymbol& b) {
  return a.id == b.id && a.label == b.label && a.out_dim == b.out_dim &&
         to_sexpr(a.pair.f) == to_sexpr(b.pair.f) && to_sexpr(a.pair.g) == to_sexpr(b.pair.g);
}

}  // namespace

bool same_tower(const ExtensionTower& a, const ExtensionTower& b) {
  if (a.levels.size() != b.levels.size()) return false;
  for (std::size_t n = 0; n < a.levels.size(); ++n) {
    const auto& x = a.levels[n].symbols;
    const auto& y = b.levels[n].symbols;
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (!same_symbol(*x[k], *y[k]) || x[k]->level != y[k]->level) return false;
    }
  }
  return true;
}

bool same_symbols(const ExtensionTower& a, const ExtensionTower& b) {
  std::map<int, SymbolPtr> x, y;
  for (const auto& l : a.levels) {
    for (const auto& s : l.symbols) x.emplace(s->id, s);
  }
  for (const auto& l : b.levels) {
    for (const auto& s : l.symbols) y.emplace(s->id, s);
  }
  if (x.size() != y.size()) return false;
  for (const auto& [id, s] : x) {
    auto it = y.find(id);
    if (it == y.end() || !same_symbol(*s, *it->second)) return false;
  }
  return true;
}

Theorem310Report check_theorem_310(const ExtensionTower& tower, const Bounds& bounds) {
  Theorem310Report r;
  r.bounds = bounds;
  try {
    r.cellular = same_tower(replay(presentation_from_tower(tower), tower.bounds, tower.strategy), tower);
  } catch (const std::invalid_argument&) {
    r.cellular = false;
  }
  r.fibrancy = is_pseudo_coherator_up_to(tower, bounds);
  r.coherator_by_construction =
      tower.strategy == Strategy::canonical && tower.top() >= 1 && tower.bounds.max_dim >= bounds.max_dim &&
      tower.bounds.max_size >= bounds.max_size && tower.bounds.max_len >= bounds.max_len;
  return r;
}

int term_depth(const TermPtr& t) {
  if (t->kind() == TermKind::glob) return 0;
  int d = 0;
  for (const auto& c : t->components()) d = std::max(d, term_depth(c));
  return d + 1;
}

CellularPresentation omega_layering(const CellularPresentation& pres) {
  std::map<int, int> layer_of;
  std::vector<std::pair<int, const Attachment*>> placed;
  for (const auto& layer : pres.layers) {
    for (const auto& a : layer) {
      int n = std::max({1, term_depth(a.pair.f), term_depth(a.pair.g)});
      for (const auto& t : {a.pair.f, a.pair.g}) {
        for (const auto& s : symbols_of(t)) {
          auto it = layer_of.find(s->id);
          if (it == layer_of.end()) {
            throw std::invalid_argument("h#" + std::to_string(s->id) + " is used before it is attached");
          }
          n = std::max(n, it->second + 1);
        }
      }
      if (a.symbol) layer_of[a.symbol->id] = n;
      placed.emplace_back(n, &a);
    }
  }
  CellularPresentation out;
  out.flavor = pres.flavor;
  for (const auto& [n, a] : placed) {
    if (static_cast<int>(out.layers.size()) < n) out.layers.resize(n);
    out.layers[n - 1].push_back(*a);
  }
  return out;
}

TermPtr substitute(const TermPtr& t, const std::map<int, TermPtr>& assignment) {
  if (t->kind() == TermKind::glob) return t;
  std::vector<TermPtr> comps;
  for (const auto& c : t->components()) comps.push_back(substitute(c, assignment));
  auto it = assignment.find(t->symbol()->id);
  if (it == assignment.end()) {
    throw std::invalid_argument("no assignment for h#" + std::to_string(t->symbol()->id));
  }
  return compose(comps, it->second);
}

TermPtr TermTarget::resolve(const LiftingSymbol& h, const std::map<int, TermPtr>& done) {
  auto pair = make_parallel_pair(substitute(h.pair.f, done), substitute(h.pair.g, done));
  return provider.lift(pair, h.label);
}

ModelTarget::ModelTarget(const ExtensionTower& theory, GlobularSet carrier, Chooser c)
    : model{std::move(carrier), theory, {}, {}}, chooser(std::move(c)) {
  model.carrier.validate();
}

ModelTarget::Value ModelTarget::resolve(const LiftingSymbol& h, const std::map<int, Value>&) {
  if (h.out_dim > model.trunc() || dimension(h.codomain) > model.trunc()) return {};
  for (const auto& t : {h.pair.f, h.pair.g}) {
    for (const auto& s : symbols_of(t)) {
      if (!model.interprets(s->id)) return {};
    }
  }
  auto table = fill_table(model, h, chooser);
  model.ops[h.id] = table;
  return table;
}

nlohmann::json to_json(const CellularPresentation& pres) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : pres.layers) {
    nlohmann::json l = nlohmann::json::array();
    for (const auto& a : layer) {
      nlohmann::json e = {{"table", to_string(a.cell.table)},
                          {"dim", a.cell.dim},
                          {"pair", {{"f", to_sexpr(a.pair.f)}, {"g", to_sexpr(a.pair.g)}}}};
      if (a.symbol) {
        e["id"] = a.symbol->id;
        if (!a.symbol->label.empty()) e["label"] = a.symbol->label;
      }
      l.push_back(std::move(e));
    }
    layers.push_back(std::move(l));
  }
  return {{"flavor", to_string(pres.flavor)}, {"layers", std::move(layers)}};
}

CellularPresentation presentation_from_json(const nlohmann::json& j) {
  try {
    CellularPresentation pres;
    pres.flavor = parse_flavor(j.at("flavor").get<std::string>());
    std::map<int, SymbolPtr> known;
    SymbolLookup lookup = [&known](int id) -> SymbolPtr {
      auto it = known.find(id);
      return it == known.end() ? nullptr : it->second;
    };
    int level = 0;
    for (const auto& lj : j.at("layers")) {
      ++level;
      auto& layer = pres.layers.emplace_back();
      std::vector<SymbolPtr> fresh;
      for (const auto& e : lj) {
        auto pair = make_parallel_pair(parse_term(e.at("pair").at("f").get<std::string>(), lookup),
                                       parse_term(e.at("pair").at("g").get<std::string>(), lookup));
        GenCofibration cell{parse_table(e.at("table").get<std::string>()), e.at("dim").get<int>()};
        SymbolPtr h;
        if (e.contains("id")) {
          h = make_symbol(e.at("id").get<int>(), level, pair, e.value("label", std::string{}));
          if (known.contains(h->id)) throw std::invalid_argument("duplicate symbol id");
          fresh.push_back(h);
        }
        layer.push_back({cell, pair, h});
      }
      for (const auto& h : fresh) known.emplace(h->id, h);
    }
    return pres;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("presentation json: ") + e.what());
  } catch (const NotParallel& e) {
    throw std::invalid_argument(std::string("presentation json: ") + e.what());
  }
}

nlohmann::json to_json(const Theorem310Report& r) {
  return {{"bounds", to_json(r.bounds)},
          {"cellular", r.cellular},
          {"fibrant", r.fibrant()},
          {"coherator_by_construction", r.coherator_by_construction},
          {"consistent", r.consistent()},
          {"fibrancy", to_json(r.fibrancy)}};
}

}  // namespace globular
