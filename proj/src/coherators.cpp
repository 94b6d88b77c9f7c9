#include "globular/coherators.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace globular {

std::string to_string(Flavor f) { return f == Flavor::groupoid ? "groupoid" : "category"; }

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::canonical:
      return "canonical";
    case Strategy::batanin_leinster:
      return "bl";
    case Strategy::reduced:
      return "reduced";
  }
  return "";
}

Flavor parse_flavor(std::string_view s) {
  if (s == "groupoid") return Flavor::groupoid;
  if (s == "category") return Flavor::category;
  throw std::invalid_argument("unknown flavor '" + std::string(s) + "'");
}

Strategy parse_strategy(std::string_view s) {
  if (s == "canonical") return Strategy::canonical;
  if (s == "bl" || s == "batanin-leinster") return Strategy::batanin_leinster;
  if (s == "reduced") return Strategy::reduced;
  throw std::invalid_argument("unknown strategy '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// TermSpace

struct TermSpace::TableTerms {
  std::vector<std::vector<std::vector<TermPtr>>> by_size;  // [dim][size]
  std::vector<std::vector<TermPtr>> all;                   // [dim]
};

TermSpace::TermSpace(std::vector<ExtensionLevel> levels, int max_dim, int max_size,
                     std::size_t max_terms)
    : max_dim_(max_dim), max_size_(max_size), max_terms_(max_terms) {
  if (max_dim < 0 || max_size < 0) throw std::invalid_argument("negative term bounds");
  for (const auto& l : levels) {
    for (const auto& s : l.symbols) {
      if (s->out_dim <= max_dim && dimension(s->codomain) <= max_dim) symbols_.push_back(s);
    }
  }
  std::sort(symbols_.begin(), symbols_.end(),
            [](const SymbolPtr& a, const SymbolPtr& b) { return a->id < b->id; });
}

TermSpace::~TermSpace() = default;
TermSpace::TermSpace(TermSpace&&) noexcept = default;
TermSpace& TermSpace::operator=(TermSpace&&) noexcept = default;

const std::vector<TermPtr>& TermSpace::terms(const DimensionTable& t, int dim) {
  static const std::vector<TermPtr> none;
  if (dim < 0 || dim > max_dim_) return none;
  return build(t).all[dim];
}

TermSpace::TableTerms& TermSpace::build(const DimensionTable& t) {
  if (auto it = cache_.find(t); it != cache_.end()) return *it->second;
  auto tt = std::make_unique<TableTerms>();
  int dims = max_dim_ + 1;
  tt->by_size.assign(dims, std::vector<std::vector<TermPtr>>(max_size_ + 1));
  tt->all.assign(dims, {});

  // face_index[x][b]: terms D_x -> t by their target face at dimension b.
  using FaceMap = std::unordered_map<TermPtr, std::vector<TermPtr>, TermHash, TermEq>;
  std::vector<std::vector<FaceMap>> face_index(dims);
  for (int x = 0; x < dims; ++x) face_index[x].resize(x);
  auto index = [&](const TermPtr& term) {
    int x = term->dim();
    for (int b = 0; b < x; ++b) {
      face_index[x][b][precompose(term, GlobeMap::target(b, x))].push_back(term);
    }
  };

  const GlobularSet& rt = realization(t).set;
  if (max_size_ >= 1) {
    for (int j = 0; j <= std::min(max_dim_, rt.trunc); ++j) {
      for (int c = 0; c < rt.count(j); ++c) {
        tt->by_size[j][1].push_back(glob(t, j, c));
        index(tt->by_size[j][1].back());
      }
    }
  }

  std::size_t total = 0;
  for (const auto& bucket : tt->by_size) total += bucket[std::min(max_size_, 1)].size();
  if (total > max_terms_) {
    throw BudgetExceeded("more than " + std::to_string(max_terms_) + " terms into " + to_string(t));
  }
  for (int s = 2; s <= max_size_; ++s) {
    std::vector<TermPtr> fresh;
    for (const auto& h : symbols_) {
      const DimensionTable& x = h->codomain;
      int m = x.length();
      if (m > s - 1) continue;
      std::vector<TermPtr> chosen;
      std::function<void(int, int)> pick = [&](int k, int budget) {
        if (k == m) {
          if (budget != 0) return;
          if (total + fresh.size() >= max_terms_) {
            throw BudgetExceeded("more than " + std::to_string(max_terms_) + " terms into " +
                                 to_string(t) + " at size " + std::to_string(s));
          }
          fresh.push_back(lift_unchecked(h, chosen));
          return;
        }
        int lo = (k == m - 1) ? budget : 1;
        int hi = budget - (m - 1 - k);
        if (lo > hi) return;
        auto take = [&](const TermPtr& c) {
          chosen.push_back(c);
          pick(k + 1, budget - c->size());
          chosen.pop_back();
        };
        if (k == 0) {
          for (int sz = lo; sz <= hi; ++sz) {
            for (const auto& c : tt->by_size[x.tops[0]][sz]) take(c);
          }
          return;
        }
        int b = x.bottoms[k - 1];
        auto face = precompose(chosen.back(), GlobeMap::source(b, x.tops[k - 1]));
        const FaceMap& fm = face_index[x.tops[k]][b];
        auto it = fm.find(face);
        if (it == fm.end()) return;
        for (const auto& c : it->second) {
          if (c->size() >= lo && c->size() <= hi) take(c);
        }
      };
      pick(0, s - 1);
    }
    std::sort(fresh.begin(), fresh.end(), TermLess{});
    total += fresh.size();
    for (auto& term : fresh) {
      index(term);
      tt->by_size[term->dim()][s].push_back(std::move(term));
    }
  }
  for (int j = 0; j < dims; ++j) {
    for (int s = 1; s <= max_size_; ++s) {
      auto& bucket = tt->by_size[j][s];
      std::sort(bucket.begin(), bucket.end(), TermLess{});
      tt->all[j].insert(tt->all[j].end(), bucket.begin(), bucket.end());
    }
  }
  return *cache_.emplace(t, std::move(tt)).first->second;
}

// ---------------------------------------------------------------------------
// Towers

std::size_t ExtensionTower::symbol_count() const {
  std::size_t n = 0;
  for (const auto& l : levels) n += l.symbols.size();
  return n;
}

std::vector<ExtensionLevel> ExtensionTower::prefix(int n) const {
  if (n < 0 || n > top()) throw std::invalid_argument("tower has no level " + std::to_string(n));
  return {levels.begin(), levels.begin() + n + 1};
}

std::vector<ParallelPair> enumerate_parallel_pairs(TermSpace& space, Flavor flavor,
                                                   const Bounds& bounds) {
  std::vector<ParallelPair> out;
  int max_dim = std::min(bounds.max_dim, space.max_dim());
  for (const auto& t : enumerate_tables(max_dim, bounds.max_len)) {
    for (int i = 0; i + 1 <= max_dim; ++i) {
      std::vector<TermPtr> terms;
      for (const auto& term : space.terms(t, i)) {
        if (term->size() <= bounds.max_size) terms.push_back(term);
      }
      std::vector<std::vector<TermPtr>> groups;
      if (i == 0) {
        groups.push_back(terms);
      } else {
        std::unordered_map<TermPtr, std::unordered_map<TermPtr, std::size_t, TermHash, TermEq>,
                           TermHash, TermEq>
            slot;
        for (const auto& term : terms) {
          auto [it, fresh] = slot[term->src()].try_emplace(term->tgt(), groups.size());
          if (fresh) groups.emplace_back();
          groups[it->second].push_back(term);
        }
      }
      std::vector<ParallelPair> local;
      for (const auto& g : groups) {
        for (const auto& a : g) {
          for (const auto& b : g) {
            ParallelPair p{a, b, i, t};
            if (flavor == Flavor::category && !is_admissible(p)) continue;
            if (out.size() + local.size() >= bounds.budget) {
              throw BudgetExceeded("more than " + std::to_string(bounds.budget) + " parallel pairs");
            }
            local.push_back(std::move(p));
          }
        }
      }
      std::sort(local.begin(), local.end(), [](const ParallelPair& a, const ParallelPair& b) {
        int sa = a.f->size() + a.g->size();
        int sb = b.f->size() + b.g->size();
        if (sa != sb) return sa < sb;
        return compare(a, b) < 0;
      });
      out.insert(out.end(), std::make_move_iterator(local.begin()),
                 std::make_move_iterator(local.end()));
    }
  }
  return out;
}

std::vector<ParallelPair> enumerate_parallel_pairs(const ExtensionTower& tower, int n,
                                                   const Bounds& bounds) {
  TermSpace space(tower.prefix(n), bounds.max_dim, bounds.max_size, bounds.budget);
  return enumerate_parallel_pairs(space, tower.flavor, bounds);
}

namespace {

struct PairHash {
  std::size_t operator()(const ParallelPair& p) const { return p.f->hash() * 131 + p.g->hash(); }
};
struct PairEq {
  bool operator()(const ParallelPair& a, const ParallelPair& b) const { return pairs_equal(a, b); }
};

}  // namespace

ExtensionTower build_tower(Flavor flavor, Strategy strategy, const Bounds& bounds) {
  if (bounds.max_dim < 0 || bounds.max_size < 0 || bounds.max_len < 0 || bounds.levels < 0) {
    throw std::invalid_argument("tower bounds must be non-negative");
  }
  ExtensionTower tower;
  tower.flavor = flavor;
  tower.strategy = strategy;
  tower.bounds = bounds;
  std::unordered_set<ParallelPair, PairHash, PairEq> adjoined;
  for (int n = 0; n < bounds.levels; ++n) {
    TermSpace space(tower.prefix(n), bounds.max_dim, bounds.max_size, bounds.budget);
    std::vector<ParallelPair> pairs;
    try {
      pairs = enumerate_parallel_pairs(space, flavor, bounds);
    } catch (const BudgetExceeded& e) {
      throw BudgetExceeded("level " + std::to_string(n + 1) + ": " + e.what());
    }
    std::vector<ParallelPair> chosen;
    if (strategy == Strategy::canonical) {
      chosen = std::move(pairs);
    } else if (strategy == Strategy::batanin_leinster) {
      for (auto& p : pairs) {
        if (!adjoined.contains(p)) chosen.push_back(std::move(p));
      }
    } else {
      LiftingIndex index(tower.prefix(n), bounds.max_dim, bounds.max_size, bounds.budget);
      for (auto& p : pairs) {
        if (!index.find(p)) chosen.push_back(std::move(p));
      }
    }
    for (const auto& p : chosen) adjoined.insert(p);
    tower.levels.push_back(add_liftings(tower.levels, chosen));
  }
  return tower;
}

// ---------------------------------------------------------------------------
// Liftings

LiftingIndex::LiftingIndex(const ExtensionTower& tower, int search_bound)
    : LiftingIndex(tower.levels, tower.bounds.max_dim, search_bound) {}

LiftingIndex::LiftingIndex(std::vector<ExtensionLevel> levels, int max_dim, int search_bound,
                           std::size_t max_terms)
    : space_(levels, max_dim, search_bound, max_terms) {
  for (const auto& l : levels) {
    for (const auto& s : l.symbols) direct_.try_emplace(Key{s->pair.f, s->pair.g}, s);
  }
}

std::optional<TermPtr> LiftingIndex::find(const ParallelPair& p) {
  if (auto d = direct_.find(Key{p.f, p.g}); d != direct_.end()) {
    std::vector<TermPtr> comps;
    for (int k = 0; k < p.codomain.length(); ++k) comps.push_back(summand(p.codomain, k));
    return lift_unchecked(d->second, std::move(comps));
  }
  if (p.dim + 1 > space_.max_dim()) return std::nullopt;
  auto key = std::make_pair(p.codomain, p.dim + 1);
  auto it = found_.find(key);
  if (it == found_.end()) {
    std::unordered_map<Key, TermPtr, KeyHash> by_boundary;
    for (const auto& t : space_.terms(p.codomain, p.dim + 1)) {
      by_boundary.try_emplace(Key{t->src(), t->tgt()}, t);
    }
    it = found_.emplace(key, std::move(by_boundary)).first;
  }
  auto hit = it->second.find(Key{p.f, p.g});
  if (hit == it->second.end()) return std::nullopt;
  return hit->second;
}

std::optional<TermPtr> has_lifting(const ExtensionTower& tower, const ParallelPair& p,
                                   int search_bound) {
  LiftingIndex index(tower, search_bound);
  return index.find(p);
}

FibrancyReport is_pseudo_coherator_up_to(const ExtensionTower& tower, const Bounds& bounds) {
  FibrancyReport r;
  r.bounds = bounds;
  r.lift_level = tower.top();
  r.pair_level = std::max(tower.top() - 1, 0);
  auto pairs = enumerate_parallel_pairs(tower, r.pair_level, bounds);
  LiftingIndex index(tower.levels, bounds.max_dim, bounds.max_size, bounds.budget);
  for (const auto& p : pairs) {
    ++r.pairs_checked;
    if (!index.find(p)) r.failures.push_back(p);
  }
  return r;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const Bounds& b) {
  return {{"max_dim", b.max_dim}, {"max_size", b.max_size}, {"max_len", b.max_len},
          {"levels", b.levels},   {"budget", b.budget}};
}

Bounds bounds_from_json(const nlohmann::json& j) {
  Bounds b;
  b.max_dim = j.at("max_dim").get<int>();
  b.max_size = j.at("max_size").get<int>();
  b.max_len = j.at("max_len").get<int>();
  b.levels = j.at("levels").get<int>();
  b.budget = j.value("budget", b.budget);
  return b;
}

nlohmann::json to_json(const ExtensionLevel& level) {
  nlohmann::json syms = nlohmann::json::array();
  for (const auto& s : level.symbols) {
    nlohmann::json e = {{"id", s->id},
                        {"dim", s->out_dim},
                        {"codomain", to_string(s->codomain)},
                        {"pair", {{"f", to_sexpr(s->pair.f)}, {"g", to_sexpr(s->pair.g)}}}};
    if (!s->label.empty()) e["label"] = s->label;
    syms.push_back(std::move(e));
  }
  return {{"index", level.index}, {"symbols", std::move(syms)}};
}

nlohmann::json to_json(const ExtensionTower& tower) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : tower.levels) levels.push_back(to_json(l));
  return {{"flavor", to_string(tower.flavor)},
          {"strategy", to_string(tower.strategy)},
          {"bounds", to_json(tower.bounds)},
          {"levels", std::move(levels)}};
}

ExtensionTower tower_from_json(const nlohmann::json& j) {
  try {
    ExtensionTower tower;
    tower.flavor = parse_flavor(j.at("flavor").get<std::string>());
    tower.strategy = parse_strategy(j.at("strategy").get<std::string>());
    tower.bounds = bounds_from_json(j.at("bounds"));
    tower.levels.clear();
    std::map<int, SymbolPtr> known;
    SymbolLookup lookup = [&](int id) -> SymbolPtr {
      auto it = known.find(id);
      return it == known.end() ? nullptr : it->second;
    };
    for (const auto& lj : j.at("levels")) {
      ExtensionLevel level;
      level.index = lj.at("index").get<int>();
      if (level.index != static_cast<int>(tower.levels.size())) {
        throw std::invalid_argument("levels out of order");
      }
      std::vector<SymbolPtr> fresh;
      for (const auto& sj : lj.at("symbols")) {
        auto f = parse_term(sj.at("pair").at("f").get<std::string>(), lookup);
        auto g = parse_term(sj.at("pair").at("g").get<std::string>(), lookup);
        auto pair = make_parallel_pair(f, g);
        for (const auto& t : {f, g}) {
          for (const auto& s : symbols_of(t)) {
            if (s->level >= level.index) throw std::invalid_argument("symbol used before its level");
          }
        }
        int id = sj.at("id").get<int>();
        if (known.contains(id)) throw std::invalid_argument("duplicate symbol id");
        auto h = make_symbol(id, level.index, pair, sj.value("label", std::string{}));
        if (sj.contains("dim") && sj.at("dim").get<int>() != h->out_dim) {
          throw std::invalid_argument("symbol dimension does not match its pair");
        }
        fresh.push_back(h);
        level.symbols.push_back(h);
      }
      for (const auto& h : fresh) known.emplace(h->id, h);
      tower.levels.push_back(std::move(level));
    }
    if (tower.levels.empty()) tower.levels.push_back({});
    if (!tower.levels[0].symbols.empty()) throw std::invalid_argument("level 0 must be empty");
    return tower;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("tower json: ") + e.what());
  } catch (const NotParallel& e) {
    throw std::invalid_argument(std::string("tower json: ") + e.what());
  }
}

nlohmann::json to_json(const FibrancyReport& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& p : r.failures) {
    failures.push_back({{"codomain", to_string(p.codomain)},
                        {"dim", p.dim},
                        {"f", to_sexpr(p.f)},
                        {"g", to_sexpr(p.g)}});
  }
  return {{"bounds", to_json(r.bounds)},
          {"pair_level", r.pair_level},
          {"lift_level", r.lift_level},
          {"pairs_checked", r.pairs_checked},
          {"ok", r.ok()},
          {"failures", std::move(failures)}};
}

}  // namespace globular
