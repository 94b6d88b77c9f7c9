#include "globular/structural.hpp"

#include <charconv>

namespace globular {

// ---------------------------------------------------------------------------
// Providers

TermPtr FreeProvider::adjoin(const ParallelPair& p, std::string_view hint) {
  int level = 1;
  for (const auto& t : {p.f, p.g}) level = std::max(level, t->level() + 1);
  while (static_cast<int>(levels_.size()) <= level) {
    levels_.push_back(ExtensionLevel{static_cast<int>(levels_.size()), {}});
  }
  auto h = make_symbol(next_id_++, level, p, std::string(hint));
  levels_[level].symbols.push_back(h);
  std::vector<TermPtr> comps;
  for (int k = 0; k < p.codomain.length(); ++k) comps.push_back(summand(p.codomain, k));
  return lift_unchecked(h, std::move(comps));
}

TermPtr FreeProvider::lift(const ParallelPair& p, std::string_view hint) {
  if (auto it = answers_.find(p); it != answers_.end()) return it->second;
  if (flavor_ == Flavor::category && !is_admissible(p)) {
    throw NotAdmissible("pair (" + to_display(p.f) + ", " + to_display(p.g) +
                        ") is not admissible");
  }
  TermPtr t = adjoin(p, hint);
  answers_.emplace(p, t);
  return t;
}

TermPtr FreeProvider::fresh_lift(const ParallelPair& p, std::string_view hint) {
  if (flavor_ == Flavor::category && !is_admissible(p)) {
    throw NotAdmissible("pair (" + to_display(p.f) + ", " + to_display(p.g) +
                        ") is not admissible");
  }
  TermPtr t = adjoin(p, hint);
  answers_.try_emplace(p, t);
  return t;
}

TowerProvider::TowerProvider(const ExtensionTower& tower, int search_bound)
    : flavor_(tower.flavor), index_(tower.levels, tower.bounds.max_dim, search_bound) {}

TermPtr TowerProvider::lift(const ParallelPair& p, std::string_view hint) {
  if (flavor_ == Flavor::category && !is_admissible(p)) {
    throw NotAdmissible("pair (" + to_display(p.f) + ", " + to_display(p.g) +
                        ") is not admissible");
  }
  if (auto t = index_.find(p)) return *t;
  throw ProviderFailure("no lifting" + (hint.empty() ? std::string() : " for " + std::string(hint)) +
                        " of (" + to_display(p.f) + ", " + to_display(p.g) + ") into " +
                        to_string(p.codomain));
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// σ or τ of D_i as an arrow D_{i-1} -> D_i.
TermPtr face_of_disk(int i, Polarity p) {
  return summand_face(DimensionTable::disk(i), 0, p == Polarity::source ? GlobeMap::source(i - 1, i)
                                                                        : GlobeMap::target(i - 1, i));
}

// (ε ⨿ ... ⨿ ε): (i-1 ... | b) -> (i ... | b), ε = σ or τ on each summand.
std::vector<TermPtr> faces_sum(const DimensionTable& t, Polarity p) {
  std::vector<TermPtr> out;
  for (int k = 0; k < t.length(); ++k) {
    int i = t.tops[k];
    out.push_back(summand_face(t, k, p == Polarity::source ? GlobeMap::source(i - 1, i)
                                                           : GlobeMap::target(i - 1, i)));
  }
  return out;
}

}  // namespace

DimensionTable uniform_table(int i, int m, int b) {
  DimensionTable t;
  t.tops.assign(m, i);
  t.bottoms.assign(m - 1, b);
  t.validate();
  return t;
}

TermPtr StructuralCatalog::memo(const std::string& key, const std::function<ParallelPair()>& pair) {
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  TermPtr t = provider_.lift(pair(), key);
  cache_.emplace(key, t);
  return t;
}

ParallelPair StructuralCatalog::comp_pair(int l, int i) {
  require(l >= 1 && i >= l, "comp needs 1 <= l <= i");
  DimensionTable t = uniform_table(i, 2, i - l);
  if (l == 1) {
    return make_parallel_pair(summand_face(t, 1, GlobeMap::source(i - 1, i)),
                              summand_face(t, 0, GlobeMap::target(i - 1, i)));
  }
  TermPtr lower = comp(l - 1, i - 1);
  return make_parallel_pair(compose(faces_sum(t, Polarity::source), lower),
                            compose(faces_sum(t, Polarity::target), lower));
}

TermPtr StructuralCatalog::comp(int l, int i) {
  return memo("comp" + std::to_string(l) + "_" + std::to_string(i), [&] { return comp_pair(l, i); });
}

ParallelPair StructuralCatalog::comp_mary_pair(int i, int m) {
  require(i >= 1 && m >= 2, "m-ary composition needs i >= 1, m >= 2");
  DimensionTable t = uniform_table(i, m, i - 1);
  return make_parallel_pair(summand_face(t, m - 1, GlobeMap::source(i - 1, i)),
                            summand_face(t, 0, GlobeMap::target(i - 1, i)));
}

TermPtr StructuralCatalog::comp_mary(int i, int m) {
  return memo("mary" + std::to_string(m) + "_" + std::to_string(i),
              [&] { return comp_mary_pair(i, m); });
}

ParallelPair StructuralCatalog::assoc1_pair(int i) {
  require(i >= 1, "assoc1 needs i >= 1");
  DimensionTable t3 = uniform_table(i, 3, i - 1);
  TermPtr n = comp(1, i);
  TermPtr left = compose(std::vector<TermPtr>{compose(std::vector{summand(t3, 0), summand(t3, 1)}, n),
                                              summand(t3, 2)},
                         n);
  TermPtr right = compose(std::vector<TermPtr>{summand(t3, 0),
                                               compose(std::vector{summand(t3, 1), summand(t3, 2)}, n)},
                          n);
  return make_parallel_pair(left, right);
}

TermPtr StructuralCatalog::assoc1(int i) {
  return memo("assoc1_" + std::to_string(i), [&] { return assoc1_pair(i); });
}

std::pair<TermPtr, TermPtr> StructuralCatalog::assoc2_naive(int i) {
  require(i >= 2, "assoc2 needs i >= 2");
  DimensionTable t3 = uniform_table(i, 3, i - 2);
  TermPtr n2 = comp(2, i);
  TermPtr left = compose(
      std::vector<TermPtr>{compose(std::vector{summand(t3, 0), summand(t3, 1)}, n2), summand(t3, 2)},
      n2);
  TermPtr right = compose(
      std::vector<TermPtr>{summand(t3, 0), compose(std::vector{summand(t3, 1), summand(t3, 2)}, n2)},
      n2);
  return {left, right};
}

ParallelPair StructuralCatalog::assoc2_pair(int i) {
  require(i >= 2, "assoc2 needs i >= 2");
  DimensionTable t3 = uniform_table(i, 3, i - 2);
  auto [left, right] = assoc2_naive(i);
  TermPtr a1 = assoc1(i - 1);
  TermPtr n1 = comp(1, i);
  TermPtr a = compose(faces_sum(t3, Polarity::target), a1);
  TermPtr d = compose(faces_sum(t3, Polarity::source), a1);
  return make_parallel_pair(compose(std::vector{a, left}, n1), compose(std::vector{right, d}, n1));
}

TermPtr StructuralCatalog::assoc2(int i) {
  return memo("assoc2_" + std::to_string(i), [&] { return assoc2_pair(i); });
}

ParallelPair StructuralCatalog::unit_pair(int i) {
  require(i >= 0, "unit needs i >= 0");
  return make_parallel_pair(identity_term(i), identity_term(i));
}

TermPtr StructuralCatalog::unit(int i) {
  return memo("unit_" + std::to_string(i), [&] { return unit_pair(i); });
}

ParallelPair StructuralCatalog::left_unit_pair(int i) {
  require(i >= 1, "unit constraints need i >= 1");
  TermPtr tk = compose(std::vector{face_of_disk(i, Polarity::target)}, unit(i - 1));
  TermPtr f = compose(std::vector{tk, identity_term(i)}, comp(1, i));
  return make_parallel_pair(f, identity_term(i));
}

ParallelPair StructuralCatalog::right_unit_pair(int i) {
  require(i >= 1, "unit constraints need i >= 1");
  TermPtr sk = compose(std::vector{face_of_disk(i, Polarity::source)}, unit(i - 1));
  TermPtr f = compose(std::vector{identity_term(i), sk}, comp(1, i));
  return make_parallel_pair(f, identity_term(i));
}

std::pair<TermPtr, TermPtr> StructuralCatalog::unit_constraints(int i) {
  return {memo("lambda_" + std::to_string(i), [&] { return left_unit_pair(i); }),
          memo("rho_" + std::to_string(i), [&] { return right_unit_pair(i); })};
}

ParallelPair StructuralCatalog::inverse_pair(int l, int i) {
  require(l >= 1 && i >= l, "inverse needs 1 <= l <= i");
  if (l == 1) {
    return make_parallel_pair(face_of_disk(i, Polarity::target), face_of_disk(i, Polarity::source));
  }
  TermPtr lower = inverse(l - 1, i - 1);
  return make_parallel_pair(compose(std::vector{face_of_disk(i, Polarity::source)}, lower),
                            compose(std::vector{face_of_disk(i, Polarity::target)}, lower));
}

TermPtr StructuralCatalog::inverse(int l, int i) {
  return memo("inverse" + std::to_string(l) + "_" + std::to_string(i),
              [&] { return inverse_pair(l, i); });
}

ParallelPair StructuralCatalog::left_inverse_pair(int i) {
  require(i >= 1, "inverse constraints need i >= 1");
  TermPtr f = compose(std::vector{inverse(1, i), identity_term(i)}, comp(1, i));
  TermPtr g = compose(std::vector{face_of_disk(i, Polarity::source)}, unit(i - 1));
  return make_parallel_pair(f, g);
}

ParallelPair StructuralCatalog::right_inverse_pair(int i) {
  require(i >= 1, "inverse constraints need i >= 1");
  TermPtr f = compose(std::vector{identity_term(i), inverse(1, i)}, comp(1, i));
  TermPtr g = compose(std::vector{face_of_disk(i, Polarity::target)}, unit(i - 1));
  return make_parallel_pair(f, g);
}

std::pair<TermPtr, TermPtr> StructuralCatalog::inverse_constraints(int i) {
  return {memo("inverse_left_" + std::to_string(i), [&] { return left_inverse_pair(i); }),
          memo("inverse_right_" + std::to_string(i), [&] { return right_inverse_pair(i); })};
}

TermPtr StructuralCatalog::derive(std::string_view op, const std::map<std::string, int>& params) {
  auto get = [&](const char* name) {
    auto it = params.find(name);
    if (it == params.end()) {
      throw std::invalid_argument("operation " + std::string(op) + " needs parameter " + name);
    }
    return it->second;
  };
  if (op == "comp") return comp(params.contains("l") ? get("l") : 1, get("i"));
  if (op == "mary") return comp_mary(get("i"), get("m"));
  if (op == "assoc1") return assoc1(get("i"));
  if (op == "assoc2") return assoc2(get("i"));
  if (op == "unit") return unit(get("i"));
  if (op == "lambda") return unit_constraints(get("i")).first;
  if (op == "rho") return unit_constraints(get("i")).second;
  if (op == "inverse") return inverse(params.contains("l") ? get("l") : 1, get("i"));
  if (op == "inverse_left") return inverse_constraints(get("i")).first;
  if (op == "inverse_right") return inverse_constraints(get("i")).second;
  throw std::invalid_argument("unknown operation '" + std::string(op) + "'");
}

std::pair<std::string, std::map<std::string, int>> parse_op(std::string_view text) {
  auto colon = text.find(':');
  std::string name(text.substr(0, colon));
  std::map<std::string, int> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      auto comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      auto eq = item.find('=');
      if (eq == std::string_view::npos) throw std::invalid_argument("bad parameter '" + std::string(item) + "'");
      int v = 0;
      auto val = item.substr(eq + 1);
      auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
      if (ec != std::errc{} || ptr != val.data() + val.size()) {
        throw std::invalid_argument("bad parameter value '" + std::string(item) + "'");
      }
      params[std::string(item.substr(0, eq))] = v;
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  if (name.empty()) throw std::invalid_argument("empty operation name");
  return {name, params};
}

void populate(StructuralCatalog& cat, int max_dim) {
  for (int i = 0; i + 1 <= max_dim; ++i) cat.unit(i);
  for (int i = 1; i <= max_dim; ++i) {
    for (int l = 1; l <= i; ++l) cat.comp(l, i);
    cat.comp_mary(i, 3);
    if (i + 1 <= max_dim) {
      cat.assoc1(i);
      if (i >= 2) cat.assoc2(i);
      cat.unit_constraints(i);
    }
    try {
      for (int l = 1; l <= i; ++l) cat.inverse(l, i);
      if (i + 1 <= max_dim) cat.inverse_constraints(i);
    } catch (const NotAdmissible&) {
    }
  }
}

}  // namespace globular
