#include "globular/terms.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

namespace globular {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t table_hash(const DimensionTable& t) {
  std::size_t h = 0x51ed27;
  for (int v : t.tops) h = mix(h, static_cast<std::size_t>(v));
  for (int v : t.bottoms) h = mix(h, static_cast<std::size_t>(v) + 101);
  return h;
}

GlobeMap lower_to(int j, int i, Polarity p) {
  if (j == i) return GlobeMap::identity(i);
  return p == Polarity::source ? GlobeMap::source(j, i) : GlobeMap::target(j, i);
}

}  // namespace

struct TermFactory {
  static std::shared_ptr<Term> blank() { return std::shared_ptr<Term>(new Term()); }

  static TermPtr make_lift(const SymbolPtr& h, std::vector<TermPtr> components) {
    auto t = blank();
    t->kind_ = TermKind::lift;
    t->table_ = components.front()->table();
    t->dim_ = h->out_dim;
    t->symbol_ = h;
    t->hash_ = mix(mix(table_hash(t->table_), 0xabc + static_cast<std::size_t>(h->id)),
                   static_cast<std::size_t>(t->dim_));
    t->level_ = h->level;
    for (const auto& c : components) {
      t->hash_ = mix(t->hash_, c->hash());
      t->size_ += c->size();
      t->level_ = std::max(t->level_, c->level());
    }
    t->components_ = std::move(components);
    t->src_ = compose_unchecked(t->components_, h->pair.f);
    t->tgt_ = compose_unchecked(t->components_, h->pair.g);
    return t;
  }

  static TermPtr compose_unchecked(std::span<const TermPtr> v, const TermPtr& t) {
    if (t->kind() == TermKind::glob) {
      auto [k, g] = realization(t->table()).origin[t->dim()][t->cell()];
      return precompose(v[k], g);
    }
    std::vector<TermPtr> comps;
    comps.reserve(t->components().size());
    for (const auto& c : t->components()) comps.push_back(compose_unchecked(v, c));
    return make_lift(t->symbol(), std::move(comps));
  }
};

TermPtr glob(const DimensionTable& t, int dim, int cell) {
  static std::mutex mu;
  static std::map<std::tuple<DimensionTable, int, int>, TermPtr> cache;
  const Realization& r = realization(t);
  if (!r.set.contains({dim, cell})) {
    throw std::invalid_argument("glob: no " + std::to_string(dim) + "-cell " +
                                std::to_string(cell) + " in " + to_string(t));
  }
  auto key = std::make_tuple(t, dim, cell);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto node = TermFactory::blank();
  node->kind_ = TermKind::glob;
  node->table_ = t;
  node->dim_ = dim;
  node->cell_ = cell;
  node->hash_ = mix(mix(table_hash(t), static_cast<std::size_t>(dim)), static_cast<std::size_t>(cell));
  if (dim > 0) {
    node->src_ = glob(t, dim - 1, r.set.src[dim][cell]);
    node->tgt_ = glob(t, dim - 1, r.set.tgt[dim][cell]);
  }
  std::lock_guard lock(mu);
  return cache.emplace(key, node).first->second;
}

TermPtr identity_term(int i) { return glob(DimensionTable::disk(i), i, 0); }

TermPtr summand(const DimensionTable& t, int k) {
  return glob(t, t.tops.at(k), realization(t).top_cell(k));
}

TermPtr summand_face(const DimensionTable& t, int k, const GlobeMap& g) {
  return glob(t, g.src_dim, realization(t).cell_of(k, g));
}

void check_sum_arrow(const DimensionTable& x, std::span<const TermPtr> components) {
  x.validate();
  if (static_cast<int>(components.size()) != x.length()) {
    throw std::invalid_argument("sum arrow out of " + to_string(x) + " needs " +
                                std::to_string(x.length()) + " components");
  }
  for (int k = 0; k < x.length(); ++k) {
    if (!components[k]) throw std::invalid_argument("sum arrow: null component");
    if (components[k]->dim() != x.tops[k]) {
      throw std::invalid_argument("sum arrow: component " + std::to_string(k + 1) +
                                  " has the wrong dimension");
    }
    if (components[k]->table() != components[0]->table()) {
      throw std::invalid_argument("sum arrow: components have different codomains");
    }
  }
  for (int k = 0; k + 1 < x.length(); ++k) {
    int b = x.bottoms[k];
    auto left = precompose(components[k], GlobeMap::source(b, x.tops[k]));
    auto right = precompose(components[k + 1], GlobeMap::target(b, x.tops[k + 1]));
    if (!equal(left, right)) {
      throw std::invalid_argument("sum arrow: components " + std::to_string(k + 1) + " and " +
                                  std::to_string(k + 2) + " disagree on the gluing");
    }
  }
}

TermPtr lift(const SymbolPtr& h, std::vector<TermPtr> components) {
  if (!h) throw std::invalid_argument("lift: null symbol");
  check_sum_arrow(h->codomain, components);
  return TermFactory::make_lift(h, std::move(components));
}

TermPtr lift_unchecked(const SymbolPtr& h, std::vector<TermPtr> components) {
  return TermFactory::make_lift(h, std::move(components));
}

TermPtr translate(const TermPtr& t, const SymbolMap& map) {
  if (t->kind() == TermKind::glob) return t;
  std::vector<TermPtr> comps;
  for (const auto& c : t->components()) comps.push_back(translate(c, map));
  SymbolPtr h = map(t->symbol());
  if (!h) throw std::invalid_argument("translate: no image for h#" + std::to_string(t->symbol()->id));
  return lift(h, std::move(comps));
}

ParallelPair translate(const ParallelPair& p, const SymbolMap& map) {
  return ParallelPair{translate(p.f, map), translate(p.g, map), p.dim, p.codomain};
}

std::vector<TermPtr> globular_components(const DimensionTable& x, const DimensionTable& t,
                                         const GSMorphism& f) {
  const Realization& rx = realization(x);
  std::vector<TermPtr> out;
  for (int k = 0; k < x.length(); ++k) {
    out.push_back(glob(t, x.tops[k], f.map.at(x.tops[k]).at(rx.top_cell(k))));
  }
  return out;
}

TermPtr precompose(const TermPtr& u, const GlobeMap& g) {
  if (g.tgt_dim != u->dim()) throw std::invalid_argument("precompose: dimension mismatch");
  if (g.is_identity()) return u;
  if (u->kind() == TermKind::glob) {
    return glob(u->table(), g.src_dim, realization(u->table()).set.face(u->dim(), u->cell(), g));
  }
  TermPtr cur = u;
  for (int k = u->dim(); k > g.src_dim; --k) {
    cur = g.polarity == Polarity::source ? cur->src() : cur->tgt();
  }
  return cur;
}

TermPtr compose(std::span<const TermPtr> v, const TermPtr& t) {
  check_sum_arrow(t->table(), v);
  return TermFactory::compose_unchecked(v, t);
}

std::vector<TermPtr> compose(std::span<const TermPtr> v, std::span<const TermPtr> w) {
  std::vector<TermPtr> out;
  out.reserve(w.size());
  for (const auto& c : w) out.push_back(compose(v, c));
  return out;
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->hash() != b->hash() || a->kind() != b->kind() || a->dim() != b->dim() ||
      a->size() != b->size() || a->table() != b->table()) {
    return false;
  }
  if (a->kind() == TermKind::glob) return a->cell() == b->cell();
  if (a->symbol()->id != b->symbol()->id) return false;
  for (std::size_t k = 0; k < a->components().size(); ++k) {
    if (!equal(a->components()[k], b->components()[k])) return false;
  }
  return true;
}

std::strong_ordering compare(const TermPtr& a, const TermPtr& b) {
  if (a == b) return std::strong_ordering::equal;
  if (auto c = a->size() <=> b->size(); c != 0) return c;
  if (auto c = a->kind() <=> b->kind(); c != 0) return c;
  if (auto c = a->dim() <=> b->dim(); c != 0) return c;
  if (auto c = a->table() <=> b->table(); c != 0) return c;
  if (a->kind() == TermKind::glob) return a->cell() <=> b->cell();
  if (auto c = a->symbol()->id <=> b->symbol()->id; c != 0) return c;
  for (std::size_t k = 0; k < a->components().size(); ++k) {
    if (auto c = compare(a->components()[k], b->components()[k]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::pair<TermPtr, TermPtr> boundary_of(const TermPtr& t) {
  if (t->dim() == 0) throw std::invalid_argument("boundary_of: arrow out of D_0 has no boundary");
  return {t->src(), t->tgt()};
}

ParallelPair make_parallel_pair(const TermPtr& f, const TermPtr& g) {
  if (!f || !g) throw std::invalid_argument("make_parallel_pair: null term");
  if (f->dim() != g->dim()) {
    throw NotParallel("arrows out of D_" + std::to_string(f->dim()) + " and D_" +
                      std::to_string(g->dim()) + " are not parallel");
  }
  if (f->table() != g->table()) {
    throw NotParallel("codomains " + to_string(f->table()) + " and " + to_string(g->table()) +
                      " differ");
  }
  if (f->dim() > 0) {
    if (!equal(f->src(), g->src())) {
      throw NotParallel("sources differ: " + to_display(f->src()) + " vs " + to_display(g->src()));
    }
    if (!equal(f->tgt(), g->tgt())) {
      throw NotParallel("targets differ: " + to_display(f->tgt()) + " vs " + to_display(g->tgt()));
    }
  }
  return ParallelPair{f, g, f->dim(), f->table()};
}

bool pairs_equal(const ParallelPair& a, const ParallelPair& b) {
  return equal(a.f, b.f) && equal(a.g, b.g);
}

std::strong_ordering compare(const ParallelPair& a, const ParallelPair& b) {
  if (auto c = compare(a.f, b.f); c != 0) return c;
  return compare(a.g, b.g);
}

std::vector<SymbolPtr> symbols_of(const TermPtr& t) {
  std::map<int, SymbolPtr> found;
  std::vector<const Term*> stack{t.get()};
  while (!stack.empty()) {
    const Term* n = stack.back();
    stack.pop_back();
    if (n->kind() == TermKind::lift) {
      found.emplace(n->symbol()->id, n->symbol());
      for (const auto& c : n->components()) stack.push_back(c.get());
    }
  }
  std::vector<SymbolPtr> out;
  for (auto& [id, s] : found) out.push_back(s);
  return out;
}

// ---------------------------------------------------------------------------
// Raw terms

RawPtr raw_glob(const DimensionTable& t, int cell_dim, int cell, GlobeMap pre) {
  if (!realization(t).set.contains({cell_dim, cell})) {
    throw std::invalid_argument("raw glob: cell out of range");
  }
  if (pre.tgt_dim != cell_dim || !pre.valid()) {
    throw std::invalid_argument("raw glob: precomposition does not land on the cell");
  }
  auto r = std::make_shared<RawTerm>();
  r->kind = RawKind::glob;
  r->table = t;
  r->cell_dim = cell_dim;
  r->cell = cell;
  r->pre = pre;
  return r;
}

RawPtr raw_lift(const SymbolPtr& h, std::vector<RawPtr> post, GlobeMap pre) {
  if (!h) throw std::invalid_argument("raw lift: null symbol");
  if (static_cast<int>(post.size()) != h->codomain.length()) {
    throw std::invalid_argument("raw lift: wrong number of components");
  }
  for (int k = 0; k < h->codomain.length(); ++k) {
    if (raw_dim(*post[k]) != h->codomain.tops[k]) {
      throw std::invalid_argument("raw lift: component dimension mismatch");
    }
  }
  if (pre.tgt_dim != h->out_dim || !pre.valid()) {
    throw std::invalid_argument("raw lift: precomposition does not land on the symbol");
  }
  auto r = std::make_shared<RawTerm>();
  r->kind = RawKind::lift;
  r->symbol = h;
  r->post = std::move(post);
  r->pre = pre;
  return r;
}

RawPtr raw_comp(const DimensionTable& x, std::vector<RawPtr> post, RawPtr inner) {
  if (static_cast<int>(post.size()) != x.length()) {
    throw std::invalid_argument("raw comp: wrong number of components");
  }
  for (int k = 0; k < x.length(); ++k) {
    if (raw_dim(*post[k]) != x.tops[k]) {
      throw std::invalid_argument("raw comp: component dimension mismatch");
    }
  }
  if (raw_codomain(*inner) != x) throw std::invalid_argument("raw comp: inner codomain mismatch");
  auto r = std::make_shared<RawTerm>();
  r->kind = RawKind::comp;
  r->table = x;
  r->post = std::move(post);
  r->inner = std::move(inner);
  return r;
}

int raw_dim(const RawTerm& r) {
  return r.kind == RawKind::comp ? raw_dim(*r.inner) : r.pre.src_dim;
}

DimensionTable raw_codomain(const RawTerm& r) {
  return r.kind == RawKind::glob ? r.table : raw_codomain(*r.post.front());
}

int raw_size(const RawTerm& r) {
  int n = 1;
  for (const auto& p : r.post) n += raw_size(*p);
  if (r.inner) n += raw_size(*r.inner);
  return n;
}

RawPtr to_raw(const TermPtr& t) {
  if (t->kind() == TermKind::glob) {
    return raw_glob(t->table(), t->dim(), t->cell(), GlobeMap::identity(t->dim()));
  }
  std::vector<RawPtr> post;
  for (const auto& c : t->components()) post.push_back(to_raw(c));
  return raw_lift(t->symbol(), std::move(post), GlobeMap::identity(t->dim()));
}

TermPtr normalize(const RawPtr& r) {
  switch (r->kind) {
    case RawKind::glob:
      return glob(r->table, r->pre.src_dim,
                  realization(r->table).set.face(r->cell_dim, r->cell, r->pre));
    case RawKind::lift: {
      std::vector<TermPtr> comps;
      for (const auto& p : r->post) comps.push_back(normalize(p));
      return precompose(lift(r->symbol, std::move(comps)), r->pre);
    }
    case RawKind::comp: {
      std::vector<TermPtr> comps;
      for (const auto& p : r->post) comps.push_back(normalize(p));
      return compose(comps, normalize(r->inner));
    }
  }
  return nullptr;
}

namespace {

RawPtr raw_precompose(const RawPtr& r, const GlobeMap& g) {
  if (g.is_identity()) return r;
  if (r->kind == RawKind::comp) return raw_comp(r->table, r->post, raw_precompose(r->inner, g));
  auto out = std::make_shared<RawTerm>(*r);
  out->pre = compose(r->pre, g);
  return out;
}

RawPtr with_post(const RawPtr& r, std::size_t k, RawPtr replacement) {
  auto out = std::make_shared<RawTerm>(*r);
  out->post[k] = std::move(replacement);
  return out;
}

}  // namespace

std::vector<RawPtr> rewrite_steps(const RawPtr& r) {
  std::vector<RawPtr> out;
  switch (r->kind) {
    case RawKind::glob:
      if (!r->pre.is_identity()) {
        out.push_back(raw_glob(r->table, r->pre.src_dim,
                               realization(r->table).set.face(r->cell_dim, r->cell, r->pre),
                               GlobeMap::identity(r->pre.src_dim)));
      }
      break;
    case RawKind::lift:
      if (!r->pre.is_identity()) {
        const LiftingSymbol& h = *r->symbol;
        int i = h.out_dim - 1;
        GlobeMap rest = lower_to(r->pre.src_dim, i, r->pre.polarity);
        const TermPtr& side = r->pre.polarity == Polarity::source ? h.pair.f : h.pair.g;
        out.push_back(raw_comp(h.codomain, r->post, raw_precompose(to_raw(side), rest)));
      }
      break;
    case RawKind::comp: {
      const RawTerm& in = *r->inner;
      if (in.kind == RawKind::glob) {
        auto [k, g] = realization(r->table).origin[in.cell_dim][in.cell];
        out.push_back(raw_precompose(r->post[k], compose(g, in.pre)));
      } else if (in.kind == RawKind::lift) {
        std::vector<RawPtr> post;
        for (const auto& v : in.post) post.push_back(raw_comp(r->table, r->post, v));
        out.push_back(raw_lift(in.symbol, std::move(post), in.pre));
      } else {
        std::vector<RawPtr> post;
        for (const auto& v : in.post) post.push_back(raw_comp(r->table, r->post, v));
        out.push_back(raw_comp(in.table, std::move(post), in.inner));
      }
      for (const auto& step : rewrite_steps(r->inner)) {
        out.push_back(raw_comp(r->table, r->post, step));
      }
      break;
    }
  }
  for (std::size_t k = 0; k < r->post.size(); ++k) {
    for (auto& step : rewrite_steps(r->post[k])) out.push_back(with_post(r, k, std::move(step)));
  }
  return out;
}

bool is_normal(const RawTerm& r) {
  if (r.kind == RawKind::comp || !r.pre.is_identity()) return false;
  return std::all_of(r.post.begin(), r.post.end(), [](const RawPtr& p) { return is_normal(*p); });
}

// ---------------------------------------------------------------------------
// Text syntax

std::string to_sexpr(const TermPtr& t) { return to_sexpr(to_raw(t)); }

std::string to_sexpr(const RawPtr& r) {
  std::string s;
  auto list = [&](const std::vector<RawPtr>& v) {
    s += '[';
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) s += ' ';
      s += to_sexpr(v[k]);
    }
    s += ']';
  };
  switch (r->kind) {
    case RawKind::glob:
      s = "(glob " + to_string(r->table) + " " + std::to_string(r->cell_dim) + " " +
          std::to_string(r->cell);
      if (!r->pre.is_identity()) s += " " + to_string(r->pre);
      return s + ")";
    case RawKind::lift:
      s = "(lift h#" + std::to_string(r->symbol->id) + " ";
      list(r->post);
      return s + " " + to_string(r->pre) + ")";
    case RawKind::comp:
      s = "(comp ";
      list(r->post);
      return s + " " + to_sexpr(r->inner) + ")";
  }
  return s;
}

namespace {

class SexprParser {
 public:
  SexprParser(std::string_view text, const SymbolLookup& lookup) : text_(text), lookup_(lookup) {}

  RawPtr parse_all() {
    RawPtr r = term();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("term syntax: " + what + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string atom() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           std::string_view("()[]").find(text_[pos_]) == std::string_view::npos) {
      ++pos_;
    }
    if (start == pos_) fail("expected an atom");
    return std::string(text_.substr(start, pos_ - start));
  }
  int number() {
    std::string a = atom();
    try {
      std::size_t used = 0;
      int v = std::stoi(a, &used);
      if (used != a.size()) fail("bad number '" + a + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad number '" + a + "'");
    }
  }
  DimensionTable table() {
    skip();
    std::size_t start = pos_;
    expect('(');
    while (pos_ < text_.size() && text_[pos_] != ')') ++pos_;
    expect(')');
    return parse_table(text_.substr(start, pos_ - start));
  }
  std::vector<RawPtr> list() {
    expect('[');
    std::vector<RawPtr> out;
    while (!peek(']')) out.push_back(term());
    expect(']');
    return out;
  }
  RawPtr term() {
    expect('(');
    std::string head = atom();
    RawPtr r;
    if (head == "glob") {
      DimensionTable t = table();
      int d = number();
      int idx = number();
      GlobeMap pre = GlobeMap::identity(d);
      if (!peek(')')) pre = parse_globe_map(atom());
      r = raw_glob(t, d, idx, pre);
    } else if (head == "lift") {
      std::string name = atom();
      if (name.rfind("h#", 0) != 0) fail("symbol names look like h#ID");
      int id = 0;
      try {
        id = std::stoi(name.substr(2));
      } catch (const std::logic_error&) {
        fail("bad symbol '" + name + "'");
      }
      SymbolPtr h = lookup_ ? lookup_(id) : nullptr;
      if (!h) fail("unknown symbol " + name);
      auto post = list();
      GlobeMap pre = parse_globe_map(atom());
      r = raw_lift(h, std::move(post), pre);
    } else if (head == "comp") {
      auto post = list();
      RawPtr inner = term();
      r = raw_comp(raw_codomain(*inner), std::move(post), inner);
    } else {
      fail("unknown head '" + head + "'");
    }
    expect(')');
    return r;
  }

  std::string_view text_;
  const SymbolLookup& lookup_;
  std::size_t pos_ = 0;
};

}  // namespace

RawPtr parse_sexpr(std::string_view text, const SymbolLookup& lookup) {
  return SexprParser(text, lookup).parse_all();
}

TermPtr parse_term(std::string_view text, const SymbolLookup& lookup) {
  return normalize(parse_sexpr(text, lookup));
}

std::string to_display(const TermPtr& t) {
  if (t->kind() == TermKind::glob) return realization(t->table()).set.cells[t->dim()][t->cell()];
  const LiftingSymbol& h = *t->symbol();
  std::string s = h.label.empty() ? "h#" + std::to_string(h.id) : h.label;
  s += '[';
  for (std::size_t k = 0; k < t->components().size(); ++k) {
    if (k) s += ", ";
    s += to_display(t->components()[k]);
  }
  return s + ']';
}

}  // namespace globular
