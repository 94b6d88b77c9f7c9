#include "globular/globes.hpp"

#include <charconv>
#include <stdexcept>

namespace globular {

GlobeMap GlobeMap::identity(int i) {
  if (i < 0) throw std::invalid_argument("negative globe dimension");
  return {i, i, Polarity::identity};
}

GlobeMap GlobeMap::source(int i, int j) {
  if (i < 0 || i >= j) throw std::invalid_argument("source map needs 0 <= i < j");
  return {i, j, Polarity::source};
}

GlobeMap GlobeMap::target(int i, int j) {
  if (i < 0 || i >= j) throw std::invalid_argument("target map needs 0 <= i < j");
  return {i, j, Polarity::target};
}

bool GlobeMap::valid() const {
  if (src_dim < 0) return false;
  return polarity == Polarity::identity ? src_dim == tgt_dim : src_dim < tgt_dim;
}

std::vector<GlobeMap> hom_globes(int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("negative globe dimension");
  if (i == j) return {GlobeMap::identity(i)};
  if (i < j) return {GlobeMap::source(i, j), GlobeMap::target(i, j)};
  return {};
}

GlobeMap compose(const GlobeMap& g2, const GlobeMap& g1) {
  if (g1.tgt_dim != g2.src_dim) {
    throw std::invalid_argument("globe maps not composable: " + to_string(g2) + " after " +
                                to_string(g1));
  }
  Polarity p = g1.is_identity() ? g2.polarity : g1.polarity;
  return {g1.src_dim, g2.tgt_dim, p};
}

std::string to_string(const GlobeMap& g) {
  switch (g.polarity) {
    case Polarity::identity:
      return "id_" + std::to_string(g.src_dim);
    case Polarity::source:
      return "s^" + std::to_string(g.tgt_dim) + "_" + std::to_string(g.src_dim);
    case Polarity::target:
      return "t^" + std::to_string(g.tgt_dim) + "_" + std::to_string(g.src_dim);
  }
  return {};
}

namespace {

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad integer in globe map: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

GlobeMap parse_globe_map(std::string_view text) {
  if (text.starts_with("id_")) return GlobeMap::identity(parse_int(text.substr(3)));
  if (text.size() < 4 || (text[0] != 's' && text[0] != 't') || text[1] != '^') {
    throw std::invalid_argument("bad globe map: '" + std::string(text) + "'");
  }
  auto us = text.find('_');
  if (us == std::string_view::npos) {
    throw std::invalid_argument("bad globe map: '" + std::string(text) + "'");
  }
  int j = parse_int(text.substr(2, us - 2));
  int i = parse_int(text.substr(us + 1));
  return text[0] == 's' ? GlobeMap::source(i, j) : GlobeMap::target(i, j);
}

}  // namespace globular
