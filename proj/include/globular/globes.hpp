#ifndef GLOBULAR_GLOBES_HPP
#define GLOBULAR_GLOBES_HPP

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace globular {

/// Which side of the globe an arrow D_i -> D_j lands on.
enum class Polarity { identity, source, target };

/// An arrow of the category of globes in canonical form.
///
/// The coglobular relations collapse every composite of cosource/cotarget
/// generators D_i -> D_j (i < j) onto one of two arrows, determined by the
/// lowest-dimensional generator. So an arrow is fully described by its
/// endpoints and a polarity.
struct GlobeMap {
  int src_dim = 0;
  int tgt_dim = 0;
  Polarity polarity = Polarity::identity;

  static GlobeMap identity(int i);
  static GlobeMap source(int i, int j);
  static GlobeMap target(int i, int j);

  bool is_identity() const { return polarity == Polarity::identity; }
  bool valid() const;

  auto operator<=>(const GlobeMap&) const = default;
};

/// Hom_Glob(D_i, D_j) in a fixed order: source before target.
std::vector<GlobeMap> hom_globes(int i, int j);

/// g2 after g1. Throws std::invalid_argument when tgt_dim(g1) != src_dim(g2).
GlobeMap compose(const GlobeMap& g2, const GlobeMap& g1);

/// "s^j_i", "t^j_i" or "id_i".
std::string to_string(const GlobeMap& g);
GlobeMap parse_globe_map(std::string_view text);

}  // namespace globular

#endif
