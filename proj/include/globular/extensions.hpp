#ifndef GLOBULAR_EXTENSIONS_HPP
#define GLOBULAR_EXTENSIONS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "globular/terms.hpp"

namespace globular {

/// Symbols adjoined at one stage of a tower C_0 -> C_1 -> ...
struct ExtensionLevel {
  int index = 0;
  std::vector<SymbolPtr> symbols;
};

SymbolPtr make_symbol(int id, int level, ParallelPair pair, std::string label = {});

/// One past the largest symbol id in `levels` (1 for Θ₀ alone).
int next_symbol_id(std::span<const ExtensionLevel> levels);

/// The next level: one fresh symbol per pair, numbered in order from
/// next_symbol_id. Throws std::invalid_argument when a pair mentions a
/// symbol that is not in `levels`.
ExtensionLevel add_liftings(std::span<const ExtensionLevel> levels,
                            std::span<const ParallelPair> pairs);

SymbolLookup lookup_in(std::span<const ExtensionLevel> levels);

/// f = g ∘ f' with g: realize(table) -> realize(codomain) globular and f'
/// algebraic. g is the smallest sub-globular-sum containing the cells f
/// touches.
struct Decomposition {
  DimensionTable table;
  GSMorphism globular;
  TermPtr algebraic;
};

Decomposition algebraic_decompose(const TermPtr& f);
bool is_algebraic(const TermPtr& f);

/// f' with f = g ∘ f', when the injective g: realize(x) -> realize(codomain
/// of f) contains every cell f touches.
std::optional<TermPtr> factor_through(const TermPtr& f, const DimensionTable& x,
                                      const GSMorphism& g);

/// Both arrows algebraic, or f = σ_T f' and g = τ_T g' with f', g' algebraic.
bool is_admissible(const ParallelPair& p);

}  // namespace globular

#endif
