#ifndef GLOBULAR_TESTS_SUPPORT_HPP
#define GLOBULAR_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "globular/pasting.hpp"
#include "globular/wfs.hpp"

namespace globular::testing {

/// Random globular set with at most `max_cells` cells up to dimension `d`.
/// Higher cells only join parallel pairs, so the relations always hold.
inline GlobularSet random_globular_set(std::mt19937& rng, int d, int max_cells) {
  GlobularSet x(d);
  std::uniform_int_distribution<int> pick(0, 1 << 20);
  int budget = max_cells;
  int points = 1 + pick(rng) % std::max(1, std::min(3, budget));
  for (int c = 0; c < points; ++c) x.add_cell(0, "p" + std::to_string(c));
  budget -= points;
  for (int k = 1; k <= d && budget > 0; ++k) {
    int want = pick(rng) % (budget + 1);
    if (k == d) want = budget;
    for (int c = 0; c < want; ++c) {
      int n = x.count(k - 1);
      if (n == 0) break;
      int s = pick(rng) % n;
      std::vector<int> parallel;
      for (int t = 0; t < n; ++t) {
        if (k == 1 || (x.src[k - 1][s] == x.src[k - 1][t] && x.tgt[k - 1][s] == x.tgt[k - 1][t])) {
          parallel.push_back(t);
        }
      }
      int t = parallel[pick(rng) % parallel.size()];
      x.add_cell(k, "c" + std::to_string(k) + "_" + std::to_string(c), s, t);
    }
    budget -= want;
  }
  return x;
}

/// A presentation with `layers` layers: each layer attaches a random
/// selection of the pairs available so far, and some attachments are
/// delayed to a later layer.
inline CellularPresentation random_presentation(std::mt19937& rng, const Bounds& bounds, int layers,
                                                std::size_t per_layer) {
  ExtensionTower tower;
  std::vector<ParallelPair> delayed;
  std::bernoulli_distribution delay(0.3);
  for (int n = 0; n < layers; ++n) {
    auto pairs = enumerate_parallel_pairs(tower, n, bounds);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::vector<ParallelPair> chosen;
    std::vector<ParallelPair> next_delayed;
    for (auto& p : delayed) chosen.push_back(std::move(p));
    for (std::size_t k = 0; k < std::min(per_layer, pairs.size()); ++k) {
      if (n + 1 < layers && delay(rng)) {
        next_delayed.push_back(pairs[k]);
      } else {
        chosen.push_back(pairs[k]);
      }
    }
    delayed = std::move(next_delayed);
    tower.levels.push_back(add_liftings(tower.levels, chosen));
  }
  return presentation_from_tower(tower);
}

}  // namespace globular::testing

#endif
