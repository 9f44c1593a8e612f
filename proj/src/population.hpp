#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "mop3/archive.hpp"
#include "mop3/core.hpp"
#include "mop3/rng.hpp"

namespace mop3::detail {

/// Flips each gene independently with probability p, drawing the gaps between flips geometrically.
inline void mutate(Genotype& g, double p, Rng& rng) {
  if (p <= 0.0) return;
  if (p >= 1.0) {
    for (std::size_t i = 0; i < g.size(); ++i) g.flip(i);
    return;
  }
  const double log_keep = std::log1p(-p);
  std::size_t i = 0;
  while (true) {
    const double gap = std::floor(std::log1p(-rng.uniform01()) / log_keep);
    if (gap >= static_cast<double>(g.size() - i)) return;
    i += static_cast<std::size_t>(gap);
    g.flip(i);
    ++i;
  }
}

/// Swaps every gene between the two parents with probability one half.
inline void uniform_crossover(Genotype& a, Genotype& b, Rng& rng) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i % 64 == 0) mask = rng.next();
    if ((mask >> (i % 64)) & 1) {
      const std::uint8_t tmp = a[i];
      a.set(i, b[i]);
      b.set(i, tmp);
    }
  }
}

/// Sorted distinct objective vectors of the non-dominated members.
inline std::vector<ObjectiveVector> front_signature(std::span<const Solution> population) {
  std::vector<ObjectiveVector> points;
  for (const auto& s : population) points.push_back(s.objectives);
  std::vector<ObjectiveVector> front;
  for (std::size_t i : non_dominated_indexes(points)) front.push_back(points[i]);
  std::sort(front.begin(), front.end());
  front.erase(std::unique(front.begin(), front.end()), front.end());
  return front;
}

/// One non-dominated member per distinct objective vector, sorted by objectives.
inline std::vector<Solution> unique_front(std::span<const Solution> population) {
  std::vector<Solution> sorted(population.begin(), population.end());
  std::sort(sorted.begin(), sorted.end(), [](const Solution& a, const Solution& b) {
    return a.objectives != b.objectives ? a.objectives < b.objectives : a.genotype < b.genotype;
  });
  std::vector<Solution> front;
  for (const auto& s : sorted) {
    if (!front.empty() && front.back().objectives == s.objectives) continue;
    bool dominated = false;
    for (const auto& other : sorted) {
      if (dominates(other.objectives, s.objectives)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) front.push_back(s);
  }
  return front;
}

}  // namespace mop3::detail
