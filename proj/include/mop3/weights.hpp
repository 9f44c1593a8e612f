#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mop3/archive.hpp"
#include "mop3/core.hpp"
#include "mop3/rng.hpp"

namespace mop3 {

/// First weight uniform on [0, 1], second = 1 - first.
WeightVector random_weight_vector(Rng& rng);

/// Archive member mapped onto the weight simplex: its normalized objective pair scaled to sum 1.
struct WeightPoint {
  double first = 0.5;
  double second = 0.5;
};

/// Weight points of the archive members, sorted by first component. Normalization uses the
/// archive's own per-objective bounds; a point whose normalized objectives sum to 0 maps to
/// (0.5, 0.5).
std::vector<WeightPoint> archive_weight_points(const ElitistArchive& archive);

struct SmartChoice {
  std::size_t interval = 0;  // chosen interval [points[i], points[i + 1]]
  double first_weight = 0.5;
};

/// Size-2 tournament over adjacent intervals of sorted weight points: two intervals are drawn
/// uniformly, the longer one (Euclidean length between its endpoints) wins with ties going to the
/// first draw, and the first weight is sampled uniformly between the winner's endpoint first
/// components. Requires at least two points.
SmartChoice choose_smart_interval(std::span<const WeightPoint> points, Rng& rng);

/// Weight biased towards poorly represented parts of the archive's front. Falls back to
/// random_weight_vector while the archive holds fewer than two members.
WeightVector smart_weight_vector(const ElitistArchive& archive, Rng& rng);

}  // namespace mop3
