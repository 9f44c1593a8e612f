#include "mop3/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mop3 {

WeightVector random_weight_vector(Rng& rng) {
  return WeightVector::from_first(rng.uniform01());
}

std::vector<WeightPoint> archive_weight_points(const ElitistArchive& archive) {
  ObjectiveNormalizer bounds;
  for (const auto& m : archive.members()) bounds.observe(m.objectives);

  std::vector<WeightPoint> points;
  points.reserve(archive.size());
  for (const auto& m : archive.members()) {
    if (m.objectives.size() != 2) throw std::invalid_argument("smart weights need two objectives");
    const double a = bounds.normalize(0, m.objectives[0]);
    const double b = bounds.normalize(1, m.objectives[1]);
    const double sum = a + b;
    points.push_back(sum > 0.0 ? WeightPoint{a / sum, b / sum} : WeightPoint{});
  }
  std::stable_sort(points.begin(), points.end(), [](const WeightPoint& x, const WeightPoint& y) {
    return x.first < y.first;
  });
  return points;
}

SmartChoice choose_smart_interval(std::span<const WeightPoint> points, Rng& rng) {
  if (points.size() < 2) throw std::invalid_argument("need at least two weight points");
  const std::size_t intervals = points.size() - 1;
  const auto length = [&](std::size_t i) {
    return std::hypot(points[i + 1].first - points[i].first, points[i + 1].second - points[i].second);
  };
  const std::size_t first = rng.below(intervals);
  const std::size_t second = rng.below(intervals);
  const std::size_t chosen = length(first) >= length(second) ? first : second;

  const double lo = points[chosen].first;
  const double hi = points[chosen + 1].first;
  return SmartChoice{chosen, std::clamp(rng.uniform(lo, hi), 0.0, 1.0)};
}

WeightVector smart_weight_vector(const ElitistArchive& archive, Rng& rng) {
  if (archive.size() < 2) return random_weight_vector(rng);
  const auto points = archive_weight_points(archive);
  return WeightVector::from_first(choose_smart_interval(points, rng).first_weight);
}

}  // namespace mop3
