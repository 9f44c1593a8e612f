#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "mop3/core.hpp"

namespace mop3 {

/// Mutually non-dominated objective vectors, duplicates collapsed, kept in ascending order.
class Front {
 public:
  Front() = default;
  /// Drops dominated and repeated points.
  explicit Front(std::span<const ObjectiveVector> points);
  Front(std::initializer_list<ObjectiveVector> points);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<ObjectiveVector>& points() const noexcept { return points_; }
  bool contains(const ObjectiveVector& o) const;

  friend bool operator==(const Front&, const Front&) = default;

 private:
  std::vector<ObjectiveVector> points_;
};

struct DistanceOptions {
  /// Scale every objective by the reference front's range before measuring.
  bool normalize = false;
};

/// Mean distance from each reference point to its nearest point of `s`.
double igd(const Front& s, const Front& reference, DistanceOptions options = {});
/// Mean distance from each point of `s` to its nearest reference point.
double gd(const Front& s, const Front& reference, DistanceOptions options = {});

/// Non-dominated points of the union of all fronts.
Front merge_pseudo_optimal(std::span<const Front> fronts);

/// One objective vector per line, values separated by spaces, printed with round-trip precision.
void write_front(std::ostream& out, const Front& front);
void write_front(const std::filesystem::path& path, const Front& front);

/// Reads a front file. Unless `raw` is set, a line dominated by another line is an error;
/// repeated lines are merged either way.
Front read_front(std::istream& in, bool raw = false);
Front read_front(const std::filesystem::path& path, bool raw = false);

}  // namespace mop3
