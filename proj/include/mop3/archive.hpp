#pragma once

#include <cstddef>
#include <vector>

#include "mop3/core.hpp"

namespace mop3 {

struct Solution {
  Genotype genotype;
  ObjectiveVector objectives;
};

/// Store of mutually non-dominated solutions.
///
/// With a positive grid resolution, objective space is split into cells of that size per
/// objective and at most one member is kept per cell; a newcomer replaces a cell's occupant only
/// by dominating it. Resolution 0 (the default) keeps every distinct non-dominated vector.
class ElitistArchive {
 public:
  ElitistArchive() = default;
  explicit ElitistArchive(std::vector<double> epsilon) : epsilon_(std::move(epsilon)) {}

  /// Returns whether the solution was inserted. Evicts every member it dominates.
  bool try_add(const Genotype& g, const ObjectiveVector& o);

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<Solution>& members() const noexcept { return members_; }
  std::vector<ObjectiveVector> objective_vectors() const;

  /// Members ordered by objective vector (then genotype), independent of insertion history.
  std::vector<Solution> sorted() const;

 private:
  bool same_cell(const ObjectiveVector& a, const ObjectiveVector& b) const;

  std::vector<double> epsilon_;
  std::vector<Solution> members_;
};

}  // namespace mop3
