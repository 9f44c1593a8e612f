#pragma once

#include <cstddef>
#include <optional>
#include <unordered_set>
#include <vector>

#include "mop3/core.hpp"
#include "mop3/linkage.hpp"

namespace mop3 {

/// Duplicate-free subpopulation with its own linkage model. The tree is rebuilt lazily, on first
/// use after the membership changed.
class PyramidLevel {
 public:
  explicit PyramidLevel(std::size_t genes) : stats_(genes) {}

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<Genotype>& members() const noexcept { return members_; }
  const Genotype& member(std::size_t i) const { return members_.at(i); }

  void add(const Genotype& g);

  bool tree_is_stale() const noexcept { return !tree_.has_value(); }
  const LinkageTree& tree();

 private:
  std::vector<Genotype> members_;
  PairStatistics stats_;
  std::optional<LinkageTree> tree_;
};

/// Ordered levels, bottom (0) to top. Every genotype appears at most once in the whole pyramid.
class Pyramid {
 public:
  /// Starts with a single empty level.
  explicit Pyramid(std::size_t genes) : genes_(genes) { levels_.emplace_back(genes_); }

  std::size_t level_count() const noexcept { return levels_.size(); }
  std::size_t genes() const noexcept { return genes_; }
  PyramidLevel& level(std::size_t i) { return levels_.at(i); }
  const PyramidLevel& level(std::size_t i) const { return levels_.at(i); }

  bool contains(const Genotype& g) const { return index_.contains(g); }
  std::size_t total_members() const noexcept { return index_.size(); }

  /// Inserts g on the given level; level_index == level_count() opens a new top level.
  /// Inserting a genotype already present anywhere in the pyramid throws std::logic_error.
  void insert(std::size_t level_index, const Genotype& g);

 private:
  std::size_t genes_;
  std::vector<PyramidLevel> levels_;
  std::unordered_set<Genotype, GenotypeHash> index_;
};

}  // namespace mop3
