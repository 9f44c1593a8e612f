#include "mop3/pyramid.hpp"

#include <stdexcept>

namespace mop3 {

void PyramidLevel::add(const Genotype& g) {
  stats_.add(g);
  members_.push_back(g);
  tree_.reset();
}

const LinkageTree& PyramidLevel::tree() {
  if (members_.empty()) throw std::logic_error("linkage tree requested for an empty level");
  if (!tree_) tree_ = build_linkage_tree(stats_);
  return *tree_;
}

void Pyramid::insert(std::size_t level_index, const Genotype& g) {
  if (g.size() != genes_) throw std::invalid_argument("genotype length differs from pyramid");
  if (level_index > levels_.size()) throw std::out_of_range("level index beyond the new top level");
  if (contains(g)) throw std::logic_error("genotype is already in the pyramid");
  if (level_index == levels_.size()) levels_.emplace_back(genes_);
  levels_[level_index].add(g);
  index_.insert(g);
}

}  // namespace mop3
