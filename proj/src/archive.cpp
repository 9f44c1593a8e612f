#include "mop3/archive.hpp"

#include <algorithm>
#include <cmath>

namespace mop3 {

bool ElitistArchive::same_cell(const ObjectiveVector& a, const ObjectiveVector& b) const {
  if (epsilon_.empty()) return a == b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double eps = i < epsilon_.size() ? epsilon_[i] : epsilon_.back();
    if (eps <= 0.0) {
      if (a[i] != b[i]) return false;
    } else if (std::floor(a[i] / eps) != std::floor(b[i] / eps)) {
      return false;
    }
  }
  return true;
}

bool ElitistArchive::try_add(const Genotype& g, const ObjectiveVector& o) {
  for (const auto& m : members_) {
    if (dominates(m.objectives, o)) return false;
    if (same_cell(m.objectives, o) && !dominates(o, m.objectives)) return false;
  }
  std::erase_if(members_, [&](const Solution& m) { return dominates(o, m.objectives); });
  members_.push_back(Solution{g, o});
  return true;
}

std::vector<ObjectiveVector> ElitistArchive::objective_vectors() const {
  std::vector<ObjectiveVector> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m.objectives);
  return out;
}

std::vector<Solution> ElitistArchive::sorted() const {
  std::vector<Solution> out = members_;
  std::sort(out.begin(), out.end(), [](const Solution& a, const Solution& b) {
    if (a.objectives != b.objectives) return a.objectives < b.objectives;
    return a.genotype < b.genotype;
  });
  return out;
}

}  // namespace mop3
