#include "mop3/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace mop3 {

PairStatistics::PairStatistics(std::size_t genes)
    : genes_(genes), ones_(genes, 0), both_ones_(genes * genes, 0) {}

void PairStatistics::add(const Genotype& g) {
  if (g.size() != genes_) throw std::invalid_argument("genotype length differs from statistics");
  ++population_;
  scratch_.clear();
  for (std::size_t i = 0; i < genes_; ++i) {
    if (g[i]) scratch_.push_back(i);
  }
  for (std::size_t a = 0; a < scratch_.size(); ++a) {
    const std::size_t i = scratch_[a];
    ++ones_[i];
    std::uint32_t* row = &both_ones_[i * genes_];
    for (std::size_t b = a + 1; b < scratch_.size(); ++b) ++row[scratch_[b]];
  }
}

PairStatistics::Joint PairStatistics::joint(std::size_t i, std::size_t j) const {
  if (population_ == 0) throw std::logic_error("statistics over an empty population");
  if (i > j) std::swap(i, j);
  const double total = static_cast<double>(population_);
  const double n11 = both_ones_[i * genes_ + j];
  const double n1i = ones_[i];
  const double n1j = ones_[j];
  Joint r{};
  r.p[1][1] = n11 / total;
  r.p[1][0] = (n1i - n11) / total;
  r.p[0][1] = (n1j - n11) / total;
  r.p[0][0] = (total - n1i - n1j + n11) / total;
  r.marginal_i[1] = n1i / total;
  r.marginal_i[0] = 1.0 - r.marginal_i[1];
  r.marginal_j[1] = n1j / total;
  r.marginal_j[0] = 1.0 - r.marginal_j[1];
  return r;
}

double PairStatistics::mutual_information(std::size_t i, std::size_t j) const {
  const Joint p = joint(i, j);
  double mi = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double pab = p.p[a][b];
      const double denom = p.marginal_i[a] * p.marginal_j[b];
      if (pab > 0.0 && denom > 0.0) mi += pab * std::log(pab / denom);
    }
  }
  return std::max(mi, 0.0);
}

double PairStatistics::joint_entropy(std::size_t i, std::size_t j) const {
  const Joint p = joint(i, j);
  double h = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (p.p[a][b] > 0.0) h -= p.p[a][b] * std::log(p.p[a][b]);
    }
  }
  return h;
}

double PairStatistics::distance(std::size_t i, std::size_t j) const {
  const double h = joint_entropy(i, j);
  if (h <= 0.0) return 0.0;
  const double d = (h - mutual_information(i, j)) / h;
  return std::clamp(d, 0.0, 1.0);
}

namespace {

PairStatistics statistics_of(std::span<const Genotype> population) {
  if (population.empty()) throw std::invalid_argument("population is empty");
  PairStatistics stats(population.front().size());
  for (const auto& g : population) stats.add(g);
  return stats;
}

}  // namespace

Dsm build_dsm(std::span<const Genotype> population) {
  const PairStatistics stats = statistics_of(population);
  Dsm dsm(stats.genes());
  for (std::size_t i = 0; i < stats.genes(); ++i) {
    for (std::size_t j = i + 1; j < stats.genes(); ++j) dsm.set(i, j, stats.mutual_information(i, j));
  }
  return dsm;
}

double pairwise_distance(std::span<const Genotype> population, std::size_t i, std::size_t j) {
  const PairStatistics stats = statistics_of(population);
  if (i >= stats.genes() || j >= stats.genes()) throw std::out_of_range("gene index out of range");
  return stats.distance(i, j);
}

LinkageTree cluster_genes(std::size_t n, std::vector<double> distances) {
  if (n < 2) throw std::invalid_argument("a linkage tree needs at least two genes");
  if (distances.size() != n * n) throw std::invalid_argument("distance matrix must be n x n");

  std::vector<Cluster> clusters;
  clusters.reserve(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) clusters.push_back(Cluster{{i}, -1, -1, 0.0});

  // Slot s holds the active cluster with creation index slot_id[s].
  std::vector<std::size_t> slot_id(n);
  std::iota(slot_id.begin(), slot_id.end(), std::size_t{0});
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> live(n);
  std::iota(live.begin(), live.end(), std::size_t{0});

  // Merges compare by distance, then by the creation indexes of the pair.
  struct Key {
    double d = std::numeric_limits<double>::infinity();
    std::size_t lo = std::numeric_limits<std::size_t>::max();
    std::size_t hi = std::numeric_limits<std::size_t>::max();
    bool operator<(const Key& o) const {
      if (d != o.d) return d < o.d;
      if (lo != o.lo) return lo < o.lo;
      return hi < o.hi;
    }
    bool operator==(const Key&) const = default;
  };
  const auto key = [&](std::size_t a, std::size_t b) {
    return Key{distances[a * n + b], std::min(slot_id[a], slot_id[b]), std::max(slot_id[a], slot_id[b])};
  };

  // nearest[s] is the best pair (s, t) with t > s. Apart from the merged cluster, merging only
  // raises keys, so a stored entry is a lower bound and is refreshed lazily when it surfaces.
  std::vector<Key> nearest(n);
  std::vector<std::size_t> partner(n, n);
  using Entry = std::pair<Key, std::size_t>;
  const auto later = [](const Entry& x, const Entry& y) { return y.first < x.first; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> queue(later);
  const auto refresh = [&](std::size_t s) {
    nearest[s] = Key{};
    partner[s] = n;
    for (auto it = std::upper_bound(live.begin(), live.end(), s); it != live.end(); ++it) {
      const std::size_t t = *it;
      if (const Key k = key(s, t); k < nearest[s]) {
        nearest[s] = k;
        partner[s] = t;
      }
    }
    if (partner[s] < n) queue.emplace(nearest[s], s);
  };
  for (std::size_t s = 0; s + 1 < n; ++s) refresh(s);

  for (std::size_t remaining = n; remaining > 1; --remaining) {
    std::size_t a = n;
    while (true) {
      const auto [k, s] = queue.top();
      queue.pop();
      // Entries superseded by a later refresh are skipped.
      if (!alive[s] || partner[s] == n || !(k == nearest[s])) continue;
      const std::size_t t = partner[s];
      if (alive[t] && key(s, t) == nearest[s]) {
        a = s;
        break;
      }
      refresh(s);
    }
    const std::size_t b = partner[a];
    const Key best = nearest[a];

    const Cluster& left = clusters[best.lo];
    const Cluster& right = clusters[best.hi];
    Cluster merged;
    merged.genes.reserve(left.genes.size() + right.genes.size());
    std::merge(left.genes.begin(), left.genes.end(), right.genes.begin(), right.genes.end(),
               std::back_inserter(merged.genes));
    merged.left = static_cast<std::ptrdiff_t>(best.lo);
    merged.right = static_cast<std::ptrdiff_t>(best.hi);
    merged.merge_distance = best.d;

    const double size_a = static_cast<double>(clusters[slot_id[a]].genes.size());
    const double size_b = static_cast<double>(clusters[slot_id[b]].genes.size());
    const double wa = size_a / (size_a + size_b);
    const double wb = size_b / (size_a + size_b);
    alive[b] = false;
    live.erase(std::lower_bound(live.begin(), live.end(), b));
    for (std::size_t k : live) {
      if (k == a) continue;
      const double d = wa * distances[k * n + a] + wb * distances[k * n + b];
      distances[k * n + a] = d;
      distances[a * n + k] = d;
    }

    clusters.push_back(std::move(merged));
    slot_id[a] = clusters.size() - 1;
    refresh(a);
    // Rounding in the reduction can put the merged cluster marginally closer than either part.
    for (std::size_t s : live) {
      if (s >= a) break;
      if (const Key k = key(s, a); k < nearest[s]) {
        nearest[s] = k;
        partner[s] = a;
        queue.emplace(k, s);
      }
    }
  }
  return LinkageTree(std::move(clusters));
}

LinkageTree build_linkage_tree(const PairStatistics& stats) {
  const std::size_t n = stats.genes();
  if (n < 2) throw std::invalid_argument("a linkage tree needs at least two genes");
  std::vector<double> distances(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = stats.distance(i, j);
      distances[i * n + j] = d;
      distances[j * n + i] = d;
    }
  }
  return cluster_genes(n, std::move(distances));
}

LinkageTree build_linkage_tree(std::span<const Genotype> population) {
  return build_linkage_tree(statistics_of(population));
}

std::string LinkageTree::dump() const {
  std::ostringstream out;
  if (clusters_.empty()) return {};
  // Depth-first from the root, children indented by two spaces.
  std::vector<std::pair<std::size_t, std::size_t>> stack{{root(), 0}};
  while (!stack.empty()) {
    const auto [index, depth] = stack.back();
    stack.pop_back();
    const Cluster& c = clusters_[index];
    out << std::string(depth * 2, ' ') << '#' << index << " {";
    for (std::size_t k = 0; k < c.genes.size(); ++k) out << (k ? " " : "") << c.genes[k];
    out << '}';
    if (!c.is_leaf()) out << " d=" << c.merge_distance;
    out << '\n';
    if (!c.is_leaf()) {
      stack.emplace_back(static_cast<std::size_t>(c.right), depth + 1);
      stack.emplace_back(static_cast<std::size_t>(c.left), depth + 1);
    }
  }
  return out.str();
}

}  // namespace mop3
