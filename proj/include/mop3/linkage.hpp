#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mop3/core.hpp"

namespace mop3 {

/// Dependency Structure Matrix: pairwise mutual information between genes (natural log).
/// The diagonal is unused and stored as zero.
class Dsm {
 public:
  explicit Dsm(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) noexcept {
    values_[i * n_ + j] = v;
    values_[j * n_ + i] = v;
  }

 private:
  std::size_t n_;
  std::vector<double> values_;
};

/// Gene-value frequency counts over a population, maintained incrementally as members are added.
/// All mutual-information quantities are derived from the same counts.
class PairStatistics {
 public:
  explicit PairStatistics(std::size_t genes);

  void add(const Genotype& g);

  std::size_t genes() const noexcept { return genes_; }
  std::size_t population_size() const noexcept { return population_; }

  /// I(G_i, G_j); terms with a zero joint or marginal probability contribute 0.
  double mutual_information(std::size_t i, std::size_t j) const;
  /// H(G_i, G_j).
  double joint_entropy(std::size_t i, std::size_t j) const;
  /// (H - I) / H, or 0 when H = 0.
  double distance(std::size_t i, std::size_t j) const;

 private:
  struct Joint {
    double p[2][2];
    double marginal_i[2];
    double marginal_j[2];
  };
  Joint joint(std::size_t i, std::size_t j) const;

  std::size_t genes_;
  std::size_t population_ = 0;
  std::vector<std::uint32_t> ones_;
  std::vector<std::uint32_t> both_ones_;  // upper triangle used, row-major n x n
  std::vector<std::size_t> scratch_;
};

Dsm build_dsm(std::span<const Genotype> population);

double pairwise_distance(std::span<const Genotype> population, std::size_t i, std::size_t j);

/// Node of a linkage tree. Leaves have no children; indexes refer to creation order.
struct Cluster {
  std::vector<std::size_t> genes;  // sorted ascending
  std::ptrdiff_t left = -1;
  std::ptrdiff_t right = -1;
  double merge_distance = 0.0;

  bool is_leaf() const noexcept { return left < 0; }
};

/// Hierarchy of gene clusters: n singleton leaves, then n-1 merges in the order they happened.
/// The last cluster is the root.
class LinkageTree {
 public:
  LinkageTree() = default;
  explicit LinkageTree(std::vector<Cluster> clusters) : clusters_(std::move(clusters)) {}

  std::span<const Cluster> clusters() const noexcept { return clusters_; }
  const Cluster& operator[](std::size_t i) const { return clusters_.at(i); }
  std::size_t size() const noexcept { return clusters_.size(); }
  std::size_t gene_count() const noexcept { return (clusters_.size() + 1) / 2; }
  std::size_t root() const noexcept { return clusters_.size() - 1; }

  /// Indented text dump, one cluster per line with its member indexes.
  std::string dump() const;

 private:
  std::vector<Cluster> clusters_;
};

/// Agglomerative clustering on a symmetric n x n distance matrix (row-major) with the size-weighted
/// reduction formula. Ties on the minimal distance resolve to the lexicographically smallest pair
/// of cluster creation indexes.
LinkageTree cluster_genes(std::size_t n, std::vector<double> distances);

LinkageTree build_linkage_tree(const PairStatistics& stats);
LinkageTree build_linkage_tree(std::span<const Genotype> population);

}  // namespace mop3
