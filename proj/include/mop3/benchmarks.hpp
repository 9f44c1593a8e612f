#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mop3/core.hpp"

namespace mop3 {

// All benchmarks below are maximization problems; evaluate() returns the negated objectives.

class ZeromaxOnemax final : public Problem {
 public:
  explicit ZeromaxOnemax(std::size_t length);
  std::string name() const override { return "zeromax-onemax"; }
  std::size_t genotype_length() const override { return length_; }
  ObjectiveVector evaluate(const Genotype& g) const override;
  std::optional<std::vector<ObjectiveVector>> analytic_front() const override;

 private:
  std::size_t length_;
};

/// Order-k deceptive trap of unitation u: k - 1 - u below k, k at u = k.
int deceptive(int unitation, int k);
/// Inverse deceptive trap: u - 1 above 0, k at u = 0.
int deceptive_inverse(int unitation, int k);

/// Concatenated order-5 blocks; objective 1 sums trap values, objective 2 inverse-trap values.
class Trap5InvTrap5 final : public Problem {
 public:
  static constexpr int kBlock = 5;
  explicit Trap5InvTrap5(std::size_t length);
  std::string name() const override { return "trap5"; }
  std::size_t genotype_length() const override { return length_; }
  ObjectiveVector evaluate(const Genotype& g) const override;
  std::optional<std::vector<ObjectiveVector>> analytic_front() const override;

 private:
  std::size_t length_;
};

/// Leading ones / trailing zeros, both counted over the full genotype.
class Lotz final : public Problem {
 public:
  explicit Lotz(std::size_t length);
  std::string name() const override { return "lotz"; }
  std::size_t genotype_length() const override { return length_; }
  ObjectiveVector evaluate(const Genotype& g) const override;
  std::optional<std::vector<ObjectiveVector>> analytic_front() const override;

 private:
  std::size_t length_;
};

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double w1 = 0.0;
  double w2 = 0.0;
};

struct MaxcutInstance {
  std::size_t vertices = 0;
  std::vector<WeightedEdge> edges;

  /// Rejects self-loops, out-of-range endpoints and repeated edges.
  void validate() const;
};

struct MaxcutGeneratorParams {
  std::size_t vertices = 12;
  double density = 0.5;
  int min_weight = 1;
  int max_weight = 100;
};

MaxcutInstance generate_maxcut(const MaxcutGeneratorParams& params, std::uint64_t seed);
/// Header `l edge_count`, then `i j w1 w2` per edge, 0-based.
MaxcutInstance read_maxcut(std::istream& in);
void write_maxcut(std::ostream& out, const MaxcutInstance& instance);

class Maxcut final : public Problem {
 public:
  explicit Maxcut(MaxcutInstance instance);
  std::string name() const override { return "maxcut"; }
  std::size_t genotype_length() const override { return instance_.vertices; }
  ObjectiveVector evaluate(const Genotype& g) const override;
  const MaxcutInstance& instance() const noexcept { return instance_; }

 private:
  MaxcutInstance instance_;
};

struct KnapsackItem {
  std::vector<double> weights;  // per knapsack
  std::vector<double> profits;  // per knapsack
};

struct KnapsackInstance {
  std::vector<double> capacities;
  std::vector<KnapsackItem> items;

  std::size_t knapsacks() const noexcept { return capacities.size(); }
  void validate() const;
};

struct KnapsackGeneratorParams {
  std::size_t items = 10;
  int min_value = 10;
  int max_value = 100;
  /// Each capacity is this fraction of the knapsack's total item weight.
  double capacity_ratio = 0.5;
};

KnapsackInstance generate_knapsack(const KnapsackGeneratorParams& params, std::uint64_t seed);
/// Header `l m`, capacities line, then per item `w1 p1 w2 p2 ...`.
KnapsackInstance read_knapsack(std::istream& in);
void write_knapsack(std::ostream& out, const KnapsackInstance& instance);

/// Aggregate profit/weight ratio used to order removals during repair.
double knapsack_item_ratio(const KnapsackItem& item);

/// Deselects items, lowest ratio first (ties: lower index first), until every capacity holds.
Genotype repair_knapsack(const KnapsackInstance& instance, Genotype g);

/// Profits of the repaired selection. The genotype passed in is not modified.
class Knapsack final : public Problem {
 public:
  explicit Knapsack(KnapsackInstance instance);
  std::string name() const override { return "knapsack"; }
  std::size_t genotype_length() const override { return instance_.items.size(); }
  std::size_t objective_count() const override { return instance_.knapsacks(); }
  ObjectiveVector evaluate(const Genotype& g) const override;
  const KnapsackInstance& instance() const noexcept { return instance_; }

 private:
  KnapsackInstance instance_;
  std::vector<std::size_t> removal_order_;
};

/// Analytic front of a problem that provides one; throws std::invalid_argument otherwise.
std::vector<ObjectiveVector> optimal_front(const Problem& problem);

/// Non-dominated set over all 2^l genotypes, sorted. Refuses l > 25.
std::vector<ObjectiveVector> brute_force_front(const Problem& problem);

}  // namespace mop3
