#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mop3 {

/// Fixed-length binary decision vector.
class Genotype {
 public:
  Genotype() = default;
  explicit Genotype(std::size_t length) : bits_(length, 0) {}
  explicit Genotype(std::vector<std::uint8_t> bits);

  /// Parses a string of '0'/'1' characters; spaces are ignored.
  static Genotype from_string(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }
  void set(std::size_t i, bool value) noexcept { bits_[i] = value ? 1 : 0; }
  void flip(std::size_t i) noexcept { bits_[i] ^= 1; }

  std::size_t count_ones() const noexcept;
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::string to_string() const;

  /// Bits packed into 64-bit words, used as a compact cache key.
  std::vector<std::uint64_t> packed() const;

  friend bool operator==(const Genotype&, const Genotype&) = default;
  friend auto operator<=>(const Genotype&, const Genotype&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

struct GenotypeHash {
  std::size_t operator()(const Genotype& g) const;
};

/// Objective values in minimization convention.
class ObjectiveVector {
 public:
  ObjectiveVector() = default;
  explicit ObjectiveVector(std::vector<double> values) : values_(std::move(values)) {}
  ObjectiveVector(std::initializer_list<double> values) : values_(values) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
  friend auto operator<=>(const ObjectiveVector&, const ObjectiveVector&) = default;

 private:
  std::vector<double> values_;
};

/// True iff `a` is no worse than `b` everywhere and the vectors differ.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Non-negative weights summing to one.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);

  /// Two-objective weight (first, 1 - first).
  static WeightVector from_first(double first);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const noexcept { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

/// Running per-objective bounds used to map objectives onto [0, 1].
class ObjectiveNormalizer {
 public:
  void observe(const ObjectiveVector& o);
  bool has_observations() const noexcept { return !min_.empty(); }
  std::size_t size() const noexcept { return min_.size(); }
  double min(std::size_t i) const { return min_.at(i); }
  double max(std::size_t i) const { return max_.at(i); }

  /// Maps value onto [0, 1] using the observed range; a degenerate range maps to 0.
  double normalize(std::size_t objective, double value) const;

 private:
  std::vector<double> min_;
  std::vector<double> max_;
};

/// Weighted sum of normalized objectives, to be minimized.
double scalarize(const ObjectiveVector& o, const WeightVector& w, const ObjectiveNormalizer& n);

/// Bi-objective (or m-objective) pseudo-Boolean problem. Implementations return objectives in
/// minimization convention and must be pure.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual std::size_t genotype_length() const = 0;
  virtual std::size_t objective_count() const { return 2; }
  virtual ObjectiveVector evaluate(const Genotype& g) const = 0;

  /// Analytic Pareto-optimal front, when one is known.
  virtual std::optional<std::vector<ObjectiveVector>> analytic_front() const { return std::nullopt; }
};

class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted() : std::runtime_error("fitness evaluation budget exhausted") {}
};

struct GatewayOptions {
  /// Maximum number of cached genotypes; 0 means unbounded. Once full, new results are not cached.
  std::size_t cache_capacity = 0;
};

/// Budgeted, memoizing access to a problem. Counts one FFE per cache miss.
class EvaluationGateway {
 public:
  using Observer = std::function<void(const Genotype&, const ObjectiveVector&)>;

  EvaluationGateway(const Problem& problem, std::uint64_t budget, GatewayOptions options = {});

  /// Throws BudgetExhausted when a cache miss would exceed the budget.
  const ObjectiveVector& evaluate(const Genotype& g);

  std::uint64_t ffe() const noexcept { return ffe_; }
  std::uint64_t budget() const noexcept { return budget_; }

  /// Budget spent, or every genotype of a small search space already evaluated.
  bool exhausted() const noexcept;

  const Problem& problem() const noexcept { return problem_; }
  const ObjectiveNormalizer& normalizer() const noexcept { return normalizer_; }

  /// Called once for every freshly computed objective vector.
  void set_observer(Observer observer) { observer_ = std::move(observer); }

 private:
  const Problem& problem_;
  std::uint64_t budget_;
  GatewayOptions options_;
  std::uint64_t ffe_ = 0;
  std::optional<std::uint64_t> space_size_;
  ObjectiveNormalizer normalizer_;
  std::unordered_map<Genotype, ObjectiveVector, GenotypeHash> cache_;
  ObjectiveVector scratch_;
  Observer observer_;
};

/// Indexes of two-objective points ordered by first objective, then second, then index.
std::vector<std::size_t> lexicographic_order_2d(std::span<const ObjectiveVector> points);

/// Indexes of the mutually non-dominated members of `points`; duplicates keep their first occurrence.
std::vector<std::size_t> non_dominated_indexes(std::span<const ObjectiveVector> points);

}  // namespace mop3
