#include "mop3/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>

namespace mop3 {

Genotype::Genotype(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("genotype bits must be 0 or 1");
  }
}

Genotype Genotype::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (c != ' ') {
      throw std::invalid_argument("genotype string may contain only '0', '1' and spaces");
    }
  }
  return Genotype(std::move(bits));
}

std::size_t Genotype::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string Genotype::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

std::vector<std::uint64_t> Genotype::packed() const {
  std::vector<std::uint64_t> words((bits_.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    words[i / 64] |= static_cast<std::uint64_t>(bits_[i]) << (i % 64);
  }
  return words;
}

std::size_t GenotypeHash::operator()(const Genotype& g) const {
  // Mixes eight genes (one byte each) per step.
  const auto bits = g.bits();
  std::uint64_t h = 1469598103934665603ULL ^ bits.size();
  std::size_t i = 0;
  for (; i + 8 <= bits.size(); i += 8) {
    std::uint64_t word;
    std::memcpy(&word, bits.data() + i, sizeof word);
    h = (h ^ word) * 0x9E3779B97F4A7C15ULL;
    h ^= h >> 32;
  }
  std::uint64_t tail = 0;
  for (; i < bits.size(); ++i) tail = (tail << 1) | bits[i];
  h = (h ^ tail) * 0x9E3779B97F4A7C15ULL;
  return static_cast<std::size_t>(h ^ (h >> 29));
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("objective vectors differ in length");
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly_better = true;
  }
  return strictly_better;
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("weight vector is empty");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("weights must lie in [0, 1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("weights must sum to 1");
}

WeightVector WeightVector::from_first(double first) {
  return WeightVector({first, 1.0 - first});
}

void ObjectiveNormalizer::observe(const ObjectiveVector& o) {
  if (min_.empty()) {
    min_.assign(o.values().begin(), o.values().end());
    max_ = min_;
    return;
  }
  if (o.size() != min_.size()) throw std::invalid_argument("objective count changed");
  for (std::size_t i = 0; i < o.size(); ++i) {
    min_[i] = std::min(min_[i], o[i]);
    max_[i] = std::max(max_[i], o[i]);
  }
}

double ObjectiveNormalizer::normalize(std::size_t objective, double value) const {
  const double lo = min_.at(objective);
  const double hi = max_.at(objective);
  if (hi <= lo) return 0.0;
  return (value - lo) / (hi - lo);
}

double scalarize(const ObjectiveVector& o, const WeightVector& w, const ObjectiveNormalizer& n) {
  if (!n.has_observations()) throw std::invalid_argument("normalizer has no observations");
  if (o.size() != w.size() || o.size() != n.size()) {
    throw std::invalid_argument("objective, weight and normalizer sizes differ");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < o.size(); ++i) total += w[i] * n.normalize(i, o[i]);
  return total;
}

EvaluationGateway::EvaluationGateway(const Problem& problem, std::uint64_t budget,
                                     GatewayOptions options)
    : problem_(problem), budget_(budget), options_(options) {
  if (budget == 0) throw std::invalid_argument("evaluation budget must be positive");
  const std::size_t length = problem.genotype_length();
  if (length < 63 && options_.cache_capacity == 0) space_size_ = std::uint64_t{1} << length;
}

bool EvaluationGateway::exhausted() const noexcept {
  return ffe_ >= budget_ || (space_size_ && ffe_ >= *space_size_);
}

const ObjectiveVector& EvaluationGateway::evaluate(const Genotype& g) {
  if (g.size() != problem_.genotype_length()) {
    throw std::invalid_argument("genotype length does not match the problem");
  }
  if (auto it = cache_.find(g); it != cache_.end()) return it->second;
  if (ffe_ >= budget_) throw BudgetExhausted();

  ObjectiveVector o = problem_.evaluate(g);
  ++ffe_;
  normalizer_.observe(o);
  const ObjectiveVector* stored = nullptr;
  if (options_.cache_capacity == 0 || cache_.size() < options_.cache_capacity) {
    stored = &cache_.emplace(g, std::move(o)).first->second;
  } else {
    scratch_ = std::move(o);
    stored = &scratch_;
  }
  if (observer_) observer_(g, *stored);
  return *stored;
}

std::vector<std::size_t> lexicographic_order_2d(std::span<const ObjectiveVector> points) {
  struct Key {
    double first;
    double second;
    std::size_t index;
  };
  std::vector<Key> keys;
  keys.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) keys.push_back(Key{points[i][0], points[i][1], i});
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.first != b.first) return a.first < b.first;
    if (a.second != b.second) return a.second < b.second;
    return a.index < b.index;
  });
  std::vector<std::size_t> order;
  order.reserve(keys.size());
  for (const Key& k : keys) order.push_back(k.index);
  return order;
}

std::vector<std::size_t> non_dominated_indexes(std::span<const ObjectiveVector> points) {
  std::vector<std::size_t> kept;
  const bool two_objectives =
      std::all_of(points.begin(), points.end(), [](const ObjectiveVector& o) { return o.size() == 2; });
  if (two_objectives) {
    for (std::size_t i : lexicographic_order_2d(points)) {
      if (kept.empty() || points[i][1] < points[kept.back()][1]) kept.push_back(i);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < points.size() && keep; ++j) {
      if (i == j) continue;
      if (dominates(points[j], points[i]) || (j < i && points[j] == points[i])) keep = false;
    }
    if (keep) kept.push_back(i);
  }
  return kept;
}

}  // namespace mop3
