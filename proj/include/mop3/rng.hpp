#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

#include "mop3/core.hpp"

namespace mop3 {

// Distributions are computed from the raw engine output, without <random> adaptors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi) (or the single point when lo == hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

  Genotype random_genotype(std::size_t length) {
    Genotype g(length);
    for (std::size_t i = 0; i < length; ++i) g.set(i, engine_() >> 63);
    return g;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mop3
