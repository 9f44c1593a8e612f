#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mop3/archive.hpp"
#include "mop3/core.hpp"
#include "mop3/mo_p3.hpp"

namespace mop3 {

struct Nsga2Config {
  std::size_t population_size = 400;
  double crossover_probability = 0.9;
  /// Per-bit flip probability; 0 selects 1/l.
  double mutation_probability = 0.0;
  std::size_t tournament_size = 2;
  /// Stop after this many consecutive generations without a new evaluation (0 disables).
  std::size_t stall_limit = 1000;
  GatewayOptions gateway;

  void validate() const;
};

struct MoeadConfig {
  std::size_t subproblems = 400;
  std::size_t neighborhood = 20;
  /// Per-bit flip probability; 0 selects 1/l.
  double mutation_probability = 0.0;
  /// Fixed reference point; when unset, z* tracks the best value seen per objective.
  std::optional<ObjectiveVector> ideal_point;
  std::size_t stall_limit = 1000;
  GatewayOptions gateway;
  /// Called after initialization and after every generation with the current subproblem solutions.
  std::function<void(std::span<const Solution>)> on_generation;

  void validate() const;
};

/// Fronts of a population, best first; each front lists member indexes in ascending order.
std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const ObjectiveVector> points);

/// Crowding distance of every member of `front`, in the same order. Boundary members get infinity.
std::vector<double> crowding_distances(std::span<const ObjectiveVector> points,
                                       std::span<const std::size_t> front);

RunResult run_nsga2(const Problem& problem, const Nsga2Config& config, std::uint64_t budget,
                    std::uint64_t seed);

/// Evenly spaced bi-objective weights (j/(N-1), 1 - j/(N-1)).
std::vector<WeightVector> moead_weights(std::size_t count);

/// Tchebycheff aggregate max_i w_i |o_i - z_i|.
double tchebycheff(const ObjectiveVector& o, const WeightVector& w, const ObjectiveVector& ideal);

RunResult run_moead(const Problem& problem, const MoeadConfig& config, std::uint64_t budget,
                    std::uint64_t seed);

}  // namespace mop3
