#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mop3/archive.hpp"
#include "mop3/core.hpp"
#include "mop3/pyramid.hpp"
#include "mop3/rng.hpp"

namespace mop3 {

/// Minimized cost of a genotype. Inside MO-P3 this is the scalarized objective vector.
using CostFunction = std::function<double(const Genotype&)>;

CostFunction scalarized_cost(EvaluationGateway& gateway, const WeightVector& w);

/// First-improvement hill climber: passes over all genes in a fresh random order, keeping a flip
/// only when it strictly lowers the cost, until a full pass changes nothing.
Genotype fihc(Genotype g, const CostFunction& cost, Rng& rng);
Genotype fihc(Genotype g, const WeightVector& w, EvaluationGateway& gateway, Rng& rng);

enum class MixOutcome { unchanged, kept, reverted };

/// Optional instrumentation of a mixing pass.
struct MixHooks {
  std::vector<MixOutcome>* trace = nullptr;
  /// Called after each step that changed the candidate, with the genotype before and after it.
  std::function<void(const Genotype& before, const Genotype& after)> on_step;
};

struct MixStep {
  std::span<const std::size_t> genes;
  const Genotype* donor = nullptr;
};

/// Copies each step's donor genes into the source in turn. A change is reverted iff it strictly
/// raises the cost; equal cost keeps it. Steps that would not change the source are skipped
/// without calling `cost`. The candidate is costed before the current genotype.
Genotype mix_with_donors(Genotype source, std::span<const MixStep> steps, const CostFunction& cost,
                         const MixHooks& hooks = {});

enum class ClusterOrder { random, creation };

/// Optimal mixing of `source` against a level: every non-root cluster of the level's linkage tree
/// with a donor drawn uniformly from the level for each cluster.
Genotype optimal_mix(Genotype source, PyramidLevel& level, const CostFunction& cost, Rng& rng,
                     ClusterOrder order = ClusterOrder::random, const MixHooks& hooks = {});

enum class WeightStrategy { random, smart };

struct MoP3Options {
  WeightStrategy strategy = WeightStrategy::random;
  ClusterOrder cluster_order = ClusterOrder::random;
  /// Archive grid resolution per objective; empty keeps every non-dominated vector.
  std::vector<double> epsilon;
  /// Stop after this many consecutive iterations without a new evaluation (0 disables).
  std::size_t stall_limit = 5000;
  GatewayOptions gateway;
  /// Optional early stop, checked after every iteration.
  std::function<bool(const ElitistArchive&)> stop_when;
};

struct RunResult {
  std::vector<Solution> front;  // sorted by objective vector
  std::uint64_t ffe_used = 0;
  /// FFE count when the reported front last changed.
  std::uint64_t ffe_final = 0;
  std::uint64_t iterations = 0;
};

/// Multi-objective Parameter-less Population Pyramid. Each iteration picks a weight vector,
/// hill-climbs a random genotype under it and lets the result climb the pyramid through optimal
/// mixing. Every evaluated objective vector is offered to the elitist archive.
class MoP3 {
 public:
  MoP3(const Problem& problem, std::uint64_t budget, std::uint64_t seed, MoP3Options options = {});

  MoP3(const MoP3&) = delete;
  MoP3& operator=(const MoP3&) = delete;

  /// One pass of the main loop. Returns false once the budget ran out during or before it.
  bool iterate();

  /// Iterates until the budget is exhausted, the search stalls or the stop predicate fires.
  RunResult run();

  const Pyramid& pyramid() const noexcept { return pyramid_; }
  const ElitistArchive& archive() const noexcept { return archive_; }
  const EvaluationGateway& gateway() const noexcept { return gateway_; }
  std::uint64_t ffe_at_last_archive_change() const noexcept { return last_archive_change_; }
  std::uint64_t iterations() const noexcept { return iterations_; }

  /// Weight vectors used so far, one per iteration.
  const std::vector<WeightVector>& weight_history() const noexcept { return weights_; }

  /// Invoked after every cluster application inside optimal mixing, with the iteration's weight.
  std::function<void(const Genotype& before, const Genotype& after, const WeightVector& w)>
      on_mix_step;

 private:
  void run_iteration();
  WeightVector next_weight();

  const Problem& problem_;
  MoP3Options options_;
  Rng rng_;
  EvaluationGateway gateway_;
  Pyramid pyramid_;
  ElitistArchive archive_;
  std::uint64_t last_archive_change_ = 0;
  std::uint64_t iterations_ = 0;
  std::vector<WeightVector> weights_;
};

RunResult run_mo_p3(const Problem& problem, std::uint64_t budget, WeightStrategy strategy,
                    std::uint64_t seed, MoP3Options options = {});

}  // namespace mop3
