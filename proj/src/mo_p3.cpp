#include "mop3/mo_p3.hpp"

#include <numeric>
#include <stdexcept>

#include "mop3/weights.hpp"

namespace mop3 {

CostFunction scalarized_cost(EvaluationGateway& gateway, const WeightVector& w) {
  return [&gateway, w](const Genotype& g) {
    const ObjectiveVector& o = gateway.evaluate(g);
    return scalarize(o, w, gateway.normalizer());
  };
}

Genotype fihc(Genotype g, const CostFunction& cost, Rng& rng) {
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  double current = cost(g);
  bool changed = true;
  while (changed) {
    changed = false;
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      g.flip(i);
      const double flipped = cost(g);
      g.flip(i);
      current = cost(g);
      if (flipped < current) {
        g.flip(i);
        changed = true;
      }
    }
  }
  return g;
}

Genotype fihc(Genotype g, const WeightVector& w, EvaluationGateway& gateway, Rng& rng) {
  return fihc(std::move(g), scalarized_cost(gateway, w), rng);
}

Genotype mix_with_donors(Genotype source, std::span<const MixStep> steps, const CostFunction& cost,
                         const MixHooks& hooks) {
  std::vector<std::uint8_t> saved;
  for (const MixStep& step : steps) {
    const Genotype& donor = *step.donor;
    bool differs = false;
    for (std::size_t gene : step.genes) {
      if (source[gene] != donor[gene]) {
        differs = true;
        break;
      }
    }
    if (!differs) {
      if (hooks.trace) hooks.trace->push_back(MixOutcome::unchanged);
      continue;
    }

    const Genotype before = hooks.on_step ? source : Genotype{};
    saved.clear();
    for (std::size_t gene : step.genes) {
      saved.push_back(source[gene]);
      source.set(gene, donor[gene]);
    }
    const double candidate = cost(source);
    for (std::size_t k = 0; k < step.genes.size(); ++k) source.set(step.genes[k], saved[k]);
    const double current = cost(source);

    const bool keep = candidate <= current;
    if (keep) {
      for (std::size_t gene : step.genes) source.set(gene, donor[gene]);
    }
    if (hooks.trace) hooks.trace->push_back(keep ? MixOutcome::kept : MixOutcome::reverted);
    if (hooks.on_step) hooks.on_step(before, source);
  }
  return source;
}

Genotype optimal_mix(Genotype source, PyramidLevel& level, const CostFunction& cost, Rng& rng,
                     ClusterOrder order, const MixHooks& hooks) {
  if (level.empty()) throw std::invalid_argument("optimal mixing needs a non-empty level");
  const LinkageTree& tree = level.tree();

  std::vector<std::size_t> clusters(tree.root());
  std::iota(clusters.begin(), clusters.end(), std::size_t{0});
  if (order == ClusterOrder::random) rng.shuffle(std::span<std::size_t>(clusters));

  std::vector<MixStep> steps;
  steps.reserve(clusters.size());
  for (std::size_t c : clusters) {
    const Genotype& donor = level.member(rng.below(level.size()));
    steps.push_back(MixStep{tree[c].genes, &donor});
  }
  return mix_with_donors(std::move(source), steps, cost, hooks);
}

MoP3::MoP3(const Problem& problem, std::uint64_t budget, std::uint64_t seed, MoP3Options options)
    : problem_(problem),
      options_(std::move(options)),
      rng_(seed),
      gateway_(problem, budget, options_.gateway),
      pyramid_(problem.genotype_length()),
      archive_(options_.epsilon) {
  if (problem.genotype_length() < 2) throw std::invalid_argument("MO-P3 needs at least two genes");
  gateway_.set_observer([this](const Genotype& g, const ObjectiveVector& o) {
    if (archive_.try_add(g, o)) last_archive_change_ = gateway_.ffe();
  });
}

WeightVector MoP3::next_weight() {
  if (options_.strategy == WeightStrategy::smart) return smart_weight_vector(archive_, rng_);
  return random_weight_vector(rng_);
}

void MoP3::run_iteration() {
  const WeightVector w = next_weight();
  weights_.push_back(w);
  const CostFunction cost = scalarized_cost(gateway_, w);

  MixHooks hooks;
  if (on_mix_step) {
    hooks.on_step = [this, &w](const Genotype& before, const Genotype& after) {
      on_mix_step(before, after, w);
    };
  }

  Genotype individual = fihc(rng_.random_genotype(problem_.genotype_length()), cost, rng_);
  if (!pyramid_.contains(individual)) pyramid_.insert(0, individual);

  // The pyramid may gain a level while the individual climbs.
  for (std::size_t level = 0; level < pyramid_.level_count(); ++level) {
    Genotype improved =
        optimal_mix(individual, pyramid_.level(level), cost, rng_, options_.cluster_order, hooks);
    if (improved != individual) {
      individual = std::move(improved);
      if (!pyramid_.contains(individual)) pyramid_.insert(level + 1, individual);
    }
  }
}

bool MoP3::iterate() {
  if (gateway_.exhausted()) return false;
  try {
    run_iteration();
  } catch (const BudgetExhausted&) {
    ++iterations_;
    return false;
  }
  ++iterations_;
  return true;
}

RunResult MoP3::run() {
  std::size_t stalled = 0;
  while (true) {
    const std::uint64_t before = gateway_.ffe();
    if (!iterate()) break;
    if (options_.stop_when && options_.stop_when(archive_)) break;
    stalled = gateway_.ffe() == before ? stalled + 1 : 0;
    if (options_.stall_limit != 0 && stalled >= options_.stall_limit) break;
  }
  RunResult result;
  result.front = archive_.sorted();
  result.ffe_used = gateway_.ffe();
  result.ffe_final = last_archive_change_;
  result.iterations = iterations_;
  return result;
}

RunResult run_mo_p3(const Problem& problem, std::uint64_t budget, WeightStrategy strategy,
                    std::uint64_t seed, MoP3Options options) {
  options.strategy = strategy;
  MoP3 optimizer(problem, budget, seed, std::move(options));
  return optimizer.run();
}

}  // namespace mop3
