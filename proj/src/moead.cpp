#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mop3/baselines.hpp"
#include "mop3/rng.hpp"
#include "population.hpp"

namespace mop3 {

void MoeadConfig::validate() const {
  if (subproblems < 2) throw std::invalid_argument("MOEA/D needs at least two subproblems");
  if (neighborhood < 1 || neighborhood > subproblems) {
    throw std::invalid_argument("neighborhood size must lie in [1, subproblem count]");
  }
  if (mutation_probability < 0.0 || mutation_probability > 1.0) {
    throw std::invalid_argument("mutation probability must lie in [0, 1]");
  }
}

std::vector<WeightVector> moead_weights(std::size_t count) {
  if (count < 2) throw std::invalid_argument("need at least two weight vectors");
  std::vector<WeightVector> weights;
  weights.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    weights.push_back(WeightVector::from_first(static_cast<double>(j) / static_cast<double>(count - 1)));
  }
  return weights;
}

double tchebycheff(const ObjectiveVector& o, const WeightVector& w, const ObjectiveVector& ideal) {
  if (o.size() != w.size() || o.size() != ideal.size()) {
    throw std::invalid_argument("objective, weight and ideal point sizes differ");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < o.size(); ++i) worst = std::max(worst, w[i] * std::abs(o[i] - ideal[i]));
  return worst;
}

namespace {

std::vector<std::vector<std::size_t>> neighborhoods(const std::vector<WeightVector>& weights,
                                                    std::size_t size) {
  const std::size_t n = weights.size();
  std::vector<std::vector<std::size_t>> result(n);
  std::vector<std::size_t> order(n);
  std::vector<double> distance(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double d = 0.0;
      for (std::size_t k = 0; k < weights[i].size(); ++k) {
        const double diff = weights[i][k] - weights[j][k];
        d += diff * diff;
      }
      distance[j] = d;
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return distance[a] < distance[b]; });
    result[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size));
  }
  return result;
}

}  // namespace

RunResult run_moead(const Problem& problem, const MoeadConfig& config, std::uint64_t budget,
                    std::uint64_t seed) {
  config.validate();
  if (budget == 0) throw std::invalid_argument("budget must be positive");
  if (problem.objective_count() != 2) throw std::invalid_argument("MOEA/D is implemented for two objectives");
  if (config.ideal_point && config.ideal_point->size() != 2) {
    throw std::invalid_argument("ideal point must have two objectives");
  }
  const std::size_t l = problem.genotype_length();
  const std::size_t n = config.subproblems;
  const double pm = config.mutation_probability > 0.0 ? config.mutation_probability : 1.0 / static_cast<double>(l);

  const auto weights = moead_weights(n);
  const auto neighbors = neighborhoods(weights, config.neighborhood);

  Rng rng(seed);
  EvaluationGateway gateway(problem, budget, config.gateway);
  std::vector<Solution> population;
  std::vector<double> ideal;
  std::vector<ObjectiveVector> signature;
  std::uint64_t ffe_final = 0;
  std::uint64_t generations = 0;

  const auto observe = [&](const ObjectiveVector& o) {
    if (config.ideal_point) return;
    if (ideal.empty()) {
      ideal.assign(o.values().begin(), o.values().end());
      return;
    }
    for (std::size_t i = 0; i < o.size(); ++i) ideal[i] = std::min(ideal[i], o[i]);
  };
  const auto note_front = [&]() {
    auto current = detail::front_signature(population);
    if (current != signature) {
      signature = std::move(current);
      ffe_final = gateway.ffe();
    }
  };
  if (config.ideal_point) {
    ideal.assign(config.ideal_point->values().begin(), config.ideal_point->values().end());
  }

  try {
    while (population.size() < n) {
      Genotype g = rng.random_genotype(l);
      ObjectiveVector o = gateway.evaluate(g);
      observe(o);
      population.push_back(Solution{std::move(g), std::move(o)});
    }
    note_front();
    if (config.on_generation) config.on_generation(population);

    std::size_t stalled = 0;
    while (!gateway.exhausted()) {
      const std::uint64_t before = gateway.ffe();
      for (std::size_t i = 0; i < n; ++i) {
        const auto& hood = neighbors[i];
        const std::size_t a = hood[rng.below(hood.size())];
        std::size_t b = hood[rng.below(hood.size())];
        while (hood.size() > 1 && b == a) b = hood[rng.below(hood.size())];

        Genotype child = population[a].genotype;
        if (l > 1) {
          const std::size_t cut = 1 + rng.below(l - 1);
          for (std::size_t k = cut; k < l; ++k) child.set(k, population[b].genotype[k]);
        }
        detail::mutate(child, pm, rng);
        const ObjectiveVector& o = gateway.evaluate(child);
        observe(o);

        const ObjectiveVector z(ideal);
        for (std::size_t j : hood) {
          if (tchebycheff(o, weights[j], z) <= tchebycheff(population[j].objectives, weights[j], z)) {
            population[j] = Solution{child, o};
          }
        }
      }
      ++generations;
      note_front();
      if (config.on_generation) config.on_generation(population);

      stalled = gateway.ffe() == before ? stalled + 1 : 0;
      if (config.stall_limit != 0 && stalled >= config.stall_limit) break;
    }
  } catch (const BudgetExhausted&) {
    note_front();
  }

  RunResult result;
  result.front = detail::unique_front(population);
  result.ffe_used = gateway.ffe();
  result.ffe_final = ffe_final;
  result.iterations = generations;
  return result;
}

}  // namespace mop3
