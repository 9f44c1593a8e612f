#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mop3/baselines.hpp"
#include "mop3/rng.hpp"
#include "population.hpp"

namespace mop3 {

void Nsga2Config::validate() const {
  if (population_size < 4 || population_size % 2 != 0) {
    throw std::invalid_argument("NSGA-II population size must be even and at least 4");
  }
  if (crossover_probability < 0.0 || crossover_probability > 1.0) {
    throw std::invalid_argument("crossover probability must lie in [0, 1]");
  }
  if (mutation_probability < 0.0 || mutation_probability > 1.0) {
    throw std::invalid_argument("mutation probability must lie in [0, 1]");
  }
  if (tournament_size < 1) throw std::invalid_argument("tournament size must be positive");
}

namespace {

std::vector<std::vector<std::size_t>> sort_two_objectives(std::span<const ObjectiveVector> points) {
  std::vector<std::vector<std::size_t>> fronts;
  for (std::size_t i : lexicographic_order_2d(points)) {
    const ObjectiveVector& p = points[i];
    const auto dominated_by_front = [&](const std::vector<std::size_t>& front) {
      const ObjectiveVector& last = points[front.back()];
      return last[1] < p[1] || (last[1] == p[1] && last[0] < p[0]);
    };
    const auto slot = std::partition_point(fronts.begin(), fronts.end(), dominated_by_front);
    if (slot == fronts.end()) {
      fronts.push_back({i});
    } else {
      slot->push_back(i);
    }
  }
  for (auto& front : fronts) std::sort(front.begin(), front.end());
  return fronts;
}

}  // namespace

std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const ObjectiveVector> points) {
  const bool two_objectives =
      std::all_of(points.begin(), points.end(), [](const ObjectiveVector& o) { return o.size() == 2; });
  if (two_objectives) return sort_two_objectives(points);
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(points[p], points[q])) {
        dominated_by[p].push_back(q);
        ++domination_count[q];
      } else if (dominates(points[q], points[p])) {
        dominated_by[q].push_back(p);
        ++domination_count[p];
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (domination_count[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : current) {
      for (std::size_t q : dominated_by[p]) {
        if (--domination_count[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distances(std::span<const ObjectiveVector> points,
                                       std::span<const std::size_t> front) {
  const std::size_t n = front.size();
  std::vector<double> distance(n, 0.0);
  if (n == 0) return distance;
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t m = points[front[0]].size();
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < m; ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return points[front[a]][k] < points[front[b]][k];
    });
    const double lo = points[front[order.front()]][k];
    const double hi = points[front[order.back()]][k];
    distance[order.front()] = inf;
    distance[order.back()] = inf;
    if (hi <= lo) continue;
    for (std::size_t r = 1; r + 1 < n; ++r) {
      const double gap = points[front[order[r + 1]]][k] - points[front[order[r - 1]]][k];
      distance[order[r]] += gap / (hi - lo);
    }
  }
  return distance;
}

namespace {

struct Selected {
  std::size_t index;
  std::size_t rank;
  double crowding;
};

/// Best `count` points by (rank, crowding); crowding is measured within each full front of `points`.
std::vector<Selected> environmental_selection(std::span<const ObjectiveVector> points, std::size_t count) {
  std::vector<Selected> chosen;
  chosen.reserve(count);
  const auto fronts = non_dominated_sort(points);
  for (std::size_t r = 0; r < fronts.size() && chosen.size() < count; ++r) {
    const auto& front = fronts[r];
    const auto distances = crowding_distances(points, front);
    if (chosen.size() + front.size() <= count) {
      for (std::size_t k = 0; k < front.size(); ++k) chosen.push_back(Selected{front[k], r, distances[k]});
      continue;
    }
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return distances[a] > distances[b]; });
    for (std::size_t k = 0; chosen.size() < count; ++k) {
      chosen.push_back(Selected{front[order[k]], r, distances[order[k]]});
    }
  }
  return chosen;
}

}  // namespace

RunResult run_nsga2(const Problem& problem, const Nsga2Config& config, std::uint64_t budget,
                    std::uint64_t seed) {
  config.validate();
  if (budget == 0) throw std::invalid_argument("budget must be positive");
  const std::size_t l = problem.genotype_length();
  const std::size_t n = config.population_size;
  const double pm = config.mutation_probability > 0.0 ? config.mutation_probability : 1.0 / static_cast<double>(l);

  Rng rng(seed);
  EvaluationGateway gateway(problem, budget, config.gateway);
  // pool[0, n) holds the parents, pool[n, n + filled) the offspring evaluated so far.
  std::vector<Solution> pool(2 * n);
  std::vector<Solution> spare(2 * n);
  std::vector<ObjectiveVector> points(2 * n);
  std::size_t parents = 0;
  std::size_t filled = 0;
  std::vector<std::size_t> rank;
  std::vector<double> crowding;
  std::vector<ObjectiveVector> signature;
  std::uint64_t ffe_final = 0;
  std::uint64_t generations = 0;

  const auto note_front = [&](std::span<const ObjectiveVector> current_points) {
    std::vector<ObjectiveVector> current;
    for (std::size_t i : non_dominated_indexes(current_points)) current.push_back(current_points[i]);
    std::sort(current.begin(), current.end());
    current.erase(std::unique(current.begin(), current.end()), current.end());
    if (current != signature) {
      signature = std::move(current);
      ffe_final = gateway.ffe();
    }
  };
  const auto survive = [&]() {
    const std::size_t total = parents + filled;
    for (std::size_t i = 0; i < filled; ++i) std::swap(pool[parents + i], pool[n + i]);
    for (std::size_t i = 0; i < total; ++i) points[i] = pool[i].objectives;
    const auto chosen = environmental_selection(std::span(points.data(), total), n);
    std::vector<bool> taken(total, false);
    rank.clear();
    crowding.clear();
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      std::swap(spare[k], pool[chosen[k].index]);
      taken[chosen[k].index] = true;
      rank.push_back(chosen[k].rank);
      crowding.push_back(chosen[k].crowding);
    }
    std::size_t rest = chosen.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i >= total || !taken[i]) std::swap(spare[rest++], pool[i]);
    }
    std::swap(pool, spare);
    parents = chosen.size();
    filled = 0;
    for (std::size_t i = 0; i < parents; ++i) points[i] = pool[i].objectives;
    note_front(std::span(points.data(), parents));
  };

  try {
    while (parents < n) {
      pool[parents].genotype = rng.random_genotype(l);
      pool[parents].objectives = gateway.evaluate(pool[parents].genotype);
      ++parents;
    }
    survive();

    const auto better = [&](std::size_t a, std::size_t b) {
      if (rank[a] != rank[b]) return rank[a] < rank[b];
      return crowding[a] > crowding[b];
    };
    const auto tournament = [&]() {
      std::size_t best = rng.below(n);
      for (std::size_t t = 1; t < config.tournament_size; ++t) {
        const std::size_t challenger = rng.below(n);
        if (better(challenger, best)) best = challenger;
      }
      return best;
    };

    std::size_t stalled = 0;
    while (!gateway.exhausted()) {
      const std::uint64_t before = gateway.ffe();
      while (filled < n) {
        const Solution& pa = pool[tournament()];
        const Solution& pb = pool[tournament()];
        Solution& a = pool[n + filled];
        Solution& b = pool[n + filled + 1];
        a.genotype = pa.genotype;
        b.genotype = pb.genotype;
        if (rng.bernoulli(config.crossover_probability)) detail::uniform_crossover(a.genotype, b.genotype, rng);
        for (Solution* child : {&a, &b}) {
          detail::mutate(child->genotype, pm, rng);
          // A child identical to a parent reuses the parent's objectives.
          if (child->genotype == pa.genotype) {
            child->objectives = pa.objectives;
          } else if (child->genotype == pb.genotype) {
            child->objectives = pb.objectives;
          } else {
            child->objectives = gateway.evaluate(child->genotype);
          }
          ++filled;
        }
      }
      survive();
      ++generations;

      stalled = gateway.ffe() == before ? stalled + 1 : 0;
      if (config.stall_limit != 0 && stalled >= config.stall_limit) break;
    }
  } catch (const BudgetExhausted&) {
    for (std::size_t i = 0; i < filled; ++i) std::swap(pool[parents + i], pool[n + i]);
    parents += filled;
    for (std::size_t i = 0; i < parents; ++i) points[i] = pool[i].objectives;
    note_front(std::span(points.data(), parents));
  }

  RunResult result;
  result.front = detail::unique_front(std::span(pool.data(), parents));
  result.ffe_used = gateway.ffe();
  result.ffe_final = ffe_final;
  result.iterations = generations;
  return result;
}

}  // namespace mop3
