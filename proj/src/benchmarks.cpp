#include "mop3/benchmarks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

#include "mop3/rng.hpp"

namespace mop3 {

ZeromaxOnemax::ZeromaxOnemax(std::size_t length) : length_(length) {
  if (length == 0) throw std::invalid_argument("genotype length must be positive");
}

ObjectiveVector ZeromaxOnemax::evaluate(const Genotype& g) const {
  const double ones = static_cast<double>(g.count_ones());
  return {-ones, -(static_cast<double>(length_) - ones)};
}

std::optional<std::vector<ObjectiveVector>> ZeromaxOnemax::analytic_front() const {
  std::vector<ObjectiveVector> front;
  for (std::size_t u = 0; u <= length_; ++u) {
    front.push_back({-static_cast<double>(u), -static_cast<double>(length_ - u)});
  }
  std::sort(front.begin(), front.end());
  return front;
}

int deceptive(int unitation, int k) { return unitation == k ? k : k - 1 - unitation; }

int deceptive_inverse(int unitation, int k) { return unitation == 0 ? k : unitation - 1; }

Trap5InvTrap5::Trap5InvTrap5(std::size_t length) : length_(length) {
  if (length == 0 || length % kBlock != 0) {
    throw std::invalid_argument("trap5 genotype length must be a positive multiple of 5");
  }
}

ObjectiveVector Trap5InvTrap5::evaluate(const Genotype& g) const {
  int trap = 0;
  int inverse = 0;
  for (std::size_t start = 0; start < length_; start += kBlock) {
    int u = 0;
    for (int k = 0; k < kBlock; ++k) u += g[start + static_cast<std::size_t>(k)];
    trap += deceptive(u, kBlock);
    inverse += deceptive_inverse(u, kBlock);
  }
  return {-static_cast<double>(trap), -static_cast<double>(inverse)};
}

std::optional<std::vector<ObjectiveVector>> Trap5InvTrap5::analytic_front() const {
  const int blocks = static_cast<int>(length_ / kBlock);
  std::vector<ObjectiveVector> front;
  for (int ones = 0; ones <= blocks; ++ones) {
    const int zeros = blocks - ones;
    front.push_back({-static_cast<double>(5 * ones + 4 * zeros),
                     -static_cast<double>(4 * ones + 5 * zeros)});
  }
  std::sort(front.begin(), front.end());
  return front;
}

Lotz::Lotz(std::size_t length) : length_(length) {
  if (length < 2) throw std::invalid_argument("LOTZ needs at least two genes");
}

ObjectiveVector Lotz::evaluate(const Genotype& g) const {
  std::size_t leading = 0;
  while (leading < length_ && g[leading] == 1) ++leading;
  std::size_t trailing = 0;
  while (trailing < length_ && g[length_ - 1 - trailing] == 0) ++trailing;
  return {-static_cast<double>(leading), -static_cast<double>(trailing)};
}

std::optional<std::vector<ObjectiveVector>> Lotz::analytic_front() const {
  std::vector<ObjectiveVector> front;
  for (std::size_t a = 0; a <= length_; ++a) {
    front.push_back({-static_cast<double>(a), -static_cast<double>(length_ - a)});
  }
  std::sort(front.begin(), front.end());
  return front;
}

// ---------------------------------------------------------------------------------------------
// MAXCUT

void MaxcutInstance::validate() const {
  if (vertices < 2) throw std::invalid_argument("MAXCUT needs at least two vertices");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges) {
    if (e.u >= vertices || e.v >= vertices) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loops are not allowed");
    if (!seen.insert(std::minmax(e.u, e.v)).second) throw std::invalid_argument("repeated edge");
  }
}

MaxcutInstance generate_maxcut(const MaxcutGeneratorParams& params, std::uint64_t seed) {
  if (params.density <= 0.0 || params.density > 1.0) throw std::invalid_argument("density must be in (0, 1]");
  if (params.min_weight > params.max_weight) throw std::invalid_argument("empty weight range");
  Rng rng(seed);
  MaxcutInstance instance;
  instance.vertices = params.vertices;
  const auto weight = [&] {
    const auto span = static_cast<std::uint64_t>(params.max_weight - params.min_weight + 1);
    return static_cast<double>(params.min_weight + static_cast<int>(rng.below(span)));
  };
  for (std::size_t i = 0; i < params.vertices; ++i) {
    for (std::size_t j = i + 1; j < params.vertices; ++j) {
      if (!rng.bernoulli(params.density)) continue;
      const double w1 = weight();
      const double w2 = weight();
      instance.edges.push_back(WeightedEdge{i, j, w1, w2});
    }
  }
  instance.validate();
  return instance;
}

MaxcutInstance read_maxcut(std::istream& in) {
  MaxcutInstance instance;
  std::size_t edge_count = 0;
  if (!(in >> instance.vertices >> edge_count)) throw std::runtime_error("malformed MAXCUT header");
  instance.edges.reserve(edge_count);
  for (std::size_t k = 0; k < edge_count; ++k) {
    WeightedEdge e;
    if (!(in >> e.u >> e.v >> e.w1 >> e.w2)) throw std::runtime_error("malformed MAXCUT edge line");
    instance.edges.push_back(e);
  }
  instance.validate();
  return instance;
}

void write_maxcut(std::ostream& out, const MaxcutInstance& instance) {
  out << instance.vertices << ' ' << instance.edges.size() << '\n';
  for (const auto& e : instance.edges) out << e.u << ' ' << e.v << ' ' << e.w1 << ' ' << e.w2 << '\n';
}

Maxcut::Maxcut(MaxcutInstance instance) : instance_(std::move(instance)) { instance_.validate(); }

ObjectiveVector Maxcut::evaluate(const Genotype& g) const {
  double cut1 = 0.0;
  double cut2 = 0.0;
  for (const auto& e : instance_.edges) {
    if (g[e.u] != g[e.v]) {
      cut1 += e.w1;
      cut2 += e.w2;
    }
  }
  return {-cut1, -cut2};
}

// ---------------------------------------------------------------------------------------------
// Knapsack

void KnapsackInstance::validate() const {
  if (capacities.size() < 2) throw std::invalid_argument("knapsack needs at least two knapsacks");
  if (items.empty()) throw std::invalid_argument("knapsack needs at least one item");
  for (double c : capacities) {
    if (!(c > 0.0)) throw std::invalid_argument("capacities must be positive");
  }
  for (const auto& item : items) {
    if (item.weights.size() != capacities.size() || item.profits.size() != capacities.size()) {
      throw std::invalid_argument("item dimensions differ from knapsack count");
    }
    for (std::size_t k = 0; k < capacities.size(); ++k) {
      if (!(item.weights[k] > 0.0) || !(item.profits[k] > 0.0)) {
        throw std::invalid_argument("item weights and profits must be positive");
      }
    }
  }
}

KnapsackInstance generate_knapsack(const KnapsackGeneratorParams& params, std::uint64_t seed) {
  if (params.items == 0) throw std::invalid_argument("knapsack needs at least one item");
  if (params.min_value <= 0 || params.min_value > params.max_value) {
    throw std::invalid_argument("knapsack value range must be positive and non-empty");
  }
  Rng rng(seed);
  const auto span = static_cast<std::uint64_t>(params.max_value - params.min_value + 1);
  const auto value = [&] { return static_cast<double>(params.min_value + static_cast<int>(rng.below(span))); };
  KnapsackInstance instance;
  instance.capacities.assign(2, 0.0);
  for (std::size_t i = 0; i < params.items; ++i) {
    KnapsackItem item;
    for (int k = 0; k < 2; ++k) {
      item.weights.push_back(value());
      item.profits.push_back(value());
    }
    instance.items.push_back(std::move(item));
  }
  for (std::size_t k = 0; k < 2; ++k) {
    double total = 0.0;
    for (const auto& item : instance.items) total += item.weights[k];
    instance.capacities[k] = std::max(1.0, std::floor(params.capacity_ratio * total));
  }
  instance.validate();
  return instance;
}

KnapsackInstance read_knapsack(std::istream& in) {
  std::size_t items = 0;
  std::size_t knapsacks = 0;
  if (!(in >> items >> knapsacks)) throw std::runtime_error("malformed knapsack header");
  KnapsackInstance instance;
  instance.capacities.resize(knapsacks);
  for (auto& c : instance.capacities) {
    if (!(in >> c)) throw std::runtime_error("malformed knapsack capacities");
  }
  instance.items.resize(items);
  for (auto& item : instance.items) {
    item.weights.resize(knapsacks);
    item.profits.resize(knapsacks);
    for (std::size_t k = 0; k < knapsacks; ++k) {
      if (!(in >> item.weights[k] >> item.profits[k])) throw std::runtime_error("malformed knapsack item");
    }
  }
  instance.validate();
  return instance;
}

void write_knapsack(std::ostream& out, const KnapsackInstance& instance) {
  out << instance.items.size() << ' ' << instance.knapsacks() << '\n';
  for (std::size_t k = 0; k < instance.knapsacks(); ++k) out << (k ? " " : "") << instance.capacities[k];
  out << '\n';
  for (const auto& item : instance.items) {
    for (std::size_t k = 0; k < instance.knapsacks(); ++k) {
      out << (k ? " " : "") << item.weights[k] << ' ' << item.profits[k];
    }
    out << '\n';
  }
}

double knapsack_item_ratio(const KnapsackItem& item) {
  double profit = 0.0;
  double weight = 0.0;
  for (std::size_t k = 0; k < item.profits.size(); ++k) {
    profit += item.profits[k];
    weight += item.weights[k];
  }
  return profit / weight;
}

namespace {

std::vector<std::size_t> knapsack_removal_order(const KnapsackInstance& instance) {
  std::vector<std::size_t> order(instance.items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return knapsack_item_ratio(instance.items[a]) < knapsack_item_ratio(instance.items[b]);
  });
  return order;
}

Genotype repair_with_order(const KnapsackInstance& instance, std::span<const std::size_t> order,
                           Genotype g) {
  if (g.size() != instance.items.size()) throw std::invalid_argument("genotype length differs from item count");
  std::vector<double> load(instance.knapsacks(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g[i]) continue;
    for (std::size_t k = 0; k < load.size(); ++k) load[k] += instance.items[i].weights[k];
  }
  const auto violated = [&] {
    for (std::size_t k = 0; k < load.size(); ++k) {
      if (load[k] > instance.capacities[k]) return true;
    }
    return false;
  };
  for (std::size_t i : order) {
    if (!violated()) break;
    if (!g[i]) continue;
    g.set(i, false);
    for (std::size_t k = 0; k < load.size(); ++k) load[k] -= instance.items[i].weights[k];
  }
  return g;
}

}  // namespace

Genotype repair_knapsack(const KnapsackInstance& instance, Genotype g) {
  const auto order = knapsack_removal_order(instance);
  return repair_with_order(instance, order, std::move(g));
}

Knapsack::Knapsack(KnapsackInstance instance)
    : instance_(std::move(instance)), removal_order_(knapsack_removal_order(instance_)) {
  instance_.validate();
}

ObjectiveVector Knapsack::evaluate(const Genotype& g) const {
  const Genotype repaired = repair_with_order(instance_, removal_order_, g);
  std::vector<double> profit(instance_.knapsacks(), 0.0);
  for (std::size_t i = 0; i < repaired.size(); ++i) {
    if (!repaired[i]) continue;
    for (std::size_t k = 0; k < profit.size(); ++k) profit[k] -= instance_.items[i].profits[k];
  }
  return ObjectiveVector(std::move(profit));
}

// ---------------------------------------------------------------------------------------------

std::vector<ObjectiveVector> optimal_front(const Problem& problem) {
  auto front = problem.analytic_front();
  if (!front) throw std::invalid_argument("no analytic front for problem " + problem.name());
  return *front;
}

std::vector<ObjectiveVector> brute_force_front(const Problem& problem) {
  const std::size_t l = problem.genotype_length();
  if (l > 25) throw std::invalid_argument("brute-force enumeration is limited to 25 genes");

  // Gray-code walk: one flip per step.
  Genotype g(l);
  std::vector<ObjectiveVector> front;
  const std::uint64_t total = std::uint64_t{1} << l;
  for (std::uint64_t step = 0; step < total; ++step) {
    if (step > 0) g.flip(static_cast<std::size_t>(std::countr_zero(step)));
    ObjectiveVector o = problem.evaluate(g);
    bool dominated = false;
    for (const auto& f : front) {
      if (f == o || dominates(f, o)) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    std::erase_if(front, [&](const ObjectiveVector& f) { return dominates(o, f); });
    front.push_back(std::move(o));
  }
  std::sort(front.begin(), front.end());
  return front;
}

}  // namespace mop3
