#include <catch_amalgamated.hpp>

#include <sstream>

#include "mop3/benchmarks.hpp"
#include "oracles.hpp"

using namespace mop3;

namespace {

std::vector<double> maximized(const ObjectiveVector& o) {
  std::vector<double> v;
  for (double x : o.values()) v.push_back(x == 0.0 ? 0.0 : -x);
  return v;
}

Genotype from_bits(std::uint64_t x, std::size_t l) {
  Genotype g(l);
  for (std::size_t i = 0; i < l; ++i) g.set(i, (x >> i) & 1);
  return g;
}

std::vector<std::vector<double>> sorted_values(const std::vector<ObjectiveVector>& front) {
  std::vector<std::vector<double>> out;
  for (const auto& o : front) out.push_back(oracle::values(o));
  std::sort(out.begin(), out.end());
  return out;
}

double cut_weight(const MaxcutInstance& instance, const Genotype& g, int set) {
  double total = 0.0;
  for (const auto& e : instance.edges) {
    if (g[e.u] != g[e.v]) total += set == 0 ? e.w1 : e.w2;
  }
  return total;
}

/// Remove the lowest-ratio selected item (lowest index on ties) until every capacity holds.
Genotype repair_oracle(const KnapsackInstance& instance, Genotype g) {
  const auto over = [&] {
    for (std::size_t k = 0; k < instance.knapsacks(); ++k) {
      double load = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i]) load += instance.items[i].weights[k];
      }
      if (load > instance.capacities[k]) return true;
    }
    return false;
  };
  while (over()) {
    std::size_t worst = g.size();
    double worst_ratio = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!g[i]) continue;
      const auto& item = instance.items[i];
      const double ratio = (item.profits[0] + item.profits[1]) / (item.weights[0] + item.weights[1]);
      if (worst == g.size() || ratio < worst_ratio) {
        worst = i;
        worst_ratio = ratio;
      }
    }
    g.set(worst, false);
  }
  return g;
}

KnapsackInstance hand_knapsack() {
  KnapsackInstance instance;
  instance.capacities = {10, 12};
  instance.items = {{{4, 5}, {8, 6}}, {{6, 2}, {3, 3}}, {{3, 6}, {9, 9}}, {{5, 5}, {5, 5}}, {{2, 2}, {1, 7}}};
  return instance;
}

}  // namespace

TEST_CASE("zeromax-onemax examples") {
  ZeromaxOnemax problem(8);
  CHECK(maximized(problem.evaluate(Genotype::from_string("00000000"))) == std::vector<double>{0, 8});
  CHECK(maximized(problem.evaluate(Genotype::from_string("11111111"))) == std::vector<double>{8, 0});
  for (std::uint64_t x = 0; x < 256; ++x) {
    const auto o = problem.evaluate(from_bits(x, 8));
    CHECK(o[0] + o[1] == -8.0);
  }
  CHECK_THROWS_AS(ZeromaxOnemax(0), std::invalid_argument);
}

TEST_CASE("trap5 examples") {
  CHECK(deceptive(5, 5) == 5);
  CHECK(deceptive(0, 5) == 4);
  CHECK(deceptive(4, 5) == 0);
  CHECK(deceptive_inverse(0, 5) == 5);
  CHECK(deceptive_inverse(5, 5) == 4);
  CHECK(deceptive_inverse(1, 5) == 0);
  Trap5InvTrap5 one(5);
  CHECK(maximized(one.evaluate(Genotype::from_string("11111"))) == std::vector<double>{5, 4});
  CHECK(maximized(one.evaluate(Genotype::from_string("00000"))) == std::vector<double>{4, 5});
  Trap5InvTrap5 two(10);
  CHECK(maximized(two.evaluate(Genotype::from_string("1111100000"))) == std::vector<double>{9, 9});
  CHECK_THROWS_AS(Trap5InvTrap5(12), std::invalid_argument);
}

TEST_CASE("trap5 objectives stay within block bounds") {
  for (std::size_t l : {5u, 10u, 15u, 20u}) {
    Trap5InvTrap5 problem(l);
    const double blocks = static_cast<double>(l / 5);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << l); x += l == 20 ? 7 : 1) {
      const auto v = maximized(problem.evaluate(from_bits(x, l)));
      for (double f : v) {
        CHECK(f >= 0.0);
        CHECK(f <= 5.0 * blocks);
      }
    }
  }
}

TEST_CASE("lotz examples") {
  Lotz problem(5);
  CHECK(maximized(problem.evaluate(Genotype::from_string("11111"))) == std::vector<double>{5, 0});
  CHECK(maximized(problem.evaluate(Genotype::from_string("11010"))) == std::vector<double>{2, 1});
  CHECK(maximized(problem.evaluate(Genotype::from_string("00000"))) == std::vector<double>{0, 5});
  CHECK_THROWS_AS(Lotz(1), std::invalid_argument);
}

TEST_CASE("analytic fronts") {
  CHECK(optimal_front(ZeromaxOnemax(4)).size() == 5);
  const auto trap = optimal_front(Trap5InvTrap5(10));
  REQUIRE(trap.size() == 3);
  std::vector<std::vector<double>> trap_max;
  for (const auto& o : trap) trap_max.push_back(maximized(o));
  std::sort(trap_max.begin(), trap_max.end());
  CHECK(trap_max == std::vector<std::vector<double>>{{8, 10}, {9, 9}, {10, 8}});
  const auto lotz = optimal_front(Lotz(3));
  std::vector<std::vector<double>> lotz_max;
  for (const auto& o : lotz) lotz_max.push_back(maximized(o));
  std::sort(lotz_max.begin(), lotz_max.end());
  CHECK(lotz_max == std::vector<std::vector<double>>{{0, 3}, {1, 2}, {2, 1}, {3, 0}});
  MaxcutGeneratorParams params;
  CHECK_THROWS_AS(optimal_front(Maxcut(generate_maxcut(params, 1))), std::invalid_argument);
}

TEST_CASE("enumeration matches the analytic fronts up to twenty genes") {
  for (std::size_t l = 2; l <= 20; l += 3) {
    ZeromaxOnemax zm(l);
    CHECK(sorted_values(brute_force_front(zm)) == sorted_values(optimal_front(zm)));
    Lotz lotz(l);
    CHECK(sorted_values(brute_force_front(lotz)) == sorted_values(optimal_front(lotz)));
  }
  for (std::size_t l : {5u, 10u, 15u, 20u}) {
    Trap5InvTrap5 trap(l);
    CHECK(sorted_values(brute_force_front(trap)) == sorted_values(optimal_front(trap)));
  }
  CHECK(sorted_values(brute_force_front(ZeromaxOnemax(20))) == sorted_values(optimal_front(ZeromaxOnemax(20))));
  CHECK(sorted_values(brute_force_front(Lotz(20))) == sorted_values(optimal_front(Lotz(20))));
  CHECK_THROWS_AS(brute_force_front(ZeromaxOnemax(26)), std::invalid_argument);
}

TEST_CASE("maxcut evaluation") {
  MaxcutGeneratorParams params;
  params.vertices = 12;
  const auto instance = generate_maxcut(params, 3);
  Maxcut problem(instance);
  CHECK(maximized(problem.evaluate(Genotype(12))) == std::vector<double>{0, 0});
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    auto g = rng.random_genotype(12);
    const auto o = problem.evaluate(g);
    CHECK(-o[0] == cut_weight(instance, g, 0));
    CHECK(-o[1] == cut_weight(instance, g, 1));
    for (std::size_t k = 0; k < 12; ++k) g.flip(k);
    CHECK(problem.evaluate(g) == o);
  }
}

TEST_CASE("maxcut twelve-vertex front matches enumeration oracle") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    MaxcutGeneratorParams params;
    params.vertices = 12;
    const auto instance = generate_maxcut(params, seed);
    std::vector<std::vector<double>> all;
    for (std::uint64_t x = 0; x < 4096; ++x) {
      const auto g = from_bits(x, 12);
      all.push_back({-cut_weight(instance, g, 0), -cut_weight(instance, g, 1)});
    }
    CHECK(sorted_values(brute_force_front(Maxcut(instance))) == oracle::non_dominated(all));
  }
}

TEST_CASE("maxcut instances validate and round trip") {
  MaxcutGeneratorParams params;
  params.vertices = 9;
  const auto instance = generate_maxcut(params, 8);
  std::stringstream buffer;
  write_maxcut(buffer, instance);
  const auto back = read_maxcut(buffer);
  REQUIRE(back.edges.size() == instance.edges.size());
  for (std::size_t i = 0; i < back.edges.size(); ++i) {
    CHECK(back.edges[i].u == instance.edges[i].u);
    CHECK(back.edges[i].v == instance.edges[i].v);
    CHECK(back.edges[i].w1 == instance.edges[i].w1);
    CHECK(back.edges[i].w2 == instance.edges[i].w2);
  }
  CHECK(generate_maxcut(params, 8).edges.size() == instance.edges.size());
  MaxcutInstance loop{3, {{1, 1, 1, 1}}};
  CHECK_THROWS_AS(loop.validate(), std::invalid_argument);
  MaxcutInstance repeated{3, {{0, 1, 1, 1}, {1, 0, 2, 2}}};
  CHECK_THROWS_AS(repeated.validate(), std::invalid_argument);
  std::istringstream broken("3 2\n0 1 1 1\n");
  CHECK_THROWS(read_maxcut(broken));
}

TEST_CASE("knapsack repair examples") {
  const auto instance = hand_knapsack();
  const auto feasible = Genotype::from_string("10001");
  CHECK(repair_knapsack(instance, feasible) == feasible);

  KnapsackInstance heavy;
  heavy.capacities = {5, 5};
  heavy.items = {{{9, 1}, {1, 1}}, {{1, 1}, {1, 1}}};
  CHECK(repair_knapsack(heavy, Genotype::from_string("10")).to_string() == "00");

  for (std::uint64_t x = 0; x < 32; ++x) {
    const auto g = from_bits(x, 5);
    CHECK(repair_knapsack(instance, g) == repair_oracle(instance, g));
  }
}

TEST_CASE("knapsack repair is feasible, a subset and removes by ratio") {
  Rng rng(31);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    KnapsackGeneratorParams params;
    params.items = 5 + rng.below(40);
    const auto instance = generate_knapsack(params, seed);
    for (int t = 0; t < 50; ++t) {
      const auto g = rng.random_genotype(params.items);
      const auto r = repair_knapsack(instance, g);
      CHECK(r == repair_oracle(instance, g));
      for (std::size_t k = 0; k < instance.knapsacks(); ++k) {
        double load = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
          if (r[i]) load += instance.items[i].weights[k];
        }
        CHECK(load <= instance.capacities[k]);
      }
      double max_removed = -1.0;
      double min_kept = 1e300;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i]) CHECK(g[i]);
        const double ratio = knapsack_item_ratio(instance.items[i]);
        if (g[i] && !r[i]) max_removed = std::max(max_removed, ratio);
        if (r[i]) min_kept = std::min(min_kept, ratio);
      }
      CHECK(max_removed <= min_kept);
    }
  }
}

TEST_CASE("knapsack evaluation") {
  auto instance = hand_knapsack();
  Knapsack problem(instance);
  CHECK(maximized(problem.evaluate(Genotype(5))) == std::vector<double>{0, 0});
  const auto g = Genotype::from_string("11111");
  const auto before = g;
  problem.evaluate(g);
  CHECK(g == before);

  instance.capacities = {1000, 1000};
  Knapsack roomy(instance);
  double p1 = 0.0;
  double p2 = 0.0;
  for (const auto& item : instance.items) {
    p1 += item.profits[0];
    p2 += item.profits[1];
  }
  CHECK(maximized(roomy.evaluate(Genotype::from_string("11111"))) == std::vector<double>{p1, p2});
}

TEST_CASE("knapsack fronts match enumeration of repaired selections") {
  for (std::size_t items : {10u, 15u}) {
    KnapsackGeneratorParams params;
    params.items = items;
    const auto instance = generate_knapsack(params, items);
    std::vector<std::vector<double>> all;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << items); ++x) {
      const auto r = repair_oracle(instance, from_bits(x, items));
      double p1 = 0.0;
      double p2 = 0.0;
      for (std::size_t i = 0; i < items; ++i) {
        if (!r[i]) continue;
        p1 -= instance.items[i].profits[0];
        p2 -= instance.items[i].profits[1];
      }
      all.push_back({p1, p2});
    }
    CHECK(sorted_values(brute_force_front(Knapsack(instance))) == oracle::non_dominated(all));
  }
}

TEST_CASE("knapsack instances validate and round trip") {
  KnapsackGeneratorParams params;
  params.items = 7;
  const auto instance = generate_knapsack(params, 2);
  std::stringstream buffer;
  write_knapsack(buffer, instance);
  const auto back = read_knapsack(buffer);
  CHECK(back.capacities == instance.capacities);
  REQUIRE(back.items.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(back.items[i].weights == instance.items[i].weights);
    CHECK(back.items[i].profits == instance.items[i].profits);
  }
  KnapsackInstance bad;
  bad.capacities = {5, 5};
  bad.items = {{{0, 1}, {1, 1}}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
