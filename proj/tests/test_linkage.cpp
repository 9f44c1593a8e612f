#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <sstream>

#include "mop3/linkage.hpp"
#include "mop3/rng.hpp"
#include "oracles.hpp"

using namespace mop3;

namespace {

std::vector<Genotype> table_population() {
  return {Genotype::from_string("0101"), Genotype::from_string("0101"), Genotype::from_string("1111"),
          Genotype::from_string("1101"), Genotype::from_string("0011")};
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

std::vector<double> quantized_matrix(Rng& rng, std::size_t n, int levels) {
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = levels > 0 ? static_cast<double>(rng.below(levels)) / levels : rng.uniform01();
      d[i * n + j] = d[j * n + i] = v;
    }
  }
  return d;
}

void check_against_naive(std::size_t n, const std::vector<double>& d) {
  const auto expected = oracle::naive_merges(n, d);
  const auto tree = cluster_genes(n, d);
  REQUIRE(tree.size() == 2 * n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const auto& c = tree[n + k];
    REQUIRE(static_cast<std::size_t>(c.left) == expected[k].first);
    REQUIRE(static_cast<std::size_t>(c.right) == expected[k].second);
  }
}

}  // namespace

TEST_CASE("DSM of the worked example population") {
  const auto dsm = build_dsm(table_population());
  CHECK(round2(dsm(0, 1)) == Catch::Approx(0.12).margin(0.005));
  CHECK(round2(dsm(1, 2)) == Catch::Approx(0.22).margin(0.005));
  for (std::size_t i = 0; i < 3; ++i) CHECK(dsm(i, 3) == Catch::Approx(0.0).margin(1e-12));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(dsm(i, j) == dsm(j, i));
  }
}

TEST_CASE("DSM of identical genotypes is zero") {
  const std::vector<Genotype> pop(6, Genotype::from_string("10110"));
  const auto dsm = build_dsm(pop);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) CHECK(dsm(i, j) == 0.0);
  }
}

TEST_CASE("copied genes carry their marginal entropy") {
  const std::vector<Genotype> pop{Genotype::from_string("001"), Genotype::from_string("000"),
                                  Genotype::from_string("001"), Genotype::from_string("110")};
  const double h = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  CHECK(build_dsm(pop)(0, 1) == Catch::Approx(h).epsilon(1e-12));
}

TEST_CASE("DSM and distances match frequency oracle on random populations") {
  Rng rng(23);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 2 + rng.below(12);
    const auto pop = oracle::random_population(rng, 1 + rng.below(30), n);
    const auto dsm = build_dsm(pop);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto [mi, h] = oracle::information(pop, i, j);
        CHECK(dsm(i, j) == Catch::Approx(mi).margin(1e-12));
        CHECK(dsm(i, j) >= 0.0);
        const double d = pairwise_distance(pop, i, j);
        CHECK(d == Catch::Approx(h > 0.0 ? (h - mi) / h : 0.0).margin(1e-12));
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
      }
    }
  }
}

TEST_CASE("incremental statistics equal a batch DSM") {
  Rng rng(29);
  const auto pop = oracle::random_population(rng, 17, 9);
  PairStatistics stats(9);
  for (const auto& g : pop) stats.add(g);
  const auto dsm = build_dsm(pop);
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = i + 1; j < 9; ++j) CHECK(stats.mutual_information(i, j) == Catch::Approx(dsm(i, j)).margin(1e-12));
  }
  CHECK(stats.population_size() == 17);
  CHECK_THROWS(stats.add(Genotype(8)));
}

TEST_CASE("DSM is permutation equivariant") {
  Rng rng(31);
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = 3 + rng.below(8);
    const auto pop = oracle::random_population(rng, 12, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(perm));
    std::vector<Genotype> permuted;
    for (const auto& g : pop) {
      Genotype p(n);
      for (std::size_t k = 0; k < n; ++k) p.set(k, g[perm[k]]);
      permuted.push_back(p);
    }
    const auto a = build_dsm(pop);
    const auto b = build_dsm(permuted);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) CHECK(b(i, j) == Catch::Approx(a(perm[i], perm[j])).margin(1e-12));
      }
    }
  }
}

TEST_CASE("worked example entries from hand-computed frequencies") {
  const auto pop = table_population();
  const auto dsm = build_dsm(pop);
  const auto t = [](double p) { return p * std::log(p); };

  // G1,G2: joint (0,1) 2/5, (1,1) 2/5, (0,0) 1/5; marginals G1 (3/5, 2/5), G2 (1/5, 4/5).
  const double i12 = 0.4 * std::log(0.4 / (0.6 * 0.8)) + 0.4 * std::log(0.4 / (0.4 * 0.8)) +
                     0.2 * std::log(0.2 / (0.6 * 0.2));
  const double h12 = -(2 * t(0.4) + t(0.2));
  // G1,G3: joint (0,0) 2/5 and the other three cells 1/5; both marginals (3/5, 2/5).
  const double i13 = 0.4 * std::log(0.4 / 0.36) + 0.2 * std::log(0.2 / 0.16) + 2 * 0.2 * std::log(0.2 / 0.24);
  const double h13 = -(t(0.4) + 3 * t(0.2));
  // G2,G3: joint (1,0) 3/5, (1,1) 1/5, (0,1) 1/5; marginals G2 (1/5, 4/5), G3 (3/5, 2/5).
  const double i23 = 0.6 * std::log(0.6 / 0.48) + 0.2 * std::log(0.2 / 0.32) + 0.2 * std::log(0.2 / 0.08);
  const double h23 = -(t(0.6) + 2 * t(0.2));

  CHECK(dsm(0, 1) == Catch::Approx(i12).epsilon(1e-12));
  CHECK(dsm(0, 2) == Catch::Approx(i13).epsilon(1e-12));
  CHECK(dsm(1, 2) == Catch::Approx(i23).epsilon(1e-12));
  CHECK(pairwise_distance(pop, 0, 1) == Catch::Approx((h12 - i12) / h12).epsilon(1e-12));
  CHECK(pairwise_distance(pop, 0, 2) == Catch::Approx((h13 - i13) / h13).epsilon(1e-12));
  CHECK(pairwise_distance(pop, 1, 2) == Catch::Approx((h23 - i23) / h23).epsilon(1e-12));
  for (std::size_t i = 0; i < 3; ++i) CHECK(pairwise_distance(pop, i, 3) == Catch::Approx(1.0));
}

TEST_CASE("constant gene pair has distance zero") {
  const std::vector<Genotype> pop{Genotype::from_string("110"), Genotype::from_string("111"),
                                  Genotype::from_string("110")};
  CHECK(pairwise_distance(pop, 0, 1) == 0.0);
}

TEST_CASE("independent fair genes have distance one") {
  const std::vector<Genotype> pop{Genotype::from_string("00"), Genotype::from_string("01"),
                                  Genotype::from_string("10"), Genotype::from_string("11")};
  CHECK(pairwise_distance(pop, 0, 1) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("empty populations are rejected") {
  CHECK_THROWS_AS(build_dsm(std::vector<Genotype>{}), std::invalid_argument);
  CHECK_THROWS_AS(build_linkage_tree(std::vector<Genotype>{Genotype(1)}), std::invalid_argument);
}

TEST_CASE("linkage tree of the worked example") {
  const auto tree = build_linkage_tree(table_population());
  REQUIRE(tree.size() == 7);
  CHECK(tree[4].genes == std::vector<std::size_t>{1, 2});
  CHECK(tree[4].left == 1);
  CHECK(tree[4].right == 2);
  CHECK(tree[5].genes == std::vector<std::size_t>{0, 1, 2});
  CHECK(tree[5].left == 0);
  CHECK(tree[5].right == 4);
  CHECK(tree[5].merge_distance == Catch::Approx(0.94).margin(0.005));
  const auto pop = table_population();
  CHECK(tree[5].merge_distance ==
        Catch::Approx(0.5 * pairwise_distance(pop, 0, 1) + 0.5 * pairwise_distance(pop, 0, 2)));
  CHECK(tree[6].genes == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(tree.root() == 6);
}

TEST_CASE("two genes give a three-cluster tree") {
  const auto tree = cluster_genes(2, {0.0, 0.4, 0.4, 0.0});
  REQUIRE(tree.size() == 3);
  CHECK(tree[0].is_leaf());
  CHECK(tree[1].is_leaf());
  CHECK(tree[2].genes == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(cluster_genes(1, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(cluster_genes(3, {0.0}), std::invalid_argument);
}

TEST_CASE("constant blocks become clusters before the root") {
  std::vector<Genotype> pop;
  for (const char* ab : {"00", "01", "10", "11"}) {
    std::string s;
    for (int k = 0; k < 3; ++k) s += ab[0];
    for (int k = 0; k < 3; ++k) s += ab[1];
    pop.push_back(Genotype::from_string(s));
  }
  const auto tree = build_linkage_tree(pop);
  bool first = false;
  bool second = false;
  for (std::size_t c = 0; c < tree.root(); ++c) {
    if (tree[c].genes == std::vector<std::size_t>{0, 1, 2}) first = true;
    if (tree[c].genes == std::vector<std::size_t>{3, 4, 5}) second = true;
  }
  CHECK(first);
  CHECK(second);
}

TEST_CASE("tree structure on random populations") {
  Rng rng(37);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 2 + rng.below(40);
    const auto tree = build_linkage_tree(oracle::random_population(rng, 5 + rng.below(40), n));
    REQUIRE(tree.size() == 2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(tree[i].is_leaf());
      CHECK(tree[i].genes == std::vector<std::size_t>{i});
    }
    for (std::size_t c = n; c < tree.size(); ++c) {
      const auto& node = tree[c];
      REQUIRE(node.left >= 0);
      REQUIRE(static_cast<std::size_t>(node.left) < c);
      REQUIRE(static_cast<std::size_t>(node.right) < c);
      CHECK(node.merge_distance >= 0.0);
      std::vector<std::size_t> joined = tree[node.left].genes;
      joined.insert(joined.end(), tree[node.right].genes.begin(), tree[node.right].genes.end());
      std::sort(joined.begin(), joined.end());
      CHECK(std::adjacent_find(joined.begin(), joined.end()) == joined.end());
      CHECK(joined == node.genes);
    }
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    CHECK(tree[tree.root()].genes == all);
  }
}

TEST_CASE("clustering matches the naive algorithm with ties") {
  Rng rng(41);
  for (int round = 0; round < 400; ++round) {
    const std::size_t n = 2 + rng.below(63);
    const int levels = static_cast<int>(rng.below(5));
    check_against_naive(n, quantized_matrix(rng, n, levels));
  }
}

TEST_CASE("clustering matches the naive algorithm on population distances") {
  Rng rng(43);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 2 + rng.below(63);
    const auto pop = oracle::random_population(rng, 2 + rng.below(20), n);
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = pairwise_distance(pop, i, j);
    }
    check_against_naive(n, d);
    const auto tree = build_linkage_tree(pop);
    const auto expected = oracle::naive_merges(n, d);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      CHECK(static_cast<std::size_t>(tree[n + k].left) == expected[k].first);
      CHECK(static_cast<std::size_t>(tree[n + k].right) == expected[k].second);
    }
  }
}

TEST_CASE("tree dump lists one cluster per line") {
  const auto tree = build_linkage_tree(table_population());
  std::istringstream in(tree.dump());
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == tree.size());
}
