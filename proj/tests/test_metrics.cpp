#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "mop3/metrics.hpp"
#include "mop3/rng.hpp"
#include "oracles.hpp"

using namespace mop3;

namespace {

std::vector<ObjectiveVector> random_points(Rng& rng, std::size_t count, int levels) {
  std::vector<ObjectiveVector> points;
  for (std::size_t i = 0; i < count; ++i) {
    points.push_back(ObjectiveVector{static_cast<double>(rng.below(levels)), static_cast<double>(rng.below(levels))});
  }
  return points;
}

double igd_oracle(const std::vector<std::vector<double>>& s, const std::vector<std::vector<double>>& ref) {
  double total = 0.0;
  for (const auto& r : ref) {
    double best = INFINITY;
    for (const auto& p : s) best = std::min(best, std::hypot(r[0] - p[0], r[1] - p[1]));
    total += best;
  }
  return total / static_cast<double>(ref.size());
}

std::vector<std::vector<double>> raw(const Front& f) {
  std::vector<std::vector<double>> out;
  for (const auto& p : f.points()) out.push_back(oracle::values(p));
  return out;
}

}  // namespace

TEST_CASE("front drops dominated and repeated points") {
  const Front f{{1, 5}, {2, 2}, {3, 3}, {2, 2}, {5, 1}, {1, 6}};
  CHECK(f.size() == 3);
  CHECK(f.contains(ObjectiveVector{2, 2}));
  CHECK_FALSE(f.contains(ObjectiveVector{3, 3}));
  CHECK(f.points().front() == ObjectiveVector{1, 5});
}

TEST_CASE("distance hand values") {
  const Front reference{{0, 1}, {1, 0}};
  CHECK(igd(Front{{0, 0}}, reference) == Catch::Approx(1.0));
  CHECK(igd(Front{{1, 1}}, Front{{0, 0}}) == Catch::Approx(std::sqrt(2.0)));
  CHECK(igd(Front{{0.5, 0.5}}, reference) == Catch::Approx(std::sqrt(2.0) / 2.0));
  CHECK(gd(Front{{0.5, 0.5}}, reference) == Catch::Approx(std::sqrt(2.0) / 2.0));
  CHECK(igd(reference, reference) == 0.0);
  CHECK(igd(Front{{0, 1}, {1, 0}, {0.5, 0.5}}, Front{{0, 1}, {1, 0}}) == 0.0);
}

TEST_CASE("distances match the oracle") {
  Rng rng(13);
  for (int round = 0; round < 300; ++round) {
    const auto sp = random_points(rng, 1 + rng.below(40), 50);
    const auto rp = random_points(rng, 1 + rng.below(40), 50);
    const Front s(sp);
    const Front r(rp);
    CHECK(igd(s, r) == Catch::Approx(igd_oracle(raw(s), raw(r))).epsilon(1e-12));
    CHECK(gd(s, r) == Catch::Approx(igd(r, s)).epsilon(1e-12));
  }
}

TEST_CASE("igd shrinks as the approximation grows") {
  Rng rng(17);
  for (int round = 0; round < 100; ++round) {
    const Front reference(random_points(rng, 30, 100));
    std::vector<ObjectiveVector> grown;
    double previous = INFINITY;
    for (int step = 0; step < 20; ++step) {
      const double x = rng.uniform01() * 100;
      grown.push_back(ObjectiveVector{x, 100 - x});
      const Front s(grown);
      REQUIRE(s.size() == grown.size());
      const double value = igd(s, reference);
      CHECK(value <= previous);
      previous = value;
    }
  }
}

TEST_CASE("igd is zero exactly when the reference is covered") {
  Rng rng(19);
  for (int round = 0; round < 300; ++round) {
    const Front reference(random_points(rng, 1 + rng.below(20), 20));
    std::vector<ObjectiveVector> pts;
    for (const auto& p : reference.points()) {
      if (rng.bernoulli(0.8)) pts.push_back(p);
    }
    const auto extra = random_points(rng, rng.below(5), 40);
    pts.insert(pts.end(), extra.begin(), extra.end());
    if (pts.empty()) continue;
    const Front s(pts);
    bool covered = true;
    for (const auto& p : reference.points()) covered = covered && s.contains(p);
    CHECK((igd(s, reference) == 0.0) == covered);
  }
}

TEST_CASE("normalized distances use the reference range") {
  const Front reference{{0, 10}, {2, 0}};
  const Front s{{1, 10}};
  CHECK(igd(s, reference) == Catch::Approx((1.0 + std::hypot(1.0, 10.0)) / 2.0));
  CHECK(igd(s, reference, {true}) == Catch::Approx((0.5 + std::hypot(0.5, 1.0)) / 2.0));
  const Front flat{{0, 3}};
  CHECK(igd(Front{{2, 3}}, flat, {true}) == Catch::Approx(2.0));
}

TEST_CASE("distance metrics reject empty fronts") {
  const Front some{{1, 1}};
  CHECK_THROWS_AS(igd(Front{}, some), std::invalid_argument);
  CHECK_THROWS_AS(igd(some, Front{}), std::invalid_argument);
  CHECK_THROWS_AS(gd(Front{}, some), std::invalid_argument);
  CHECK_THROWS_AS(igd(Front{{1, 1, 1}}, some), std::invalid_argument);
}

TEST_CASE("merging fronts matches the oracle") {
  Rng rng(23);
  for (int round = 0; round < 100; ++round) {
    std::vector<Front> fronts;
    std::vector<ObjectiveVector> all;
    for (int k = 0; k < 1 + static_cast<int>(rng.below(5)); ++k) {
      const auto pts = random_points(rng, rng.below(60), 30);
      fronts.emplace_back(pts);
      all.insert(all.end(), fronts.back().points().begin(), fronts.back().points().end());
    }
    const Front merged = merge_pseudo_optimal(fronts);
    CHECK(raw(merged) == oracle::non_dominated(all));
    const std::vector<Front> twice{merged, merged};
    CHECK(merge_pseudo_optimal(twice) == merged);
  }
}

TEST_CASE("front files round trip") {
  Rng rng(29);
  for (int round = 0; round < 50; ++round) {
    std::vector<ObjectiveVector> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(ObjectiveVector{rng.uniform01() * 1e3 - 500, rng.uniform01() / 3});
    const Front f(pts);
    std::stringstream buffer;
    write_front(buffer, f);
    CHECK(read_front(buffer) == f);
  }
  const auto path = std::filesystem::temp_directory_path() / "mop3_front_roundtrip.txt";
  const Front f{{-3, 0.1}, {-1, -2}};
  write_front(path, f);
  CHECK(read_front(path) == f);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_front(path), std::runtime_error);
}

TEST_CASE("front files print zero without a sign") {
  std::stringstream buffer;
  write_front(buffer, Front{{-0.0, -2}});
  CHECK(buffer.str() == "0 -2\n");
}

TEST_CASE("front file validation") {
  std::istringstream dominated("1 1\n2 2\n");
  CHECK_THROWS_AS(read_front(dominated), std::runtime_error);
  std::istringstream dominated_raw("1 1\n2 2\n");
  CHECK(read_front(dominated_raw, true) == Front{{1, 1}});
  std::istringstream repeated("1 2\n\n1 2\n2 1\n");
  CHECK(read_front(repeated).size() == 2);
  std::istringstream ragged("1 2\n1 2 3\n");
  CHECK_THROWS_AS(read_front(ragged), std::runtime_error);
  std::istringstream text("1 x\n");
  CHECK_THROWS_AS(read_front(text), std::runtime_error);
  std::istringstream empty("");
  CHECK(read_front(empty).empty());
}
