#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mop3/core.hpp"

namespace mop3 {

/// Bulk commodity production planning: choose how many times to run each recipe so that every
/// order is covered, minimizing makespan and production surplus.

struct Hall {
  std::size_t resources = 1;
  std::vector<std::size_t> commodities;  // commodities this hall can produce
};

struct CommodityYield {
  std::size_t commodity = 0;
  std::int64_t amount = 0;
};

struct Recipe {
  std::int64_t time = 1;
  std::size_t hall = 0;
  std::vector<CommodityYield> yields;
};

struct MobcppInstance {
  std::vector<Hall> halls;
  std::vector<std::int64_t> orders;  // ordered amount per commodity
  std::vector<Recipe> recipes;

  std::size_t commodity_count() const noexcept { return orders.size(); }
  std::size_t total_resources() const noexcept;

  /// Throws std::invalid_argument on any broken structural constraint.
  void validate() const;
};

/// Bit range of one recipe inside the genotype.
struct EncodingGroup {
  std::size_t recipe = 0;
  std::size_t anchor = 0;  // lowest commodity index the recipe yields
  std::size_t offset = 0;
  std::size_t count = 0;   // maximum useful job count for the recipe
};

struct EncodingLayout {
  std::vector<EncodingGroup> groups;  // ordered by anchor commodity, then recipe index
  std::vector<std::size_t> gene_recipe;
  std::size_t total_bits = 0;
};

/// Maximum useful number of jobs for a recipe: max over the commodities it yields of
/// ceil(order / yield).
std::size_t max_job_count(const MobcppInstance& instance, std::size_t recipe);

EncodingLayout mobcpp_layout(const MobcppInstance& instance);

/// Amount of every commodity produced by the selected jobs.
std::vector<std::int64_t> mobcpp_production(const MobcppInstance& instance,
                                            const EncodingLayout& layout, const Genotype& g);

/// Left-to-right passes: a job is switched on while one of its orders is under-produced,
/// switched off when every order it serves stays covered without it, and left alone otherwise.
/// With single-commodity recipes the first pass is final; otherwise passes repeat until nothing
/// changes, so no selected job can be dropped without breaking an order.
Genotype mobcpp_repair(const MobcppInstance& instance, const EncodingLayout& layout, Genotype g);

/// Longest-processing-time-first assignment of the selected jobs onto the least loaded resource
/// of each job's hall. Returns the maximum resource completion time.
std::int64_t mobcpp_makespan(const MobcppInstance& instance, const EncodingLayout& layout,
                             const Genotype& g);

/// (makespan, total surplus) of the repaired genotype; optionally (makespan, surplus per commodity).
ObjectiveVector mobcpp_evaluate(const MobcppInstance& instance, const EncodingLayout& layout,
                                const Genotype& g, bool per_commodity_surplus = false);

class MobcppProblem final : public Problem {
 public:
  explicit MobcppProblem(MobcppInstance instance, bool per_commodity_surplus = false);
  std::string name() const override { return "mobcpp"; }
  std::size_t genotype_length() const override { return layout_.total_bits; }
  std::size_t objective_count() const override;
  ObjectiveVector evaluate(const Genotype& g) const override;

  const MobcppInstance& instance() const noexcept { return instance_; }
  const EncodingLayout& layout() const noexcept { return layout_; }

 private:
  MobcppInstance instance_;
  EncodingLayout layout_;
  bool per_commodity_surplus_;
};

struct MobcppGeneratorParams {
  std::size_t halls = 1;
  std::size_t resources_per_hall = 2;
  std::size_t commodities = 6;
  std::size_t recipes = 12;
  std::int64_t order_min = 20;
  std::int64_t order_max = 80;
  std::int64_t yield_min = 4;
  std::int64_t yield_max = 20;
  std::int64_t time_min = 1;
  std::int64_t time_max = 10;
  /// Chance that a recipe also yields a second commodity of its hall.
  double multi_commodity_probability = 0.0;
};

/// Deterministic random instance. Commodities are split across halls in contiguous blocks and every
/// commodity gets at least one recipe.
MobcppInstance generate_mobcpp_instance(const MobcppGeneratorParams& params, std::uint64_t seed);

/// JSON instance document; see docs/mobcpp_instance.md for the schema.
MobcppInstance read_mobcpp(std::istream& in);
void write_mobcpp(std::ostream& out, const MobcppInstance& instance);

}  // namespace mop3
