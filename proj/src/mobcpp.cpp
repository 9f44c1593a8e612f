#include "mop3/mobcpp.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "mop3/rng.hpp"

namespace mop3 {

std::size_t MobcppInstance::total_resources() const noexcept {
  std::size_t total = 0;
  for (const auto& h : halls) total += h.resources;
  return total;
}

void MobcppInstance::validate() const {
  if (halls.empty()) throw std::invalid_argument("instance has no halls");
  if (orders.empty()) throw std::invalid_argument("instance has no commodities");
  if (recipes.empty()) throw std::invalid_argument("instance has no recipes");
  for (const auto& h : halls) {
    if (h.resources == 0) throw std::invalid_argument("every hall needs at least one resource");
    for (std::size_t c : h.commodities) {
      if (c >= orders.size()) throw std::invalid_argument("hall lists an unknown commodity");
    }
  }
  for (auto o : orders) {
    if (o <= 0) throw std::invalid_argument("ordered amounts must be positive");
  }
  std::vector<bool> producible(orders.size(), false);
  for (const auto& r : recipes) {
    if (r.time <= 0) throw std::invalid_argument("recipe execution times must be positive");
    if (r.hall >= halls.size()) throw std::invalid_argument("recipe refers to an unknown hall");
    if (r.yields.empty()) throw std::invalid_argument("recipe yields nothing");
    const auto& allowed = halls[r.hall].commodities;
    for (const auto& y : r.yields) {
      if (y.commodity >= orders.size()) throw std::invalid_argument("recipe yields an unknown commodity");
      if (y.amount <= 0) throw std::invalid_argument("recipe yields must be positive");
      if (std::find(allowed.begin(), allowed.end(), y.commodity) == allowed.end()) {
        throw std::invalid_argument("recipe yields a commodity its hall cannot produce");
      }
      producible[y.commodity] = true;
    }
  }
  if (std::find(producible.begin(), producible.end(), false) != producible.end()) {
    throw std::invalid_argument("an ordered commodity has no recipe");
  }
}

std::size_t max_job_count(const MobcppInstance& instance, std::size_t recipe) {
  const Recipe& r = instance.recipes.at(recipe);
  if (r.yields.empty()) throw std::invalid_argument("recipe yields nothing");
  std::int64_t jobs = 0;
  for (const auto& y : r.yields) {
    if (y.amount <= 0) throw std::invalid_argument("recipe yields must be positive");
    const std::int64_t order = instance.orders.at(y.commodity);
    jobs = std::max(jobs, (order + y.amount - 1) / y.amount);
  }
  return static_cast<std::size_t>(jobs);
}

EncodingLayout mobcpp_layout(const MobcppInstance& instance) {
  std::vector<EncodingGroup> groups;
  groups.reserve(instance.recipes.size());
  for (std::size_t r = 0; r < instance.recipes.size(); ++r) {
    const auto& yields = instance.recipes[r].yields;
    if (yields.empty()) throw std::invalid_argument("recipe yields nothing");
    std::size_t anchor = yields.front().commodity;
    for (const auto& y : yields) anchor = std::min(anchor, y.commodity);
    groups.push_back(EncodingGroup{r, anchor, 0, max_job_count(instance, r)});
  }
  std::stable_sort(groups.begin(), groups.end(), [](const EncodingGroup& a, const EncodingGroup& b) {
    return a.anchor != b.anchor ? a.anchor < b.anchor : a.recipe < b.recipe;
  });

  EncodingLayout layout;
  for (auto& group : groups) {
    group.offset = layout.total_bits;
    layout.total_bits += group.count;
    layout.gene_recipe.insert(layout.gene_recipe.end(), group.count, group.recipe);
  }
  layout.groups = std::move(groups);
  return layout;
}

std::vector<std::int64_t> mobcpp_production(const MobcppInstance& instance,
                                            const EncodingLayout& layout, const Genotype& g) {
  if (g.size() != layout.total_bits) throw std::invalid_argument("genotype length differs from layout");
  std::vector<std::int64_t> produced(instance.orders.size(), 0);
  for (std::size_t gene = 0; gene < g.size(); ++gene) {
    if (!g[gene]) continue;
    for (const auto& y : instance.recipes[layout.gene_recipe[gene]].yields) produced[y.commodity] += y.amount;
  }
  return produced;
}

Genotype mobcpp_repair(const MobcppInstance& instance, const EncodingLayout& layout, Genotype g) {
  std::vector<std::int64_t> planned = mobcpp_production(instance, layout, g);
  // Passes repeat until one changes nothing.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t gene = 0; gene < g.size(); ++gene) {
      const auto& yields = instance.recipes[layout.gene_recipe[gene]].yields;
      int decision = -1;
      for (const auto& y : yields) {
        const std::int64_t to_do = instance.orders[y.commodity];
        const std::int64_t plan = planned[y.commodity];
        if (to_do > plan) decision = 1;
        if (to_do > plan - y.amount && decision == -1) decision = 0;
      }
      const bool was_on = g[gene] == 1;
      if (decision == 1 && !was_on) {
        g.set(gene, true);
        for (const auto& y : yields) planned[y.commodity] += y.amount;
        changed = true;
      } else if (decision == -1 && was_on) {
        g.set(gene, false);
        for (const auto& y : yields) planned[y.commodity] -= y.amount;
        changed = true;
      }
    }
  }
  return g;
}

std::int64_t mobcpp_makespan(const MobcppInstance& instance, const EncodingLayout& layout,
                             const Genotype& g) {
  struct Job {
    std::int64_t time;
    std::size_t recipe;
    std::size_t gene;
  };
  std::vector<std::vector<Job>> per_hall(instance.halls.size());
  for (std::size_t gene = 0; gene < g.size(); ++gene) {
    if (!g[gene]) continue;
    const std::size_t r = layout.gene_recipe[gene];
    per_hall[instance.recipes[r].hall].push_back(Job{instance.recipes[r].time, r, gene});
  }

  std::int64_t makespan = 0;
  std::vector<std::int64_t> loads;
  for (std::size_t h = 0; h < per_hall.size(); ++h) {
    auto& jobs = per_hall[h];
    std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
      if (a.time != b.time) return a.time > b.time;
      if (a.recipe != b.recipe) return a.recipe < b.recipe;
      return a.gene < b.gene;
    });
    loads.assign(instance.halls[h].resources, 0);
    for (const Job& job : jobs) {
      auto least = std::min_element(loads.begin(), loads.end());
      *least += job.time;
    }
    for (auto load : loads) makespan = std::max(makespan, load);
  }
  return makespan;
}

ObjectiveVector mobcpp_evaluate(const MobcppInstance& instance, const EncodingLayout& layout,
                                const Genotype& g, bool per_commodity_surplus) {
  const Genotype repaired = mobcpp_repair(instance, layout, g);
  const auto produced = mobcpp_production(instance, layout, repaired);
  std::vector<double> objectives{static_cast<double>(mobcpp_makespan(instance, layout, repaired))};
  if (per_commodity_surplus) {
    for (std::size_t j = 0; j < produced.size(); ++j) {
      objectives.push_back(static_cast<double>(produced[j] - instance.orders[j]));
    }
  } else {
    std::int64_t surplus = 0;
    for (std::size_t j = 0; j < produced.size(); ++j) surplus += produced[j] - instance.orders[j];
    objectives.push_back(static_cast<double>(surplus));
  }
  return ObjectiveVector(std::move(objectives));
}

MobcppProblem::MobcppProblem(MobcppInstance instance, bool per_commodity_surplus)
    : instance_(std::move(instance)), per_commodity_surplus_(per_commodity_surplus) {
  instance_.validate();
  layout_ = mobcpp_layout(instance_);
}

std::size_t MobcppProblem::objective_count() const {
  return per_commodity_surplus_ ? 1 + instance_.commodity_count() : 2;
}

ObjectiveVector MobcppProblem::evaluate(const Genotype& g) const {
  return mobcpp_evaluate(instance_, layout_, g, per_commodity_surplus_);
}

MobcppInstance generate_mobcpp_instance(const MobcppGeneratorParams& p, std::uint64_t seed) {
  if (p.halls < 1 || p.halls > 12) throw std::invalid_argument("hall count must be in [1, 12]");
  const std::size_t resources = p.halls * p.resources_per_hall;
  if (p.resources_per_hall == 0 || resources < 2 || resources > 24) {
    throw std::invalid_argument("total resource count must be in [2, 24]");
  }
  if (p.commodities < 6 || p.commodities > 72) throw std::invalid_argument("commodity count must be in [6, 72]");
  if (p.recipes < 12 || p.recipes > 144) throw std::invalid_argument("recipe count must be in [12, 144]");
  if (p.recipes < p.commodities) throw std::invalid_argument("fewer recipes than commodities leaves orders unproducible");
  if (p.commodities < p.halls) throw std::invalid_argument("every hall needs at least one commodity");
  if (p.order_min <= 0 || p.order_min > p.order_max || p.yield_min <= 0 || p.yield_min > p.yield_max ||
      p.time_min <= 0 || p.time_min > p.time_max) {
    throw std::invalid_argument("generator ranges must be positive and non-empty");
  }

  Rng rng(seed);
  const auto draw = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
  };

  MobcppInstance instance;
  std::vector<std::size_t> hall_of(p.commodities);
  for (std::size_t h = 0; h < p.halls; ++h) {
    Hall hall;
    hall.resources = p.resources_per_hall;
    const std::size_t begin = h * p.commodities / p.halls;
    const std::size_t end = (h + 1) * p.commodities / p.halls;
    for (std::size_t c = begin; c < end; ++c) {
      hall.commodities.push_back(c);
      hall_of[c] = h;
    }
    instance.halls.push_back(std::move(hall));
  }
  for (std::size_t c = 0; c < p.commodities; ++c) instance.orders.push_back(draw(p.order_min, p.order_max));

  // One recipe per commodity first, the rest for random commodities; then shuffle recipe indexes.
  std::vector<std::size_t> primary(p.recipes);
  for (std::size_t r = 0; r < p.recipes; ++r) {
    primary[r] = r < p.commodities ? r : static_cast<std::size_t>(rng.below(p.commodities));
  }
  rng.shuffle(std::span<std::size_t>(primary));

  for (std::size_t commodity : primary) {
    Recipe recipe;
    recipe.hall = hall_of[commodity];
    recipe.time = draw(p.time_min, p.time_max);
    recipe.yields.push_back(CommodityYield{commodity, draw(p.yield_min, p.yield_max)});
    const auto& local = instance.halls[recipe.hall].commodities;
    if (local.size() > 1 && rng.bernoulli(p.multi_commodity_probability)) {
      std::size_t other = commodity;
      while (other == commodity) other = local[rng.below(local.size())];
      recipe.yields.push_back(CommodityYield{other, draw(p.yield_min, p.yield_max)});
    }
    instance.recipes.push_back(std::move(recipe));
  }
  instance.validate();
  return instance;
}

MobcppInstance read_mobcpp(std::istream& in) {
  using nlohmann::json;
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed MOBCPP instance: ") + e.what());
  }
  MobcppInstance instance;
  try {
    for (const auto& h : doc.at("halls")) {
      instance.halls.push_back(Hall{h.at("resources").get<std::size_t>(),
                                    h.at("commodities").get<std::vector<std::size_t>>()});
    }
    for (const auto& c : doc.at("commodities")) instance.orders.push_back(c.at("order").get<std::int64_t>());
    for (const auto& r : doc.at("recipes")) {
      Recipe recipe;
      recipe.time = r.at("time").get<std::int64_t>();
      recipe.hall = r.at("hall").get<std::size_t>();
      for (const auto& y : r.at("yields")) {
        recipe.yields.push_back(CommodityYield{y.at("commodity").get<std::size_t>(), y.at("amount").get<std::int64_t>()});
      }
      instance.recipes.push_back(std::move(recipe));
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("invalid MOBCPP instance: ") + e.what());
  }
  instance.validate();
  return instance;
}

void write_mobcpp(std::ostream& out, const MobcppInstance& instance) {
  using nlohmann::json;
  json doc;
  doc["halls"] = json::array();
  for (const auto& h : instance.halls) {
    doc["halls"].push_back({{"resources", h.resources}, {"commodities", h.commodities}});
  }
  doc["commodities"] = json::array();
  for (auto o : instance.orders) doc["commodities"].push_back({{"order", o}});
  doc["recipes"] = json::array();
  for (const auto& r : instance.recipes) {
    json yields = json::array();
    for (const auto& y : r.yields) yields.push_back({{"commodity", y.commodity}, {"amount", y.amount}});
    doc["recipes"].push_back({{"time", r.time}, {"hall", r.hall}, {"yields", yields}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace mop3
