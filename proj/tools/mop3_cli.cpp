// Command-line front end: run experiments, size grids, instance generation and front metrics.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mop3/benchmarks.hpp"
#include "mop3/experiment.hpp"
#include "mop3/metrics.hpp"
#include "mop3/mobcpp.hpp"

namespace {

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

struct RunOptions {
  std::string methods = "mo-p3-random";
  std::string problem;
  std::size_t size = 0;
  std::string instance;
  std::uint64_t instance_seed = 1;
  std::uint64_t budget = 1'000'000;
  std::size_t repeats = 1;
  std::uint64_t seed = 0;
  std::string out = "results";
  std::string reference = "auto";
  std::string epsilon;
  std::size_t jobs = 1;
  bool no_wall_time = false;
  std::size_t population = 400;
  std::size_t subproblems = 400;
  std::size_t neighborhood = 20;
};

void add_run_options(CLI::App& cmd, RunOptions& o) {
  cmd.add_option("--method", o.methods, "Comma-separated: mo-p3-random, mo-p3-smart, nsga2, moead");
  cmd.add_option("--problem", o.problem, "zeromax-onemax, trap5, lotz, maxcut, knapsack or mobcpp")->required();
  cmd.add_option("--size", o.size, "Genotype length (generated instances: vertices or items)");
  cmd.add_option("--instance", o.instance, "Instance file (maxcut, knapsack, mobcpp)");
  cmd.add_option("--instance-seed", o.instance_seed, "Seed for generated maxcut/knapsack instances");
  cmd.add_option("--budget", o.budget, "Fitness evaluations per run")->check(CLI::PositiveNumber);
  cmd.add_option("--repeats", o.repeats, "Runs per method")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", o.seed, "Seed of the first run");
  cmd.add_option("--out", o.out, "Output directory");
  cmd.add_option("--reference", o.reference, "Reference front file, or auto");
  cmd.add_option("--epsilon", o.epsilon, "Archive grid per objective, comma-separated");
  cmd.add_option("--jobs", o.jobs, "Parallel runs")->check(CLI::PositiveNumber);
  cmd.add_flag("--no-wall-time", o.no_wall_time, "Write wall times as 0 for reproducible output");
  cmd.add_option("--population", o.population, "NSGA-II population size");
  cmd.add_option("--subproblems", o.subproblems, "MOEA/D subproblem count");
  cmd.add_option("--neighborhood", o.neighborhood, "MOEA/D neighborhood size");
}

mop3::ExperimentConfig make_config(const RunOptions& o) {
  mop3::ExperimentConfig config;
  for (const auto& m : split(o.methods)) config.methods.push_back(mop3::parse_method(m));
  config.problem.name = o.problem;
  config.problem.size = o.size;
  if (!o.instance.empty()) config.problem.instance = o.instance;
  config.problem.instance_seed = o.instance_seed;
  config.budget = o.budget;
  config.repeats = o.repeats;
  config.seed = o.seed;
  config.out = o.out;
  config.reference = o.reference;
  for (const auto& e : split(o.epsilon)) config.epsilon.push_back(std::stod(e));
  config.jobs = o.jobs;
  config.record_wall_time = !o.no_wall_time;
  config.nsga2.population_size = o.population;
  config.moead.subproblems = o.subproblems;
  config.moead.neighborhood = o.neighborhood;
  return config;
}

void print_summary(const std::vector<mop3::RunRecord>& records) {
  for (const auto& row : mop3::summarize(records)) {
    std::cout << row.method << " " << row.problem << " l=" << row.length << " runs=" << row.repeats
              << " median_igd=" << row.median_igd << " iqr_igd=" << row.iqr_igd
              << " median_ffe_final=" << row.median_ffe_final << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MO-P3 experiments on binary multi-objective problems"};
  app.require_subcommand(1);

  RunOptions run_options;
  auto* run = app.add_subcommand("run", "Run methods on one problem and write fronts and summaries");
  add_run_options(*run, run_options);

  RunOptions grid_options;
  std::string sizes;
  auto* grid = app.add_subcommand("grid", "Run over several genotype lengths and emit plot series");
  add_run_options(*grid, grid_options);
  grid->add_option("--sizes", sizes, "Comma-separated genotype lengths")->required();

  std::string gen_problem;
  std::string gen_out;
  std::uint64_t gen_seed = 1;
  std::size_t gen_size = 12;
  double gen_density = 0.5;
  mop3::MobcppGeneratorParams mob;
  auto* generate = app.add_subcommand("generate", "Write a random instance file");
  generate->add_option("--problem", gen_problem, "maxcut, knapsack or mobcpp")->required();
  generate->add_option("--out", gen_out, "Output file")->required();
  generate->add_option("--seed", gen_seed, "Generator seed");
  generate->add_option("--size", gen_size, "Vertices (maxcut) or items (knapsack)");
  generate->add_option("--density", gen_density, "Edge density (maxcut)");
  generate->add_option("--halls", mob.halls, "Halls (mobcpp)");
  generate->add_option("--resources", mob.resources_per_hall, "Resources per hall (mobcpp)");
  generate->add_option("--commodities", mob.commodities, "Commodities (mobcpp)");
  generate->add_option("--recipes", mob.recipes, "Recipes (mobcpp)");
  generate->add_option("--multi-commodity", mob.multi_commodity_probability,
                       "Chance that a recipe yields two commodities (mobcpp)");

  std::string front_file;
  std::string reference_file;
  bool raw = false;
  auto* metric = app.add_subcommand("igd", "IGD and GD of a front file against a reference file");
  metric->add_option("--front", front_file, "Front file")->required();
  metric->add_option("--reference", reference_file, "Reference front file")->required();
  metric->add_flag("--raw", raw, "Accept dominated lines and filter them");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto result = mop3::run_experiment(make_config(run_options));
      std::cout << "reference: " << result.reference_source << " (" << result.reference.size()
                << " points)\n";
      print_summary(result.records);
    } else if (*grid) {
      std::vector<mop3::RunRecord> all;
      for (const auto& s : split(sizes)) {
        RunOptions o = grid_options;
        o.size = std::stoul(s);
        o.out = (std::filesystem::path(grid_options.out) / ("l_" + s)).string();
        auto result = mop3::run_experiment(make_config(o));
        all.insert(all.end(), result.records.begin(), result.records.end());
      }
      mop3::emit_plot_data(all, grid_options.out);
      print_summary(all);
    } else if (*generate) {
      std::ofstream out(gen_out);
      if (!out) throw std::runtime_error("cannot write " + gen_out);
      if (gen_problem == "maxcut") {
        mop3::MaxcutGeneratorParams params;
        params.vertices = gen_size;
        params.density = gen_density;
        mop3::write_maxcut(out, mop3::generate_maxcut(params, gen_seed));
      } else if (gen_problem == "knapsack") {
        mop3::KnapsackGeneratorParams params;
        params.items = gen_size;
        mop3::write_knapsack(out, mop3::generate_knapsack(params, gen_seed));
      } else if (gen_problem == "mobcpp") {
        const auto instance = mop3::generate_mobcpp_instance(mob, gen_seed);
        mop3::write_mobcpp(out, instance);
        std::cout << "genotype length " << mop3::mobcpp_layout(instance).total_bits << '\n';
      } else {
        throw std::invalid_argument("cannot generate instances for " + gen_problem);
      }
    } else if (*metric) {
      const auto front = mop3::read_front(std::filesystem::path(front_file), raw);
      const auto reference = mop3::read_front(std::filesystem::path(reference_file), raw);
      std::cout << "igd " << mop3::igd(front, reference) << "\ngd " << mop3::gd(front, reference) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
