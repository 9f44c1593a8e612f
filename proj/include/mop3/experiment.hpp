#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mop3/baselines.hpp"
#include "mop3/core.hpp"
#include "mop3/metrics.hpp"

namespace mop3 {

enum class Method { mo_p3_random, mo_p3_smart, nsga2, moead };

std::string_view method_id(Method m);
/// Accepts mo-p3-random, mo-p3-smart, nsga2 and moead.
Method parse_method(std::string_view id);

/// Benchmark name plus either a genotype length or an instance file.
///
/// maxcut and knapsack without an instance file are generated from `size` and `instance_seed`;
/// mobcpp always needs an instance file.
struct ProblemSpec {
  std::string name;
  std::size_t size = 0;
  std::optional<std::filesystem::path> instance;
  std::uint64_t instance_seed = 1;
};

std::unique_ptr<Problem> make_problem(const ProblemSpec& spec);

struct ExperimentConfig {
  std::vector<Method> methods;
  ProblemSpec problem;
  std::uint64_t budget = 1'000'000;
  std::size_t repeats = 1;
  std::uint64_t seed = 0;
  std::filesystem::path out = "results";
  /// "auto" or a front file.
  std::string reference = "auto";
  std::vector<double> epsilon;
  /// Worker threads for independent repeats.
  std::size_t jobs = 1;
  /// When false, wall times are measured but written as 0 so output files are reproducible.
  bool record_wall_time = true;
  Nsga2Config nsga2;
  MoeadConfig moead;

  void validate() const;
};

struct RunRecord {
  Method method = Method::mo_p3_random;
  std::string problem;
  std::size_t length = 0;
  std::uint64_t seed = 0;
  std::vector<Solution> solutions;
  Front front;
  std::uint64_t ffe_final = 0;
  std::uint64_t ffe_used = 0;
  double igd = 0.0;
  double wall_ms = 0.0;
};

struct ExperimentResult {
  std::vector<RunRecord> records;
  Front reference;
  /// analytic, enumeration, merged or file.
  std::string reference_source;
};

/// One optimizer run without any file output.
RunRecord run_single(const Problem& problem, Method method, const ExperimentConfig& config,
                     std::uint64_t seed);

/// Runs every method for seeds seed..seed+repeats-1 and writes front_<method>_<seed>.txt,
/// reference.txt, runs.csv and summary.csv into `config.out`.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Reference front: analytic when the problem has one, enumeration up to 25 genes, otherwise the
/// non-dominated merge of the given runs.
std::pair<Front, std::string> automatic_reference(const Problem& problem,
                                                  std::span<const RunRecord> records);

struct SummaryRow {
  std::string method;
  std::string problem;
  std::size_t length = 0;
  std::size_t repeats = 0;
  double median_igd = 0.0;
  double iqr_igd = 0.0;
  double median_ffe_final = 0.0;
  double median_wall_ms = 0.0;
};

double median(std::vector<double> values);
/// Upper minus lower quartile, with linear interpolation between order statistics.
double interquartile_range(std::vector<double> values);

std::vector<SummaryRow> summarize(std::span<const RunRecord> records);

void write_runs_csv(const std::filesystem::path& path, std::span<const RunRecord> records);
void write_summary_csv(const std::filesystem::path& path, std::span<const SummaryRow> rows);
std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path);
/// Per-run rows of runs.csv: method, problem, l, seed, igd, ffe_final, ffe_used, wall_ms.
std::vector<RunRecord> read_runs_csv(const std::filesystem::path& path);

/// Writes series_<method>.csv (x = genotype length, median IGD, median FFE to final front) for
/// every method, plus ffe_ratio.csv when both MO-P3 variants are present.
void emit_plot_data(std::span<const RunRecord> records, const std::filesystem::path& dir);

}  // namespace mop3
