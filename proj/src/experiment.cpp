#include "mop3/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mop3/benchmarks.hpp"
#include "mop3/mo_p3.hpp"
#include "mop3/mobcpp.hpp"

namespace mop3 {

std::string_view method_id(Method m) {
  switch (m) {
    case Method::mo_p3_random: return "mo-p3-random";
    case Method::mo_p3_smart: return "mo-p3-smart";
    case Method::nsga2: return "nsga2";
    case Method::moead: return "moead";
  }
  throw std::invalid_argument("unknown method");
}

Method parse_method(std::string_view id) {
  for (Method m : {Method::mo_p3_random, Method::mo_p3_smart, Method::nsga2, Method::moead}) {
    if (method_id(m) == id) return m;
  }
  throw std::invalid_argument("unknown method: " + std::string(id));
}

namespace {

std::ifstream open_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read instance " + path.string());
  return in;
}

std::string format_number(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v == 0.0 ? 0.0 : v);
  return buffer;
}

}  // namespace

std::unique_ptr<Problem> make_problem(const ProblemSpec& spec) {
  const auto need_size = [&]() {
    if (spec.size == 0) throw std::invalid_argument(spec.name + " needs a positive size");
    return spec.size;
  };
  if (spec.name == "zeromax-onemax") return std::make_unique<ZeromaxOnemax>(need_size());
  if (spec.name == "trap5") return std::make_unique<Trap5InvTrap5>(need_size());
  if (spec.name == "lotz") return std::make_unique<Lotz>(need_size());
  if (spec.name == "maxcut") {
    if (spec.instance) {
      auto in = open_instance(*spec.instance);
      return std::make_unique<Maxcut>(read_maxcut(in));
    }
    MaxcutGeneratorParams params;
    params.vertices = need_size();
    return std::make_unique<Maxcut>(generate_maxcut(params, spec.instance_seed));
  }
  if (spec.name == "knapsack") {
    if (spec.instance) {
      auto in = open_instance(*spec.instance);
      return std::make_unique<Knapsack>(read_knapsack(in));
    }
    KnapsackGeneratorParams params;
    params.items = need_size();
    return std::make_unique<Knapsack>(generate_knapsack(params, spec.instance_seed));
  }
  if (spec.name == "mobcpp") {
    if (!spec.instance) throw std::invalid_argument("mobcpp needs an instance file");
    auto in = open_instance(*spec.instance);
    return std::make_unique<MobcppProblem>(read_mobcpp(in));
  }
  throw std::invalid_argument("unknown problem: " + spec.name);
}

void ExperimentConfig::validate() const {
  if (methods.empty()) throw std::invalid_argument("at least one method is required");
  if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  if (budget < 1) throw std::invalid_argument("budget must be at least 1");
  if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  for (double e : epsilon) {
    if (e < 0.0) throw std::invalid_argument("epsilon values must be non-negative");
  }
  nsga2.validate();
  moead.validate();
}

RunRecord run_single(const Problem& problem, Method method, const ExperimentConfig& config,
                     std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  switch (method) {
    case Method::mo_p3_random:
    case Method::mo_p3_smart: {
      MoP3Options options;
      options.epsilon = config.epsilon;
      const auto strategy = method == Method::mo_p3_smart ? WeightStrategy::smart : WeightStrategy::random;
      result = run_mo_p3(problem, config.budget, strategy, seed, options);
      break;
    }
    case Method::nsga2:
      result = run_nsga2(problem, config.nsga2, config.budget, seed);
      break;
    case Method::moead:
      result = run_moead(problem, config.moead, config.budget, seed);
      break;
  }
  const auto stop = std::chrono::steady_clock::now();

  RunRecord record;
  record.method = method;
  record.problem = problem.name();
  record.length = problem.genotype_length();
  record.seed = seed;
  std::vector<ObjectiveVector> points;
  for (const auto& s : result.front) points.push_back(s.objectives);
  record.front = Front(points);
  record.solutions = std::move(result.front);
  record.ffe_final = result.ffe_final;
  record.ffe_used = result.ffe_used;
  record.wall_ms = config.record_wall_time
                       ? std::chrono::duration<double, std::milli>(stop - start).count()
                       : 0.0;
  return record;
}

std::pair<Front, std::string> automatic_reference(const Problem& problem,
                                                  std::span<const RunRecord> records) {
  if (auto analytic = problem.analytic_front()) return {Front(*analytic), "analytic"};
  if (problem.genotype_length() <= 25) return {Front(brute_force_front(problem)), "enumeration"};
  std::vector<Front> fronts;
  for (const auto& r : records) fronts.push_back(r.front);
  if (fronts.empty()) throw std::invalid_argument("no runs to merge into a reference front");
  return {merge_pseudo_optimal(fronts), "merged"};
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto problem = make_problem(config.problem);

  struct Task {
    Method method;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (Method m : config.methods) {
    for (std::size_t r = 0; r < config.repeats; ++r) tasks.push_back(Task{m, config.seed + r});
  }

  ExperimentResult result;
  result.records.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&]() {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        result.records[i] = run_single(*problem, tasks[i].method, config, tasks[i].seed);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(config.jobs, tasks.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  if (config.reference == "auto") {
    std::tie(result.reference, result.reference_source) = automatic_reference(*problem, result.records);
  } else {
    result.reference = read_front(std::filesystem::path(config.reference));
    result.reference_source = "file";
  }
  for (auto& r : result.records) r.igd = igd(r.front, result.reference);

  std::filesystem::create_directories(config.out);
  for (const auto& r : result.records) {
    std::ostringstream name;
    name << "front_" << method_id(r.method) << '_' << r.seed << ".txt";
    write_front(config.out / name.str(), r.front);
  }
  write_front(config.out / "reference.txt", result.reference);
  write_runs_csv(config.out / "runs.csv", result.records);
  const auto rows = summarize(result.records);
  write_summary_csv(config.out / "summary.csv", rows);
  return result;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double interquartile_range(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("interquartile range of an empty sample");
  std::sort(values.begin(), values.end());
  return quantile(values, 0.75) - quantile(values, 0.25);
}

std::vector<SummaryRow> summarize(std::span<const RunRecord> records) {
  // Rows follow the order in which methods first appear.
  std::vector<std::pair<std::string, std::vector<const RunRecord*>>> groups;
  for (const auto& r : records) {
    const std::string key = std::string(method_id(r.method)) + '\n' + r.problem + '\n' + std::to_string(r.length);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == key; });
    if (it == groups.end()) {
      groups.emplace_back(key, std::vector<const RunRecord*>{});
      it = std::prev(groups.end());
    }
    it->second.push_back(&r);
  }
  std::vector<SummaryRow> rows;
  for (const auto& [key, members] : groups) {
    std::vector<double> igds;
    std::vector<double> ffes;
    std::vector<double> walls;
    for (const RunRecord* r : members) {
      igds.push_back(r->igd);
      ffes.push_back(static_cast<double>(r->ffe_final));
      walls.push_back(r->wall_ms);
    }
    SummaryRow row;
    row.method = std::string(method_id(members.front()->method));
    row.problem = members.front()->problem;
    row.length = members.front()->length;
    row.repeats = members.size();
    row.median_igd = median(igds);
    row.iqr_igd = interquartile_range(igds);
    row.median_ffe_final = median(ffes);
    row.median_wall_ms = median(walls);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::ofstream create(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path, std::string_view header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw std::runtime_error(path.string() + ": unexpected header");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

constexpr std::string_view kRunsHeader = "method,problem,l,seed,igd,ffe_final,ffe_used,wall_ms";
constexpr std::string_view kSummaryHeader =
    "method,problem,l,repeats,median_igd,iqr_igd,median_ffe_final,median_wall_ms";

}  // namespace

void write_runs_csv(const std::filesystem::path& path, std::span<const RunRecord> records) {
  auto out = create(path);
  out << kRunsHeader << '\n';
  for (const auto& r : records) {
    out << method_id(r.method) << ',' << r.problem << ',' << r.length << ',' << r.seed << ','
        << format_number(r.igd) << ',' << r.ffe_final << ',' << r.ffe_used << ','
        << format_number(r.wall_ms) << '\n';
  }
}

void write_summary_csv(const std::filesystem::path& path, std::span<const SummaryRow> rows) {
  auto out = create(path);
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.method << ',' << r.problem << ',' << r.length << ',' << r.repeats << ','
        << format_number(r.median_igd) << ',' << format_number(r.iqr_igd) << ','
        << format_number(r.median_ffe_final) << ',' << format_number(r.median_wall_ms) << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path) {
  std::vector<SummaryRow> rows;
  for (const auto& f : read_csv(path, kSummaryHeader)) {
    if (f.size() != 8) throw std::runtime_error(path.string() + ": malformed row");
    rows.push_back(SummaryRow{f[0], f[1], std::stoul(f[2]), std::stoul(f[3]), std::stod(f[4]),
                              std::stod(f[5]), std::stod(f[6]), std::stod(f[7])});
  }
  return rows;
}

std::vector<RunRecord> read_runs_csv(const std::filesystem::path& path) {
  std::vector<RunRecord> records;
  for (const auto& f : read_csv(path, kRunsHeader)) {
    if (f.size() != 8) throw std::runtime_error(path.string() + ": malformed row");
    RunRecord r;
    r.method = parse_method(f[0]);
    r.problem = f[1];
    r.length = std::stoul(f[2]);
    r.seed = std::stoull(f[3]);
    r.igd = std::stod(f[4]);
    r.ffe_final = std::stoull(f[5]);
    r.ffe_used = std::stoull(f[6]);
    r.wall_ms = std::stod(f[7]);
    records.push_back(std::move(r));
  }
  return records;
}

void emit_plot_data(std::span<const RunRecord> records, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  // method -> length -> runs
  std::map<std::string, std::map<std::size_t, std::vector<const RunRecord*>>> series;
  for (const auto& r : records) series[std::string(method_id(r.method))][r.length].push_back(&r);

  std::map<std::string, std::map<std::size_t, double>> median_ffe;
  for (const auto& [method, by_length] : series) {
    auto out = create(dir / ("series_" + method + ".csv"));
    out << "x,runs,median_igd,median_ffe_final\n";
    for (const auto& [length, runs] : by_length) {
      std::vector<double> igds;
      std::vector<double> ffes;
      for (const RunRecord* r : runs) {
        igds.push_back(r->igd);
        ffes.push_back(static_cast<double>(r->ffe_final));
      }
      const double ffe = median(ffes);
      median_ffe[method][length] = ffe;
      out << length << ',' << runs.size() << ',' << format_number(median(igds)) << ','
          << format_number(ffe) << '\n';
    }
  }

  const auto random = median_ffe.find("mo-p3-random");
  const auto smart = median_ffe.find("mo-p3-smart");
  if (random == median_ffe.end() || smart == median_ffe.end()) return;
  auto out = create(dir / "ffe_ratio.csv");
  out << "x,random_median_ffe_final,smart_median_ffe_final,ratio\n";
  for (const auto& [length, r_ffe] : random->second) {
    const auto s = smart->second.find(length);
    if (s == smart->second.end()) continue;
    const double ratio = s->second > 0.0 ? r_ffe / s->second : std::nan("");
    out << length << ',' << format_number(r_ffe) << ',' << format_number(s->second) << ','
        << format_number(ratio) << '\n';
  }
}

}  // namespace mop3
