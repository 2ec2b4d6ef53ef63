#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "erc/core_model.hpp"
#include "erc/solver.hpp"

namespace erc {

enum class Objective { decision, makespan };

std::optional<Objective> parse_objective(std::string_view text);
std::string to_string(Objective objective);

struct SuiteEntry {
  std::string id;
  std::optional<RcpspInstance> instance;
  std::string error;  // set when the instance could not be loaded
};

struct Suite {
  std::string name;
  Objective objective = Objective::decision;
  std::vector<SuiteEntry> entries;
};

/// Built-in suites, seeds first_seed .. first_seed + count - 1:
///   random10, random20  gen_random with n = 10 / 20, decision problems
///   opt20               gen_random with n = 20, makespan minimization
///   psp30, psp120       gen_rcpsp with 30 / 120 jobs, makespan minimization
/// Any other name is a path: a directory of .sm / .json files (sorted), or a
/// text file listing one instance path per line. Unreadable instances become
/// entries with an error.
Suite resolve_suite(std::string_view name, std::size_t count = 100, std::uint64_t first_seed = 1);

struct BenchOptions {
  std::optional<Objective> objective;  // overrides the suite default
  SearchLimits limits;
  unsigned jobs = 1;
};

/// One (instance, config) run. checker_us_per_node is the time spent in the
/// energetic checker divided by the node count.
struct BenchRow {
  std::string instance;
  std::string config;
  std::string result;
  std::uint64_t nodes = 0;
  double time_us = 0;
  double time_per_node_us = 0;
  std::uint64_t intervals_examined = 0;
  bool proved_optimal = false;
  double checker_us_per_node = 0;
};

std::vector<BenchRow> run_bench(const Suite& suite, const std::vector<PropagationConfig>& configs,
                                const BenchOptions& options = {});

/// instance,config,result,nodes,time_us,time_per_node_us,intervals_examined,proved_optimal,checker_us_per_node
void write_csv(std::ostream& os, const std::vector<BenchRow>& rows);
std::vector<BenchRow> read_csv(std::istream& is);

struct ConfigSummary {
  std::string config;
  std::size_t runs = 0;
  std::size_t proved = 0;
  std::uint64_t nodes = 0;
  double mean_time_per_node_us = 0;
  double median_time_per_node_us = 0;
  double median_checker_us_per_node = 0;
};

std::vector<ConfigSummary> summarize(const std::vector<BenchRow>& rows);

struct PairReduction {
  std::size_t pairs = 0;
  double mean_intervals = 0;
  std::size_t max_intervals = 0;
  double factor = 0;  // 15 / mean_intervals
};

/// Samples `pairs` ordered activity pairs (uniform instance, then uniform
/// activities) and counts their pair intervals.
PairReduction measure_pair_reduction(const std::vector<CuspInstance>& instances, std::size_t pairs,
                                     std::uint64_t seed);

/// "300s", "250ms", "5m", "1h" or a bare number of seconds.
std::optional<std::chrono::microseconds> parse_duration(std::string_view text);

/// ERC_TIME_LIMIT, when set and well formed.
std::optional<std::chrono::microseconds> time_limit_from_env();

double median(std::vector<double> values);

}  // namespace erc
