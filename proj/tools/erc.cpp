// Command-line front end: check, filter, intervals, solve, gen, bench, convert.
//
// Exit codes: 0 success (check: feasible), 1 check found an overload,
// 2 parse or usage error, 3 budget exhausted on a run that required
// completion.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "erc/bench.hpp"
#include "erc/checkers.hpp"
#include "erc/generator.hpp"
#include "erc/instance_io.hpp"
#include "erc/intervals.hpp"
#include "erc/solver.hpp"
#include "erc/timetable.hpp"

using namespace erc;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kParseError = 2;
constexpr int kBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RcpspInstance load(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    const std::string text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json_instance(text);
    return parse_psplib(text);
  }
  return read_instance_file(path);
}

json witness_json(const Witness& w) { return {{"t1", w.t1}, {"t2", w.t2}, {"slack", w.slack}}; }

int cmd_check(const std::string& file, const std::string& checker, bool no_mirror, const std::string& stats) {
  const auto kind = parse_checker_kind(checker);
  if (!kind || *kind == CheckerKind::none) throw UsageError("unknown checker '" + checker + "'");
  const RcpspInstance inst = load(file);
  CheckCounters counters;
  json out;
  out["checker"] = to_string(*kind);
  out["feasible"] = true;
  for (std::size_t r = 0; r < inst.resources.size(); ++r) {
    const CheckResult res = run_checker(inst.resource_view(r), *kind, &counters, !no_mirror);
    if (!res.feasible) {
      out["feasible"] = false;
      out["resource"] = r;
      out["witness"] = witness_json(*res.witness);
      break;
    }
  }
  const bool feasible = out["feasible"].get<bool>();
  if (stats == "json") {
    out["intervals_examined"] = counters.intervals_examined;
    out["events_processed"] = counters.events_processed;
    std::cout << out.dump() << "\n";
  } else {
    if (feasible) {
      std::cout << "feasible\n";
    } else {
      const auto& w = out["witness"];
      std::cout << "infeasible: resource " << out["resource"].get<std::size_t>() << ", interval ["
                << w["t1"].get<Time>() << ", " << w["t2"].get<Time>() << "), slack " << w["slack"].get<Energy>()
                << "\n";
    }
    std::cout << "intervals examined: " << counters.intervals_examined
              << ", events processed: " << counters.events_processed << "\n";
  }
  return feasible ? kOk : kInfeasible;
}

int cmd_filter(const std::string& file) {
  const RcpspInstance inst = load(file);
  json out = json::array();
  bool failed = false;
  for (std::size_t r = 0; r < inst.resources.size() && !failed; ++r) {
    const FilterResult res = tt_filter(inst.resource_view(r));
    json entry{{"resource", r}, {"failed", res.failed}};
    if (res.wiped_out) entry["wiped_out"] = *res.wiped_out;
    json ups = json::array();
    for (const auto& u : res.updates) {
      json j{{"activity", u.activity}};
      if (u.new_s_min) j["s_min"] = *u.new_s_min;
      if (u.new_s_max) j["s_max"] = *u.new_s_max;
      ups.push_back(j);
    }
    entry["updates"] = ups;
    out.push_back(entry);
    failed = res.failed;
  }
  std::cout << out.dump(2) << "\n";
  return failed ? kInfeasible : kOk;
}

int cmd_intervals(const std::string& file, const std::vector<std::size_t>& pair, const std::string& family,
                  bool printed_row_e) {
  const RcpspInstance inst = load(file);
  const CuspInstance view = inst.resource_view(0);
  const RowEEndpoint row_e = printed_row_e ? RowEEndpoint::as_printed : RowEEndpoint::corrected;
  if (!pair.empty()) {
    if (pair.size() != 2 || pair[0] >= view.size() || pair[1] >= view.size())
      throw UsageError("--pair needs two activity indices below " + std::to_string(view.size()));
    std::cout << "row,t1,t2\n";
    for (const auto& p : pair_intervals(view.activities[pair[0]], view.activities[pair[1]], row_e))
      std::cout << to_char(p.row) << ',' << p.interval.t1 << ',' << p.interval.t2 << "\n";
    return kOk;
  }
  IntervalFamily f;
  if (family == "baptiste")
    f = baptiste_intervals(view);
  else if (family == "table1")
    f = table1_intervals(view, row_e);
  else
    throw UsageError("unknown family '" + family + "'");
  std::cout << "t1,t2,provenance\n";
  for (const auto& iv : f.intervals) std::cout << iv.t1 << ',' << iv.t2 << ',' << to_string(f.provenance) << "\n";
  return kOk;
}

SearchLimits limits_from(const std::string& time_limit, std::optional<std::uint64_t> node_limit) {
  SearchLimits limits;
  limits.node_limit = node_limit;
  if (!time_limit.empty()) {
    limits.time_limit = parse_duration(time_limit);
    if (!limits.time_limit) throw UsageError("bad duration '" + time_limit + "'");
  }
  if (auto env = time_limit_from_env()) limits.time_limit = env;
  return limits;
}

int cmd_solve(const std::string& file, const std::string& config_name, const std::string& objective_name,
              const std::string& time_limit, std::optional<std::uint64_t> node_limit, bool require_complete) {
  const auto config = parse_config(config_name);
  if (!config) throw UsageError("unknown config '" + config_name + "'");
  const auto objective = parse_objective(objective_name);
  if (!objective) throw UsageError("unknown objective '" + objective_name + "'");
  const RcpspInstance inst = load(file);
  const SearchLimits limits = limits_from(time_limit, node_limit);

  json out;
  SearchStats stats;
  std::optional<std::vector<Time>> schedule;
  if (*objective == Objective::decision) {
    const DecisionResult r = solve_decision(inst, *config, limits);
    out["result"] = to_string(r.status);
    stats = r.stats;
    schedule = r.schedule;
  } else {
    const MakespanResult r = minimize_makespan(inst, *config, limits);
    out["result"] = r.makespan ? (r.proved_optimal ? "optimal" : "feasible") : (r.proved_optimal ? "unsat" : "unknown");
    if (r.makespan) out["makespan"] = *r.makespan;
    stats = r.stats;
    schedule = r.schedule;
  }
  out["nodes"] = stats.nodes;
  out["fails"] = stats.fails;
  out["time_us"] = stats.wall_time_us;
  out["time_per_node_us"] = stats.time_per_node_us;
  out["proved_optimal"] = stats.proved_optimal;
  if (schedule) out["schedule"] = *schedule;
  std::cout << out.dump() << "\n";
  return require_complete && stats.budget_exhausted ? kBudget : kOk;
}

int cmd_gen(std::size_t n, std::uint64_t seed, const std::string& out_path, std::optional<std::size_t> jobs) {
  RcpspInstance inst;
  if (jobs) {
    RcpspGenParams params;
    params.jobs = *jobs;
    params.seed = seed;
    inst = gen_rcpsp(params);
  } else {
    GenParams params;
    params.n = n;
    params.seed = seed;
    inst = RcpspInstance::from_cusp(gen_random(params));
  }
  if (out_path.empty() || out_path == "-")
    std::cout << to_json(inst).dump(2) << "\n";
  else
    write_json_file(out_path, inst);
  return kOk;
}

std::vector<PropagationConfig> parse_configs(const std::string& list) {
  std::vector<PropagationConfig> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto c = parse_config(item);
    if (!c) throw UsageError("unknown config '" + item + "'");
    out.push_back(*c);
  }
  if (out.empty()) throw UsageError("no configs given");
  return out;
}

int cmd_bench(const std::string& suite_name, const std::string& configs, const std::string& out_path,
              std::size_t count, unsigned jobs, std::optional<std::uint64_t> node_limit, const std::string& time_limit,
              const std::string& objective_name, bool require_complete) {
  const Suite suite = resolve_suite(suite_name, count);
  BenchOptions options;
  options.jobs = jobs;
  options.limits = limits_from(time_limit, node_limit);
  if (!objective_name.empty()) {
    options.objective = parse_objective(objective_name);
    if (!options.objective) throw UsageError("unknown objective '" + objective_name + "'");
  }
  const auto rows = run_bench(suite, parse_configs(configs), options);

  if (out_path.empty() || out_path == "-") {
    write_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_csv(out, rows);
  }

  std::ostream& log = (out_path.empty() || out_path == "-") ? std::cerr : std::cout;
  log << "suite " << suite.name << ": " << suite.entries.size() << " instances, objective "
      << to_string(options.objective.value_or(suite.objective)) << "\n";
  for (const auto& s : summarize(rows)) {
    char line[256];
    std::snprintf(line, sizeof line, "  %-14s runs %zu  proved %zu  nodes %llu  time/node %.2f us (median %.2f)  checker/node %.2f us\n",
                  s.config.c_str(), s.runs, s.proved, static_cast<unsigned long long>(s.nodes), s.mean_time_per_node_us,
                  s.median_time_per_node_us, s.median_checker_us_per_node);
    log << line;
  }
  std::vector<CuspInstance> views;
  for (const auto& e : suite.entries)
    if (e.instance && !e.instance->resources.empty()) views.push_back(e.instance->resource_view(0));
  const PairReduction red = measure_pair_reduction(views, 10000, 1);
  char line[160];
  std::snprintf(line, sizeof line, "  pair intervals: mean %.3f, max %zu over %zu pairs, reduction factor %.2f\n",
                red.mean_intervals, red.max_intervals, red.pairs, red.factor);
  log << line;

  std::size_t errors = 0;
  bool exhausted = false;
  for (const auto& r : rows) {
    if (r.result.rfind("error", 0) == 0) ++errors;
    if (r.result == "unknown" || r.result.rfind("ub:", 0) == 0) exhausted = true;
  }
  if (errors) log << "  " << errors << " rows could not be run\n";
  if (require_complete && exhausted) return kBudget;
  return kOk;
}

int cmd_convert(const std::string& from, const std::string& to, const std::string& in_path,
                const std::string& out_path) {
  if (from != "psplib" && from != "json") throw UsageError("unknown input format '" + from + "'");
  if (to != "psplib" && to != "json") throw UsageError("unknown output format '" + to + "'");
  std::string text;
  if (in_path.empty() || in_path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(in_path);
    if (!in) throw std::runtime_error("cannot open " + in_path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const RcpspInstance inst = from == "psplib" ? parse_psplib(text) : parse_json_instance(text);
  const std::string result = to == "json" ? to_json(inst).dump(2) + "\n" : write_psplib(inst);
  if (out_path.empty() || out_path == "-") {
    std::cout << result;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << result;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energetic reasoning checkers and a small cumulative scheduling solver"};
  app.require_subcommand(1);
  int status = kOk;

  std::string file, checker = "sweep", stats;
  bool no_mirror = false;
  auto* check = app.add_subcommand("check", "Check one instance for energetic overloads");
  check->add_option("file", file, "Instance (.json, .sm, or - for stdin)")->required();
  check->add_option("--checker", checker, "brute|cubic|baptiste|sweep|tt");
  check->add_flag("--no-mirror", no_mirror, "Skip the mirrored sweep pass");
  check->add_option("--stats", stats, "Output format for statistics (json)");

  auto* filter = app.add_subcommand("filter", "Run time-table filtering, print bound updates");
  filter->add_option("file", file)->required();

  std::vector<std::size_t> pair;
  std::string family = "baptiste";
  bool printed_row_e = false;
  auto* intervals = app.add_subcommand("intervals", "List intervals of interest");
  intervals->add_option("file", file)->required();
  intervals->add_option("--pair", pair, "Two activity indices i j")->expected(2);
  intervals->add_option("--family", family, "baptiste|table1");
  intervals->add_flag("--printed-row-e", printed_row_e, "Use the uncorrected row E endpoint");

  std::string config = "tt+sweep", objective = "decision", time_limit;
  std::optional<std::uint64_t> node_limit;
  std::uint64_t seed = 1;
  bool require_complete = false;
  auto* solve = app.add_subcommand("solve", "Solve a decision or makespan problem");
  solve->add_option("file", file)->required();
  solve->add_option("--config", config, "tt|tt+sweep|tt+baptiste|tt+cubic|...");
  solve->add_option("--objective", objective, "decision|makespan");
  solve->add_option("--time-limit", time_limit, "e.g. 300s, 500ms");
  solve->add_option("--node-limit", node_limit);
  solve->add_option("--seed", seed, "Accepted for reproducibility; the search is deterministic");
  solve->add_flag("--require-complete", require_complete, "Exit 3 when the budget runs out");

  std::size_t n = 10;
  std::optional<std::size_t> jobs;
  std::string out_path;
  auto* gen = app.add_subcommand("gen", "Generate a random instance as JSON");
  gen->add_option("--n", n, "Activity count");
  gen->add_option("--seed", seed);
  gen->add_option("--jobs", jobs, "Generate a multi-resource project with this many jobs instead");
  gen->add_option("--out", out_path, "Output file (default stdout)");

  std::string suite, configs = "tt+sweep,tt+baptiste,tt+cubic", bench_objective;
  std::size_t count = 100;
  unsigned threads = 1;
  auto* bench = app.add_subcommand("bench", "Run a suite under several configs and write CSV");
  bench->add_option("--suite", suite, "random10|random20|opt20|psp30|psp120|<dir>|<list file>")->required();
  bench->add_option("--configs", configs, "Comma-separated configs");
  bench->add_option("--out", out_path, "CSV output (default stdout)");
  bench->add_option("--count", count, "Instances per generated suite");
  bench->add_option("--jobs", threads, "Worker threads");
  bench->add_option("--node-limit", node_limit);
  bench->add_option("--time-limit", time_limit);
  bench->add_option("--objective", bench_objective, "Override the suite objective");
  bench->add_flag("--require-complete", require_complete, "Exit 3 when any run hits its budget");

  std::string from = "psplib", to = "json", in_path;
  auto* convert = app.add_subcommand("convert", "Convert between PSPLIB and JSON");
  convert->add_option("--from", from, "psplib|json");
  convert->add_option("--to", to, "json|psplib");
  convert->add_option("input", in_path, "Input file (default stdin)");
  convert->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*check)
      status = cmd_check(file, checker, no_mirror, stats);
    else if (*filter)
      status = cmd_filter(file);
    else if (*intervals)
      status = cmd_intervals(file, pair, family, printed_row_e);
    else if (*solve)
      status = cmd_solve(file, config, objective, time_limit, node_limit, require_complete);
    else if (*gen)
      status = cmd_gen(n, seed, out_path, jobs);
    else if (*bench)
      status = cmd_bench(suite, configs, out_path, count, threads, node_limit, time_limit, bench_objective,
                         require_complete);
    else if (*convert)
      status = cmd_convert(from, to, in_path, out_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
  return status;
}
