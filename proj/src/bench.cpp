#include "erc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "erc/generator.hpp"
#include "erc/instance_io.hpp"
#include "erc/intervals.hpp"

namespace erc {

std::optional<Objective> parse_objective(std::string_view text) {
  if (text == "decision") return Objective::decision;
  if (text == "makespan") return Objective::makespan;
  return std::nullopt;
}

std::string to_string(Objective objective) {
  return objective == Objective::decision ? "decision" : "makespan";
}

namespace {

SuiteEntry load_entry(const std::filesystem::path& path) {
  SuiteEntry e{path.stem().string(), std::nullopt, {}};
  try {
    e.instance = read_instance_file(path);
  } catch (const std::exception& ex) {
    e.error = ex.what();
  }
  return e;
}

}  // namespace

Suite resolve_suite(std::string_view name, std::size_t count, std::uint64_t first_seed) {
  Suite suite;
  suite.name = std::string(name);
  auto random_suite = [&](std::size_t n, Objective objective) {
    suite.objective = objective;
    for (std::size_t k = 0; k < count; ++k) {
      GenParams params;
      params.n = n;
      params.seed = first_seed + k;
      suite.entries.push_back({suite.name + "-" + std::to_string(params.seed),
                               RcpspInstance::from_cusp(gen_random(params)), {}});
    }
  };
  auto project_suite = [&](std::size_t jobs) {
    suite.objective = Objective::makespan;
    for (std::size_t k = 0; k < count; ++k) {
      RcpspGenParams params;
      params.jobs = jobs;
      params.seed = first_seed + k;
      suite.entries.push_back({suite.name + "-" + std::to_string(params.seed), gen_rcpsp(params), {}});
    }
  };

  if (name == "random10") {
    random_suite(10, Objective::decision);
  } else if (name == "random20") {
    random_suite(20, Objective::decision);
  } else if (name == "opt20") {
    random_suite(20, Objective::makespan);
  } else if (name == "psp30") {
    project_suite(30);
  } else if (name == "psp120") {
    project_suite(120);
  } else {
    const std::filesystem::path path{std::string(name)};
    suite.objective = Objective::makespan;
    if (std::filesystem::is_directory(path)) {
      std::vector<std::filesystem::path> files;
      for (const auto& entry : std::filesystem::directory_iterator(path)) {
        const auto ext = entry.path().extension();
        if (ext == ".sm" || ext == ".json") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) suite.entries.push_back(load_entry(f));
    } else {
      std::ifstream list(path);
      if (!list) {
        suite.entries.push_back({path.string(), std::nullopt, "cannot open suite " + path.string()});
        return suite;
      }
      std::string line;
      while (std::getline(list, line)) {
        if (line.empty() || line.front() == '#') continue;
        std::filesystem::path item{line};
        if (item.is_relative()) item = path.parent_path() / item;
        suite.entries.push_back(load_entry(item));
      }
    }
  }
  return suite;
}

namespace {

BenchRow run_one(const SuiteEntry& entry, const PropagationConfig& config, Objective objective,
                 const SearchLimits& limits) {
  BenchRow row;
  row.instance = entry.id;
  row.config = to_string(config);
  if (!entry.instance) {
    row.result = "error: " + entry.error;
    return row;
  }
  SearchStats stats;
  if (objective == Objective::decision) {
    const DecisionResult r = solve_decision(*entry.instance, config, limits);
    row.result = to_string(r.status);
    stats = r.stats;
  } else {
    const MakespanResult r = minimize_makespan(*entry.instance, config, limits);
    if (!r.makespan)
      row.result = r.proved_optimal ? "infeasible" : "unknown";
    else
      row.result = (r.proved_optimal ? "opt:" : "ub:") + std::to_string(*r.makespan);
    stats = r.stats;
  }
  row.nodes = stats.nodes;
  row.time_us = stats.wall_time_us;
  row.time_per_node_us = stats.time_per_node_us;
  row.intervals_examined = stats.intervals_examined;
  row.proved_optimal = stats.proved_optimal;
  row.checker_us_per_node = stats.checker_time_per_node_us;
  return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const Suite& suite, const std::vector<PropagationConfig>& configs,
                                const BenchOptions& options) {
  const Objective objective = options.objective.value_or(suite.objective);
  const std::size_t total = suite.entries.size() * configs.size();
  std::vector<BenchRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < total; k = next++) {
      const auto& entry = suite.entries[k / configs.size()];
      rows[k] = run_one(entry, configs[k % configs.size()], objective, options.limits);
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

namespace {

constexpr const char* kHeader =
    "instance,config,result,nodes,time_us,time_per_node_us,intervals_examined,proved_optimal,checker_us_per_node";

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << kHeader << "\n";
  for (const auto& r : rows) {
    os << csv_field(r.instance) << ',' << csv_field(r.config) << ',' << csv_field(r.result) << ',' << r.nodes << ','
       << std::fixed << std::setprecision(3) << r.time_us << ',' << r.time_per_node_us << ','
       << r.intervals_examined << ',' << (r.proved_optimal ? "true" : "false") << ',' << r.checker_us_per_node
       << "\n";
    os.unsetf(std::ios::floatfield);
  }
}

std::vector<BenchRow> read_csv(std::istream& is) {
  std::vector<BenchRow> rows;
  std::string line;
  if (!std::getline(is, line) || line != kHeader) throw std::runtime_error("unexpected CSV header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw std::runtime_error("CSV row with " + std::to_string(f.size()) + " fields");
    BenchRow r;
    r.instance = f[0];
    r.config = f[1];
    r.result = f[2];
    r.nodes = std::stoull(f[3]);
    r.time_us = std::stod(f[4]);
    r.time_per_node_us = std::stod(f[5]);
    r.intervals_examined = std::stoull(f[6]);
    r.proved_optimal = f[7] == "true";
    r.checker_us_per_node = std::stod(f[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<ConfigSummary> summarize(const std::vector<BenchRow>& rows) {
  std::vector<ConfigSummary> out;
  std::map<std::string, std::size_t> slot;
  std::vector<std::vector<double>> per_node, checker;
  for (const auto& r : rows) {
    if (r.result.starts_with("error")) continue;
    auto [it, inserted] = slot.try_emplace(r.config, out.size());
    if (inserted) {
      out.push_back({r.config});
      per_node.emplace_back();
      checker.emplace_back();
    }
    ConfigSummary& s = out[it->second];
    ++s.runs;
    s.proved += r.proved_optimal ? 1 : 0;
    s.nodes += r.nodes;
    per_node[it->second].push_back(r.time_per_node_us);
    checker[it->second].push_back(r.checker_us_per_node);
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    double sum = 0;
    for (double v : per_node[k]) sum += v;
    out[k].mean_time_per_node_us = per_node[k].empty() ? 0 : sum / static_cast<double>(per_node[k].size());
    out[k].median_time_per_node_us = median(per_node[k]);
    out[k].median_checker_us_per_node = median(checker[k]);
  }
  return out;
}

PairReduction measure_pair_reduction(const std::vector<CuspInstance>& instances, std::size_t pairs,
                                     std::uint64_t seed) {
  PairReduction out;
  std::vector<const CuspInstance*> usable;
  for (const auto& inst : instances)
    if (!inst.empty()) usable.push_back(&inst);
  if (usable.empty() || pairs == 0) return out;
  std::mt19937_64 rng(seed);
  std::size_t total = 0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const CuspInstance& inst = *usable[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(usable.size()) - 1))];
    const auto last = static_cast<std::int64_t>(inst.size()) - 1;
    const Activity& i = inst.activities[static_cast<std::size_t>(uniform_int(rng, 0, last))];
    const Activity& j = inst.activities[static_cast<std::size_t>(uniform_int(rng, 0, last))];
    const std::size_t c = pair_intervals(i, j).size();
    total += c;
    out.max_intervals = std::max(out.max_intervals, c);
  }
  out.pairs = pairs;
  out.mean_intervals = static_cast<double>(total) / static_cast<double>(pairs);
  out.factor = out.mean_intervals > 0 ? 15.0 / out.mean_intervals : 0;
  return out;
}

std::optional<std::chrono::microseconds> parse_duration(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t digits = 0;
  while (digits < text.size() && (std::isdigit(static_cast<unsigned char>(text[digits])) || text[digits] == '.'))
    ++digits;
  if (digits == 0) return std::nullopt;
  double value = 0;
  try {
    value = std::stod(std::string(text.substr(0, digits)));
  } catch (const std::exception&) {
    return std::nullopt;
  }
  const std::string_view unit = text.substr(digits);
  double scale = 1e6;
  if (unit.empty() || unit == "s")
    scale = 1e6;
  else if (unit == "ms")
    scale = 1e3;
  else if (unit == "us")
    scale = 1;
  else if (unit == "m")
    scale = 60e6;
  else if (unit == "h")
    scale = 3600e6;
  else
    return std::nullopt;
  return std::chrono::microseconds(static_cast<std::int64_t>(value * scale));
}

std::optional<std::chrono::microseconds> time_limit_from_env() {
  const char* v = std::getenv("ERC_TIME_LIMIT");
  if (!v) return std::nullopt;
  return parse_duration(v);
}

}  // namespace erc
