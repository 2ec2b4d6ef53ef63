#include "erc/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

namespace erc {

ParseError::ParseError(std::string section, std::size_t line, const std::string& what)
    : std::runtime_error(line ? section + " (line " + std::to_string(line) + "): " + what : section + ": " + what),
      section_(std::move(section)),
      line_(line) {}

using nlohmann::json;

json to_json(const RcpspInstance& inst) {
  json j;
  const bool has_resource = !inst.resources.empty();
  j["capacity"] = has_resource ? inst.resources[0].capacity : 0;
  j["horizon"] = {inst.horizon.lo, inst.horizon.hi};
  json acts = json::array();
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const Activity& a = inst.activities[k];
    acts.push_back({{"s", {a.s_min, a.s_max}}, {"p", a.p}, {"h", has_resource ? inst.resources[0].heights.at(k) : 0}});
  }
  j["activities"] = std::move(acts);
  json prec = json::array();
  for (const auto& pr : inst.precedences) prec.push_back({pr.pred, pr.succ});
  j["precedences"] = std::move(prec);
  if (inst.resources.size() > 1) {
    json extra = json::array();
    for (std::size_t r = 1; r < inst.resources.size(); ++r)
      extra.push_back({{"capacity", inst.resources[r].capacity}, {"heights", inst.resources[r].heights}});
    j["resources"] = std::move(extra);
  }
  return j;
}

json to_json(const CuspInstance& inst) { return to_json(RcpspInstance::from_cusp(inst)); }

RcpspInstance rcpsp_from_json(const json& j) {
  try {
    RcpspInstance inst;
    Resource first{j.at("capacity").get<Energy>(), {}};
    const auto& acts = j.at("activities");
    if (!acts.is_array()) throw ParseError("json", 0, "\"activities\" must be an array");
    for (std::size_t k = 0; k < acts.size(); ++k) {
      const auto& a = acts[k];
      const auto& s = a.at("s");
      if (!s.is_array() || s.size() != 2) throw ParseError("json", 0, "activity " + std::to_string(k) + ": \"s\" must be [lo, hi]");
      inst.activities.push_back(
          Activity::make(k, s[0].get<Time>(), s[1].get<Time>(), a.at("p").get<Time>(), a.at("h").get<Energy>()));
      first.heights.push_back(a.at("h").get<Energy>());
    }
    inst.resources.push_back(std::move(first));
    if (auto it = j.find("resources"); it != j.end()) {
      for (const auto& r : *it) inst.resources.push_back({r.at("capacity").get<Energy>(), r.at("heights").get<std::vector<Energy>>()});
    }
    if (auto it = j.find("precedences"); it != j.end()) {
      for (const auto& pr : *it) {
        if (!pr.is_array() || pr.size() != 2) throw ParseError("json", 0, "precedence must be [pred, succ]");
        inst.precedences.push_back({pr[0].get<std::size_t>(), pr[1].get<std::size_t>()});
      }
    }
    if (auto it = j.find("horizon"); it != j.end()) {
      if (!it->is_array() || it->size() != 2) throw ParseError("json", 0, "\"horizon\" must be [lo, hi]");
      inst.horizon = {(*it)[0].get<Time>(), (*it)[1].get<Time>()};
    } else {
      inst.horizon = default_horizon(inst.activities);
    }
    for (const auto& pr : inst.precedences)
      if (pr.pred >= inst.size() || pr.succ >= inst.size())
        throw ParseError("json", 0, "precedence references a missing activity");
    if (auto cycle = find_precedence_cycle(inst.size(), inst.precedences)) {
      std::string msg = "precedence cycle:";
      for (std::size_t k = 0; k < cycle->size(); ++k) msg += (k ? " -> " : " ") + std::to_string((*cycle)[k]);
      throw ParseError("json", 0, msg);
    }
    return inst;
  } catch (const json::exception& e) {
    throw ParseError("json", 0, e.what());
  }
}

RcpspInstance parse_json_instance(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("json", 0, e.what());
  }
  return rcpsp_from_json(j);
}

namespace {

struct Lines {
  std::vector<std::string> text;
  std::size_t pos = 0;  // next line to read, 0-based

  std::size_t line_no() const { return pos; }  // 1-based number of the last line read
  bool done() const { return pos >= text.size(); }
};

bool starts_with_word(const std::string& line, std::string_view prefix) {
  const auto first = line.find_first_not_of(" \t");
  return first != std::string::npos && std::string_view(line).substr(first).starts_with(prefix);
}

std::vector<long long> integers_in(const std::string& line) {
  std::vector<long long> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used == tok.size()) out.push_back(v);
    } catch (const std::exception&) {
    }
  }
  return out;
}

// Value after the first ':' on a "key : value" header line.
std::optional<long long> header_value(const std::string& line) {
  const auto colon = line.find(':');
  if (colon == std::string::npos) return std::nullopt;
  auto ints = integers_in(line.substr(colon + 1));
  if (ints.empty()) return std::nullopt;
  return ints.front();
}

std::size_t find_section(Lines& lines, std::string_view header, const char* section) {
  for (std::size_t k = lines.pos; k < lines.text.size(); ++k) {
    if (starts_with_word(lines.text[k], header)) {
      lines.pos = k + 1;
      return k;
    }
  }
  throw ParseError(section, lines.text.size(), "section header \"" + std::string(header) + "\" not found");
}

// Next line holding at least one integer token in its first column.
const std::string& next_data_line(Lines& lines, const char* section) {
  while (!lines.done()) {
    const std::string& line = lines.text[lines.pos++];
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '*') break;
    if (std::isdigit(static_cast<unsigned char>(line[first])) || line[first] == '-') {
      if (line[first] == '-' && line.find_first_not_of("- \t") == std::string::npos) continue;
      return line;
    }
  }
  throw ParseError(section, lines.line_no(), "unexpected end of section");
}

}  // namespace

RcpspInstance parse_psplib(std::string_view text) {
  Lines lines;
  {
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.text.push_back(line);
    }
  }
  if (std::all_of(lines.text.begin(), lines.text.end(),
                  [](const std::string& l) { return l.find_first_not_of(" \t") == std::string::npos; }))
    throw ParseError("header", 0, "empty file");

  std::optional<long long> jobs, horizon, renewable;
  for (std::size_t k = 0; k < lines.text.size(); ++k) {
    const std::string& line = lines.text[k];
    if (starts_with_word(line, "jobs")) {
      jobs = header_value(line);
      if (!jobs || *jobs <= 0) throw ParseError("header", k + 1, "bad job count");
    } else if (starts_with_word(line, "horizon")) {
      horizon = header_value(line);
      if (!horizon) throw ParseError("header", k + 1, "bad horizon");
    } else if (starts_with_word(line, "- renewable")) {
      renewable = header_value(line);
      if (!renewable || *renewable < 0) throw ParseError("header", k + 1, "bad renewable resource count");
    }
  }
  if (!jobs) throw ParseError("header", 0, "missing \"jobs\" line");
  if (!renewable) throw ParseError("header", 0, "missing renewable resource count");
  const auto n = static_cast<std::size_t>(*jobs);
  const auto nres = static_cast<std::size_t>(*renewable);

  std::vector<Precedence> precedences;
  find_section(lines, "PRECEDENCE RELATIONS", "precedence relations");
  for (std::size_t k = 0; k < n; ++k) {
    const std::string& line = next_data_line(lines, "precedence relations");
    auto v = integers_in(line);
    if (v.size() < 3) throw ParseError("precedence relations", lines.line_no(), "expected job, modes, successor count");
    const long long job = v[0];
    const long long count = v[2];
    if (job < 1 || static_cast<std::size_t>(job) > n)
      throw ParseError("precedence relations", lines.line_no(), "job number out of range");
    if (v[1] != 1) throw ParseError("precedence relations", lines.line_no(), "only single-mode files are supported");
    if (count < 0 || v.size() != static_cast<std::size_t>(3 + count))
      throw ParseError("precedence relations", lines.line_no(), "successor count does not match the list");
    for (long long s = 0; s < count; ++s) {
      const long long succ = v[3 + static_cast<std::size_t>(s)];
      if (succ < 1 || static_cast<std::size_t>(succ) > n)
        throw ParseError("precedence relations", lines.line_no(), "successor out of range");
      precedences.push_back({static_cast<std::size_t>(job - 1), static_cast<std::size_t>(succ - 1)});
    }
  }

  std::vector<Time> durations(n, 0);
  std::vector<std::vector<Energy>> requests(nres, std::vector<Energy>(n, 0));
  find_section(lines, "REQUESTS/DURATIONS", "requests/durations");
  for (std::size_t k = 0; k < n; ++k) {
    const std::string& line = next_data_line(lines, "requests/durations");
    auto v = integers_in(line);
    if (v.size() != 3 + nres)
      throw ParseError("requests/durations", lines.line_no(),
                       "expected job, mode, duration and " + std::to_string(nres) + " requests");
    const long long job = v[0];
    if (job < 1 || static_cast<std::size_t>(job) > n)
      throw ParseError("requests/durations", lines.line_no(), "job number out of range");
    if (v[2] < 0) throw ParseError("requests/durations", lines.line_no(), "negative duration");
    const auto idx = static_cast<std::size_t>(job - 1);
    durations[idx] = v[2];
    for (std::size_t r = 0; r < nres; ++r) {
      if (v[3 + r] < 0) throw ParseError("requests/durations", lines.line_no(), "negative request");
      requests[r][idx] = v[3 + r];
    }
  }

  std::vector<Energy> capacities;
  find_section(lines, "RESOURCEAVAILABILITIES", "resource availabilities");
  {
    const std::string& line = next_data_line(lines, "resource availabilities");
    auto v = integers_in(line);
    if (v.size() != nres)
      throw ParseError("resource availabilities", lines.line_no(),
                       "expected " + std::to_string(nres) + " capacities");
    capacities.assign(v.begin(), v.end());
  }

  if (auto cycle = find_precedence_cycle(n, precedences)) {
    std::string msg = "precedence cycle:";
    for (std::size_t k = 0; k < cycle->size(); ++k) msg += (k ? " -> " : " ") + std::to_string((*cycle)[k] + 1);
    throw ParseError("precedence relations", 0, msg);
  }

  const Time total = std::accumulate(durations.begin(), durations.end(), Time{0});
  const Time hz = horizon ? *horizon : total;
  RcpspInstance inst;
  inst.horizon = {0, hz};
  for (std::size_t k = 0; k < n; ++k) {
    if (durations[k] > hz) throw ParseError("requests/durations", 0, "job " + std::to_string(k + 1) + " is longer than the horizon");
    inst.activities.push_back(Activity::make(k, 0, hz - durations[k], durations[k], nres ? requests[0][k] : 0));
  }
  for (std::size_t r = 0; r < nres; ++r) inst.resources.push_back({capacities[r], requests[r]});
  inst.precedences = std::move(precedences);
  return inst;
}

std::string write_psplib(const RcpspInstance& inst) {
  const std::size_t n = inst.size();
  const std::size_t nres = inst.resources.size();
  const std::string rule(72, '*');
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& pr : inst.precedences) succ[pr.pred].push_back(pr.succ);

  std::ostringstream os;
  os << rule << "\n";
  os << "projects                      :  1\n";
  os << "jobs (incl. supersource/sink ):  " << n << "\n";
  os << "horizon                       :  " << inst.horizon.hi << "\n";
  os << "RESOURCES\n";
  os << "  - renewable                 :  " << nres << "   R\n";
  os << "  - nonrenewable              :  0   N\n";
  os << "  - doubly constrained        :  0   D\n";
  os << rule << "\n";
  os << "PRECEDENCE RELATIONS:\n";
  os << "jobnr.    #modes  #successors   successors\n";
  for (std::size_t k = 0; k < n; ++k) {
    os << std::setw(4) << k + 1 << std::setw(9) << 1 << std::setw(11) << succ[k].size() << "       ";
    for (std::size_t s : succ[k]) os << std::setw(4) << s + 1;
    os << "\n";
  }
  os << rule << "\n";
  os << "REQUESTS/DURATIONS:\n";
  os << "jobnr. mode duration";
  for (std::size_t r = 0; r < nres; ++r) os << "  R " << r + 1;
  os << "\n" << std::string(72, '-') << "\n";
  for (std::size_t k = 0; k < n; ++k) {
    os << std::setw(3) << k + 1 << std::setw(7) << 1 << std::setw(6) << inst.activities[k].p << "    ";
    for (std::size_t r = 0; r < nres; ++r) os << std::setw(5) << inst.resources[r].heights[k];
    os << "\n";
  }
  os << rule << "\n";
  os << "RESOURCEAVAILABILITIES:\n";
  for (std::size_t r = 0; r < nres; ++r) os << "  R " << r + 1;
  os << "\n";
  for (std::size_t r = 0; r < nres; ++r) os << std::setw(5) << inst.resources[r].capacity;
  os << "\n" << rule << "\n";
  return os.str();
}

RcpspInstance read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (path.extension() == ".sm") return parse_psplib(buf.str());
  return parse_json_instance(buf.str());
}

void write_json_file(const std::filesystem::path& path, const RcpspInstance& inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(inst).dump(2) << "\n";
}

}  // namespace erc
