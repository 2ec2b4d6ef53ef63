#include "erc/solver.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "erc/timetable.hpp"

namespace erc {

std::optional<PropagationConfig> parse_config(std::string_view text) {
  PropagationConfig config;
  if (text == "tt") return PropagationConfig{true, CheckerKind::none, true};
  if (text.starts_with("tt+")) {
    auto kind = parse_checker_kind(text.substr(3));
    if (!kind || *kind == CheckerKind::time_table || *kind == CheckerKind::none) return std::nullopt;
    return PropagationConfig{true, *kind, true};
  }
  auto kind = parse_checker_kind(text);
  if (!kind || *kind == CheckerKind::time_table) return std::nullopt;
  return PropagationConfig{false, *kind, true};
}

std::string to_string(const PropagationConfig& config) {
  if (config.time_table) return config.checker == CheckerKind::none ? "tt" : "tt+" + to_string(config.checker);
  return to_string(config.checker);
}

SearchState::SearchState(const RcpspInstance& inst) {
  bounds_.reserve(inst.size());
  for (const auto& a : inst.activities) bounds_.push_back({a.s_min, a.s_max});
}

bool SearchState::set_s_min(std::size_t a, Time v) {
  Bounds& b = bounds_[a];
  if (v > b.s_min) {
    trail_.push_back({a, b});
    b.s_min = v;
  }
  return b.s_min <= b.s_max;
}

bool SearchState::set_s_max(std::size_t a, Time v) {
  Bounds& b = bounds_[a];
  if (v < b.s_max) {
    trail_.push_back({a, b});
    b.s_max = v;
  }
  return b.s_min <= b.s_max;
}

void SearchState::push_level() { levels_.push_back(trail_.size()); }

void SearchState::pop_level() {
  if (levels_.empty()) throw std::logic_error("pop_level on the root level");
  const std::size_t mark = levels_.back();
  levels_.pop_back();
  while (trail_.size() > mark) {
    const TrailEntry& e = trail_.back();
    bounds_[e.activity] = e.old;
    trail_.pop_back();
  }
}

CuspInstance current_view(const RcpspInstance& inst, const SearchState& state, std::size_t r) {
  const Resource& res = inst.resources.at(r);
  std::vector<Activity> acts;
  acts.reserve(inst.size());
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const Activity& a = inst.activities[k];
    acts.push_back(Activity::make(k, state.s_min(k), state.s_max(k), a.p, res.heights[k]));
  }
  return CuspInstance::make(std::move(acts), res.capacity);
}

namespace {

std::vector<std::size_t> topological_order(const RcpspInstance& inst) {
  const std::size_t n = inst.size();
  std::vector<std::size_t> indeg(n, 0);
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& pr : inst.precedences) {
    succ[pr.pred].push_back(pr.succ);
    ++indeg[pr.succ];
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    if (indeg[k] == 0) order.push_back(k);
  for (std::size_t head = 0; head < order.size(); ++head)
    for (std::size_t w : succ[order[head]])
      if (--indeg[w] == 0) order.push_back(w);
  if (order.size() != n) throw std::invalid_argument("precedence graph has a cycle");
  return order;
}

// Activities of one resource with non-zero height, as a checker instance.
struct ResourceView {
  CuspInstance inst;
  std::vector<std::size_t> index;  // view position -> activity
};

ResourceView resource_view(const RcpspInstance& inst, const SearchState& state, std::size_t r) {
  const Resource& res = inst.resources[r];
  ResourceView view;
  std::vector<Activity> acts;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    if (res.heights[k] == 0 || inst.activities[k].p == 0) continue;
    acts.push_back(Activity::make(k, state.s_min(k), state.s_max(k), inst.activities[k].p, res.heights[k]));
    view.index.push_back(k);
  }
  view.inst = CuspInstance::make(std::move(acts), res.capacity);
  return view;
}

}  // namespace

PropagationStatus precedence_filter(const RcpspInstance& inst, SearchState& state) {
  PropagationStatus status;
  if (inst.precedences.empty()) return status;
  const auto order = topological_order(inst);
  std::vector<std::vector<std::size_t>> succ(inst.size());
  for (const auto& pr : inst.precedences) succ[pr.pred].push_back(pr.succ);

  for (std::size_t v : order) {
    const Time earliest_end = state.s_min(v) + inst.activities[v].p;
    for (std::size_t w : succ[v]) {
      if (earliest_end > state.s_min(w)) {
        status.changed = true;
        if (!state.set_s_min(w, earliest_end)) {
          status.failed = true;
          return status;
        }
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t v = *it;
    for (std::size_t w : succ[v]) {
      const Time latest = state.s_max(w) - inst.activities[v].p;
      if (latest < state.s_max(v)) {
        status.changed = true;
        if (!state.set_s_max(v, latest)) {
          status.failed = true;
          return status;
        }
      }
    }
  }
  return status;
}

bool propagate(const RcpspInstance& inst, SearchState& state, const PropagationConfig& config,
               PropagationTelemetry* telemetry) {
  for (std::size_t k = 0; k < state.size(); ++k)
    if (state.s_min(k) > state.s_max(k)) return false;

  for (;;) {
    const PropagationStatus prec = precedence_filter(inst, state);
    if (prec.failed) return false;
    bool changed = false;
    if (config.time_table) {
      for (std::size_t r = 0; r < inst.resources.size(); ++r) {
        const ResourceView view = resource_view(inst, state, r);
        const FilterResult filtered = tt_filter(view.inst);
        if (filtered.failed) return false;
        for (const auto& up : filtered.updates) {
          const std::size_t a = view.index[up.activity];
          if (up.new_s_min) state.set_s_min(a, *up.new_s_min);
          if (up.new_s_max) state.set_s_max(a, *up.new_s_max);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  if (config.checker == CheckerKind::none) return true;
  for (std::size_t r = 0; r < inst.resources.size(); ++r) {
    const ResourceView view = resource_view(inst, state, r);
    CheckCounters counters;
    const auto start = std::chrono::steady_clock::now();
    const CheckResult verdict = run_checker(view.inst, config.checker, &counters, config.mirror);
    if (telemetry) {
      telemetry->checker_time += std::chrono::steady_clock::now() - start;
      telemetry->counters += counters;
    }
    if (!verdict.feasible) return false;
  }
  return true;
}

std::optional<Decision> branch_first_fail(const SearchState& state) {
  std::optional<Decision> best;
  Time best_width = 0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const Time width = state.s_max(k) - state.s_min(k);
    if (width <= 0) continue;
    if (!best || width < best_width) {
      best = Decision{k, state.s_min(k)};
      best_width = width;
    }
  }
  return best;
}

std::string to_string(DecisionStatus status) {
  switch (status) {
    case DecisionStatus::sat: return "sat";
    case DecisionStatus::unsat: return "unsat";
    case DecisionStatus::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

// Fixed schedules are accepted only when every resource profile fits.
bool leaf_fits(const RcpspInstance& inst, const SearchState& state) {
  for (std::size_t r = 0; r < inst.resources.size(); ++r)
    if (!tt_check(current_view(inst, state, r)).feasible) return false;
  return true;
}

enum class Verdict { stop, next };

// Depth-first search over binary first-fail decisions. `on_solution` gets the
// fixed state and returns whether to continue; `before_node` may tighten the
// state before propagation and returns false to fail the node.
SearchStats depth_first(const RcpspInstance& inst, const PropagationConfig& config, const SearchLimits& limits,
                        const std::function<bool(SearchState&)>& before_node,
                        const std::function<Verdict(const SearchState&)>& on_solution) {
  using clock = std::chrono::steady_clock;
  SearchStats stats;
  PropagationTelemetry telemetry;
  const auto started = clock::now();

  struct ChoicePoint {
    Decision decision;
    bool right_taken = false;
  };
  SearchState state(inst);
  std::vector<ChoicePoint> stack;
  bool complete = false;

  auto out_of_budget = [&]() {
    if (limits.node_limit && stats.nodes >= *limits.node_limit) return true;
    if (limits.time_limit && clock::now() - started >= *limits.time_limit) return true;
    return false;
  };
  // Undo to the deepest open right branch and take it; false when exhausted.
  auto backtrack = [&]() {
    while (!stack.empty() && stack.back().right_taken) {
      stack.pop_back();
      state.pop_level();
    }
    if (stack.empty()) return false;
    ChoicePoint& cp = stack.back();
    state.pop_level();
    state.push_level();
    cp.right_taken = true;
    state.set_s_min(cp.decision.activity, cp.decision.value + 1);
    return true;
  };

  for (;;) {
    if (out_of_budget()) {
      stats.budget_exhausted = true;
      break;
    }
    ++stats.nodes;
    bool ok = before_node(state) && propagate(inst, state, config, &telemetry);
    std::optional<Decision> decision;
    if (ok) {
      decision = branch_first_fail(state);
      if (!decision) {
        if (leaf_fits(inst, state)) {
          ++stats.solutions;
          if (on_solution(state) == Verdict::stop) break;
        }
        ok = false;
      }
    }
    if (!ok) {
      ++stats.fails;
      if (!backtrack()) {
        complete = true;
        break;
      }
      continue;
    }
    stack.push_back({*decision, false});
    state.push_level();
    state.set_s_max(decision->activity, decision->value);
  }

  stats.proved_optimal = complete;
  stats.wall_time_us = std::chrono::duration<double, std::micro>(clock::now() - started).count();
  stats.checker_time_us = std::chrono::duration<double, std::micro>(telemetry.checker_time).count();
  if (stats.nodes > 0) {
    stats.time_per_node_us = stats.wall_time_us / static_cast<double>(stats.nodes);
    stats.checker_time_per_node_us = stats.checker_time_us / static_cast<double>(stats.nodes);
  }
  stats.intervals_examined = telemetry.counters.intervals_examined;
  stats.events_processed = telemetry.counters.events_processed;
  return stats;
}

std::vector<Time> starts_of(const SearchState& state) {
  std::vector<Time> out;
  out.reserve(state.size());
  for (const auto& b : state.bounds()) out.push_back(b.s_min);
  return out;
}

}  // namespace

DecisionResult solve_decision(const RcpspInstance& inst, const PropagationConfig& config,
                              const SearchLimits& limits) {
  DecisionResult result;
  result.stats = depth_first(
      inst, config, limits, [](SearchState&) { return true; },
      [&](const SearchState& state) {
        result.schedule = starts_of(state);
        return Verdict::stop;
      });
  if (result.schedule)
    result.status = DecisionStatus::sat;
  else if (result.stats.proved_optimal)
    result.status = DecisionStatus::unsat;
  // Finding a solution ends the search; the tree was not closed.
  result.stats.proved_optimal = result.stats.proved_optimal || result.schedule.has_value();
  return result;
}

MakespanResult minimize_makespan(const RcpspInstance& inst, const PropagationConfig& config,
                                 const SearchLimits& limits) {
  MakespanResult result;
  result.stats = depth_first(
      inst, config, limits,
      [&](SearchState& state) {
        if (!result.makespan) return true;
        const Time bound = *result.makespan - 1;
        for (std::size_t k = 0; k < state.size(); ++k)
          if (!state.set_s_max(k, bound - inst.activities[k].p)) return false;
        return true;
      },
      [&](const SearchState& state) {
        Time makespan = inst.horizon.lo;
        for (std::size_t k = 0; k < state.size(); ++k)
          makespan = std::max(makespan, state.s_min(k) + inst.activities[k].p);
        result.makespan = makespan;
        result.schedule = starts_of(state);
        return Verdict::next;
      });
  result.proved_optimal = result.stats.proved_optimal;
  return result;
}

}  // namespace erc
