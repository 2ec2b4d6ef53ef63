#include "erc/core_model.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace erc {

Activity Activity::make(std::size_t id, Time s_min, Time s_max, Time p, Energy h) {
  return Activity{id, s_min, s_max, s_min + p, s_max + p, p, h};
}

Horizon default_horizon(const std::vector<Activity>& activities) {
  if (activities.empty()) return {};
  Horizon hz{std::numeric_limits<Time>::max(), std::numeric_limits<Time>::min()};
  for (const auto& a : activities) {
    hz.lo = std::min(hz.lo, a.s_min);
    hz.hi = std::max(hz.hi, a.e_max);
  }
  return hz;
}

CuspInstance CuspInstance::make(std::vector<Activity> activities, Energy capacity) {
  Horizon hz = default_horizon(activities);
  return CuspInstance{std::move(activities), capacity, hz};
}

CuspInstance CuspInstance::make(std::vector<Activity> activities, Energy capacity, Horizon horizon) {
  return CuspInstance{std::move(activities), capacity, horizon};
}

RcpspInstance RcpspInstance::from_cusp(const CuspInstance& inst) {
  RcpspInstance out;
  out.activities = inst.activities;
  out.horizon = inst.horizon;
  Resource r{inst.capacity, {}};
  r.heights.reserve(inst.size());
  for (const auto& a : inst.activities) r.heights.push_back(a.h);
  out.resources.push_back(std::move(r));
  return out;
}

CuspInstance RcpspInstance::resource_view(std::size_t r) const {
  if (r >= resources.size()) throw std::out_of_range("resource index out of range");
  const Resource& res = resources[r];
  CuspInstance view{activities, res.capacity, horizon};
  for (std::size_t i = 0; i < view.activities.size(); ++i)
    view.activities[i].h = i < res.heights.size() ? res.heights[i] : 0;
  return view;
}

Time min_intersection(const Activity& a, Time t1, Time t2) {
  if (t1 >= t2) throw std::invalid_argument("min_intersection requires t1 < t2");
  return std::max<Time>(0, std::min({a.p, t2 - t1, a.e_min - t1, t2 - a.s_max}));
}

Energy slack(const CuspInstance& inst, Time t1, Time t2) {
  if (t1 >= t2) throw std::invalid_argument("slack requires t1 < t2");
  Energy s = inst.capacity * (t2 - t1);
  for (const auto& a : inst.activities) s -= a.h * min_intersection(a, t1, t2);
  return s;
}

CheckResult brute_force_check(const CuspInstance& inst) {
  const auto [lo, hi] = inst.horizon;
  for (Time t1 = lo; t1 < hi; ++t1) {
    for (Time t2 = t1 + 1; t2 <= hi; ++t2) {
      const Energy s = slack(inst, t1, t2);
      if (s < 0) return CheckResult::fail({t1, t2, s});
    }
  }
  return CheckResult::pass();
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::bound_order: return "bound-order";
    case ViolationKind::link: return "link";
    case ViolationKind::negative_duration: return "negative-duration";
    case ViolationKind::negative_height: return "negative-height";
    case ViolationKind::outside_horizon: return "outside-horizon";
    case ViolationKind::capacity: return "capacity";
    case ViolationKind::precedence_index: return "precedence-index";
    case ViolationKind::precedence_cycle: return "precedence-cycle";
    case ViolationKind::resource_shape: return "resource-shape";
  }
  return "unknown";
}

namespace {

void check_time_window(const Activity& a, std::size_t index, const Horizon& hz, std::vector<Violation>& out) {
  auto report = [&](ViolationKind kind, const std::string& what) {
    std::ostringstream os;
    os << "activity " << index << ": " << what;
    out.push_back({kind, index, os.str()});
  };
  if (a.s_min > a.s_max) report(ViolationKind::bound_order, "s_min > s_max");
  if (a.e_min > a.e_max) report(ViolationKind::bound_order, "e_min > e_max");
  if (a.p < 0) report(ViolationKind::negative_duration, "negative processing time");
  if (a.e_min != a.s_min + a.p || a.e_max != a.s_max + a.p)
    report(ViolationKind::link, "end bounds not linked to start bounds by p");
  if (a.s_min < hz.lo || a.e_max > hz.hi) report(ViolationKind::outside_horizon, "window leaves the horizon");
}

}  // namespace

std::vector<Violation> validate_instance(const CuspInstance& inst) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < inst.activities.size(); ++i) {
    const Activity& a = inst.activities[i];
    check_time_window(a, i, inst.horizon, out);
    if (a.h < 0) {
      out.push_back({ViolationKind::negative_height, i, "activity " + std::to_string(i) + ": negative height"});
    } else if (a.h > inst.capacity) {
      out.push_back({ViolationKind::capacity, i,
                     "activity " + std::to_string(i) + ": height " + std::to_string(a.h) + " exceeds capacity " +
                         std::to_string(inst.capacity)});
    }
  }
  return out;
}

std::vector<Violation> validate_instance(const RcpspInstance& inst) {
  std::vector<Violation> out;
  const std::size_t n = inst.activities.size();
  for (std::size_t i = 0; i < n; ++i) check_time_window(inst.activities[i], i, inst.horizon, out);
  for (std::size_t r = 0; r < inst.resources.size(); ++r) {
    const Resource& res = inst.resources[r];
    if (res.heights.size() != n) {
      out.push_back({ViolationKind::resource_shape, std::nullopt,
                     "resource " + std::to_string(r) + ": expected " + std::to_string(n) + " heights, got " +
                         std::to_string(res.heights.size())});
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (res.heights[i] < 0) {
        out.push_back({ViolationKind::negative_height, i,
                       "activity " + std::to_string(i) + ": negative height on resource " + std::to_string(r)});
      } else if (res.heights[i] > res.capacity) {
        out.push_back({ViolationKind::capacity, i,
                       "activity " + std::to_string(i) + ": height " + std::to_string(res.heights[i]) +
                           " exceeds capacity " + std::to_string(res.capacity) + " of resource " +
                           std::to_string(r)});
      }
    }
  }
  for (const auto& pr : inst.precedences) {
    if (pr.pred >= n || pr.succ >= n) {
      out.push_back({ViolationKind::precedence_index, std::nullopt,
                     "precedence " + std::to_string(pr.pred) + " -> " + std::to_string(pr.succ) +
                         " references a missing activity"});
    }
  }
  if (auto cycle = find_precedence_cycle(n, inst.precedences)) {
    std::string msg = "precedence cycle:";
    for (std::size_t k = 0; k < cycle->size(); ++k) msg += (k ? " -> " : " ") + std::to_string((*cycle)[k]);
    out.push_back({ViolationKind::precedence_cycle, cycle->front(), msg});
  }
  return out;
}

std::optional<std::vector<std::size_t>> find_precedence_cycle(std::size_t n,
                                                              const std::vector<Precedence>& precedences) {
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& pr : precedences)
    if (pr.pred < n && pr.succ < n) succ[pr.pred].push_back(pr.succ);

  // Iterative DFS, colour 0 = new, 1 = on stack, 2 = done.
  std::vector<int> colour(n, 0);
  std::vector<std::size_t> parent(n, n);
  for (std::size_t root = 0; root < n; ++root) {
    if (colour[root] != 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    colour[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < succ[v].size()) {
        const std::size_t w = succ[v][next++];
        if (colour[w] == 1) {
          std::vector<std::size_t> cycle{w};
          for (std::size_t u = v; u != w; u = parent[u]) cycle.push_back(u);
          cycle.push_back(w);
          std::reverse(cycle.begin(), cycle.end());
          return cycle;
        }
        if (colour[w] == 0) {
          colour[w] = 1;
          parent[w] = v;
          stack.emplace_back(w, 0);
        }
      } else {
        colour[v] = 2;
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

}  // namespace erc
