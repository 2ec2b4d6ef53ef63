#include "erc/checkers.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "erc/intervals.hpp"
#include "erc/timetable.hpp"

namespace erc {

namespace {

constexpr Time kNoTime = std::numeric_limits<Time>::min();

// min_intersection without the t1 < t2 contract; yields 0 for empty intervals.
inline Time mi(const Activity& a, Time t1, Time t2) {
  return std::max<Time>(0, std::min({a.p, t2 - t1, a.e_min - t1, t2 - a.s_max}));
}

void sort_events(std::vector<Event>& v) {
  std::sort(v.begin(), v.end(), [](const Event& x, const Event& y) {
    return x.time != y.time ? x.time < y.time : x.activity < y.activity;
  });
}

enum ListKind : int { kSMax = 0, kEMin = 1, kEMax = 2, kL = 3 };

// Merges the four event lists restricted to times > t1, the l_events shifted
// by -t1. Calls visit(time, kind, activity) in non-decreasing time order.
template <typename Visit>
void merge_events(const EventLists& lists, Time t1, Visit&& visit) {
  const std::array<const std::vector<Event>*, 4> src{&lists.s_max_events, &lists.e_min_events, &lists.e_max_events,
                                                     &lists.l_events};
  const std::array<Time, 4> shift{0, 0, 0, -t1};
  std::array<std::size_t, 4> pos{};
  for (int k = 0; k < 4; ++k) {
    const auto& v = *src[k];
    pos[k] = static_cast<std::size_t>(
        std::upper_bound(v.begin(), v.end(), t1 - shift[k], [](Time t, const Event& e) { return t < e.time; }) -
        v.begin());
  }
  for (;;) {
    int best = -1;
    Time best_time = std::numeric_limits<Time>::max();
    for (int k = 0; k < 4; ++k) {
      if (pos[k] < src[k]->size()) {
        const Time t = (*src[k])[pos[k]].time + shift[k];
        if (t < best_time) {
          best_time = t;
          best = k;
        }
      }
    }
    if (best < 0) return;
    const Event& e = (*src[best])[pos[best]++];
    if (!visit(best_time, static_cast<ListKind>(best), e.activity)) return;
  }
}

std::vector<Time> start_candidates(const CuspInstance& inst) {
  std::vector<Time> out;
  out.reserve(2 * inst.size());
  for (const auto& a : inst.activities) {
    out.push_back(a.s_min);
    out.push_back(a.s_max);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Witness unmirror(const Witness& w, Time pivot) { return {pivot - w.t2, pivot - w.t1, w.slack}; }

Energy initial_slope(const CuspInstance& inst, Time t1) {
  Energy slope = inst.capacity;
  for (const auto& a : inst.activities) slope -= a.h * mi(a, t1, t1 + 1);
  return slope;
}

// Forward pass shared by the quadratic checkers: for each t1 of `starts`, the
// load (slack since t1) is advanced between distinct event times at the
// current slope and tested before the slope changes of that time are applied.
// `slope_change(t1, t, kind, a)` returns the change to apply for one event.
template <typename SlopeChange, typename Prepare>
std::optional<Witness> sweep_pass(const CuspInstance& inst, const std::vector<Time>& starts, Prepare&& prepare,
                                  SlopeChange&& slope_change, CheckCounters& counters,
                                  const SweepOptions* options) {
  const EventLists lists = build_event_lists(inst);
  std::optional<Witness> found;
  for (Time t1 : starts) {
    prepare(t1);
    Energy slope = initial_slope(inst, t1);
    Energy load = 0;
    Time t_old = t1;
    merge_events(lists, t1, [&](Time t, ListKind kind, std::uint32_t a) {
      ++counters.events_processed;
      if (t != t_old) {
        load += slope * (t - t_old);
        t_old = t;
        ++counters.intervals_examined;
        if (options && options->on_test) options->on_test(inst, t1, t, load);
        if (load < 0) {
          found = Witness{t1, t, load};
          return false;
        }
      }
      slope += slope_change(t1, t, kind, a);
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<Witness> sweep_forward(const CuspInstance& inst, CheckCounters& counters, const SweepOptions* options) {
  const std::size_t n = inst.size();
  std::vector<Time> soi(n, kNoTime);
  std::vector<Time> doi(n, kNoTime);
  std::vector<ListKind> doi_kind(n, kEMax);

  // Same case split as inflection_profile, written out to keep the per-t1
  // setup cheap.
  auto prepare = [&](Time t1) {
    for (std::size_t k = 0; k < n; ++k) {
      const Activity& a = inst.activities[k];
      soi[k] = kNoTime;
      doi[k] = kNoTime;
      if (t1 <= a.s_min) {
        soi[k] = a.s_max;
        doi[k] = a.e_max;
        doi_kind[k] = kEMax;
      } else if (t1 >= a.e_min) {
        continue;
      } else if (t1 < a.s_max) {
        soi[k] = a.s_max;
        doi[k] = a.s_min + a.e_max - t1;
        doi_kind[k] = kL;
      } else {
        doi[k] = a.e_min;
        doi_kind[k] = kEMin;
      }
      if (soi[k] == doi[k]) soi[k] = doi[k] = kNoTime;
    }
  };
  auto slope_change = [&](Time, Time t, ListKind kind, std::uint32_t a) -> Energy {
    if (kind == kSMax && soi[a] == t) return -inst.activities[a].h;
    if (kind == doi_kind[a] && doi[a] == t) return inst.activities[a].h;
    return 0;
  };
  return sweep_pass(inst, start_candidates(inst), prepare, slope_change, counters, options);
}

std::optional<Witness> baptiste_forward(const CuspInstance& inst, CheckCounters& counters) {
  auto slope_change = [&](Time t1, Time t, ListKind kind, std::uint32_t idx) -> Energy {
    const Activity& a = inst.activities[idx];
    // Each breakpoint of an activity is accounted once, from the first list
    // (in S_M, E_m, E_M, L order) that carries it.
    switch (kind) {
      case kSMax: break;
      case kEMin:
        if (t == a.s_max) return 0;
        break;
      case kEMax:
        if (t == a.s_max || t == a.e_min) return 0;
        break;
      case kL:
        if (t == a.s_max || t == a.e_min || t == a.e_max) return 0;
        break;
    }
    const Time here = mi(a, t1, t);
    const Time bend = (mi(a, t1, t + 1) - here) - (here - mi(a, t1, t - 1));
    return -a.h * bend;
  };
  return sweep_pass(inst, o1_set(inst), [](Time) {}, slope_change, counters, nullptr);
}

}  // namespace

EventLists build_event_lists(const CuspInstance& inst) {
  EventLists lists;
  const std::size_t n = inst.size();
  lists.e_max_events.reserve(n);
  lists.e_min_events.reserve(n);
  lists.s_max_events.reserve(n);
  lists.l_events.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Activity& a = inst.activities[k];
    const auto idx = static_cast<std::uint32_t>(k);
    lists.e_max_events.push_back({a.e_max, idx});
    lists.e_min_events.push_back({a.e_min, idx});
    lists.s_max_events.push_back({a.s_max, idx});
    lists.l_events.push_back({a.s_min + a.e_max, idx});
  }
  sort_events(lists.e_max_events);
  sort_events(lists.e_min_events);
  sort_events(lists.s_max_events);
  sort_events(lists.l_events);
  return lists;
}

CuspInstance mirror_instance(const CuspInstance& inst) {
  const Time pivot = inst.horizon.lo + inst.horizon.hi;
  CuspInstance out{inst.activities, inst.capacity, inst.horizon};
  for (auto& a : out.activities) {
    const Activity src = a;
    a.s_min = pivot - src.e_max;
    a.s_max = pivot - src.e_min;
    a.e_min = pivot - src.s_max;
    a.e_max = pivot - src.s_min;
  }
  return out;
}

CheckResult check_cubic(const CuspInstance& inst, CheckCounters* counters) {
  const IntervalFamily family = baptiste_intervals(inst);
  std::uint64_t examined = 0;
  CheckResult result = CheckResult::pass();
  for (const auto& iv : family.intervals) {
    ++examined;
    Energy s = inst.capacity * (iv.t2 - iv.t1);
    for (const auto& a : inst.activities) s -= a.h * mi(a, iv.t1, iv.t2);
    if (s < 0) {
      result = CheckResult::fail({iv.t1, iv.t2, s});
      break;
    }
  }
  if (counters) counters->intervals_examined += examined;
  return result;
}

CheckResult check_baptiste(const CuspInstance& inst, CheckCounters* counters) {
  CheckCounters local;
  CheckResult result = CheckResult::pass();
  if (auto w = baptiste_forward(inst, local)) {
    result = CheckResult::fail(*w);
  } else if (auto wm = baptiste_forward(mirror_instance(inst), local)) {
    result = CheckResult::fail(unmirror(*wm, inst.horizon.lo + inst.horizon.hi));
  }
  if (counters) *counters += local;
  return result;
}

CheckResult check_sweep(const CuspInstance& inst, const SweepOptions& options, CheckCounters* counters) {
  CheckCounters local;
  CheckResult result = CheckResult::pass();
  if (auto w = sweep_forward(inst, local, &options)) {
    result = CheckResult::fail(*w);
  } else if (options.mirror) {
    if (auto wm = sweep_forward(mirror_instance(inst), local, &options))
      result = CheckResult::fail(unmirror(*wm, inst.horizon.lo + inst.horizon.hi));
  }
  if (counters) *counters += local;
  return result;
}

std::string to_string(CheckerKind kind) {
  switch (kind) {
    case CheckerKind::none: return "none";
    case CheckerKind::brute: return "brute";
    case CheckerKind::cubic: return "cubic";
    case CheckerKind::baptiste: return "baptiste";
    case CheckerKind::sweep: return "sweep";
    case CheckerKind::time_table: return "tt";
  }
  return "unknown";
}

std::optional<CheckerKind> parse_checker_kind(std::string_view name) {
  if (name == "none") return CheckerKind::none;
  if (name == "brute") return CheckerKind::brute;
  if (name == "cubic") return CheckerKind::cubic;
  if (name == "baptiste") return CheckerKind::baptiste;
  if (name == "sweep") return CheckerKind::sweep;
  if (name == "tt") return CheckerKind::time_table;
  return std::nullopt;
}

CheckResult run_checker(const CuspInstance& inst, CheckerKind kind, CheckCounters* counters, bool mirror) {
  switch (kind) {
    case CheckerKind::none: return CheckResult::pass();
    case CheckerKind::brute: return brute_force_check(inst);
    case CheckerKind::cubic: return check_cubic(inst, counters);
    case CheckerKind::baptiste: return check_baptiste(inst, counters);
    case CheckerKind::sweep: {
      SweepOptions options;
      options.mirror = mirror;
      return check_sweep(inst, options, counters);
    }
    case CheckerKind::time_table: return tt_check(inst);
  }
  return CheckResult::pass();
}

}  // namespace erc
