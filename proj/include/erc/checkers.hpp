#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "erc/core_model.hpp"

namespace erc {

/// Instrumentation shared by the checkers. `intervals_examined` counts slack
/// evaluations (one per (t1, t2) pair tested); `events_processed` counts
/// sweep events merged.
struct CheckCounters {
  std::uint64_t intervals_examined = 0;
  std::uint64_t events_processed = 0;

  CheckCounters& operator+=(const CheckCounters& o) {
    intervals_examined += o.intervals_examined;
    events_processed += o.events_processed;
    return *this;
  }
};

struct Event {
  Time time = 0;
  std::uint32_t activity = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Activity events, each list sorted by time (ties by activity index).
struct EventLists {
  std::vector<Event> e_max_events;  // (e_max, a)
  std::vector<Event> e_min_events;  // (e_min, a)
  std::vector<Event> s_max_events;  // (s_max, a)
  std::vector<Event> l_events;      // (s_min + e_max, a)
};

EventLists build_event_lists(const CuspInstance& inst);

/// Reflects time around T = horizon.lo + horizon.hi: s' in [T - e_max, T - e_min].
CuspInstance mirror_instance(const CuspInstance& inst);

/// Evaluates the slack on every interval of baptiste_intervals, in
/// lexicographic order.
CheckResult check_cubic(const CuspInstance& inst, CheckCounters* counters = nullptr);

/// For each t1 in O1, sweeps t2 over the breakpoints of every activity's
/// minimum intersection, deriving slope changes from the function values;
/// a mirrored pass covers t1 in O(t2).
CheckResult check_baptiste(const CuspInstance& inst, CheckCounters* counters = nullptr);

struct SweepOptions {
  bool mirror = true;
  /// Called at every slack test with the instance of the current pass (the
  /// original or its mirror) and the load accumulated since t1.
  std::function<void(const CuspInstance& pass, Time t1, Time t2, Energy load)> on_test;
};

/// Event sweep over t1 in {s_min} u {s_max} with slope changes read off the
/// inflection profile of each activity, followed by the same sweep on the
/// mirrored instance.
CheckResult check_sweep(const CuspInstance& inst, const SweepOptions& options = {},
                        CheckCounters* counters = nullptr);

enum class CheckerKind { none, brute, cubic, baptiste, sweep, time_table };

std::string to_string(CheckerKind kind);
/// Accepts none|brute|cubic|baptiste|sweep|tt.
std::optional<CheckerKind> parse_checker_kind(std::string_view name);

CheckResult run_checker(const CuspInstance& inst, CheckerKind kind, CheckCounters* counters = nullptr,
                        bool mirror = true);

}  // namespace erc
