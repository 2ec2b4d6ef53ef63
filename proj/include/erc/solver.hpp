#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "erc/checkers.hpp"
#include "erc/core_model.hpp"

namespace erc {

/// Propagation run at every search node: precedences always, time-table
/// filtering when enabled, then `checker` on each resource as a consistency
/// test.
struct PropagationConfig {
  bool time_table = true;
  CheckerKind checker = CheckerKind::none;
  bool mirror = true;  // mirrored pass of the sweep checker

  friend bool operator==(const PropagationConfig&, const PropagationConfig&) = default;
};

/// "tt", "tt+sweep", "tt+baptiste", ... ; a bare checker name ("sweep")
/// runs that checker without time-table filtering, "none" runs precedences only.
std::optional<PropagationConfig> parse_config(std::string_view text);
std::string to_string(const PropagationConfig& config);

struct Bounds {
  Time s_min = 0;
  Time s_max = 0;

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// Start-time bounds with an undo trail. Bounds only tighten between a
/// push_level and the matching pop_level, which restores them exactly.
class SearchState {
 public:
  explicit SearchState(const RcpspInstance& inst);

  const std::vector<Bounds>& bounds() const { return bounds_; }
  Time s_min(std::size_t a) const { return bounds_[a].s_min; }
  Time s_max(std::size_t a) const { return bounds_[a].s_max; }
  bool fixed(std::size_t a) const { return bounds_[a].s_min == bounds_[a].s_max; }
  std::size_t size() const { return bounds_.size(); }

  // Tighten a bound; no-op when not tighter. Returns false when the domain
  // becomes empty (the change is still recorded on the trail).
  bool set_s_min(std::size_t a, Time v);
  bool set_s_max(std::size_t a, Time v);

  void push_level();
  void pop_level();
  std::size_t depth() const { return levels_.size(); }

 private:
  struct TrailEntry {
    std::size_t activity;
    Bounds old;
  };
  std::vector<Bounds> bounds_;
  std::vector<TrailEntry> trail_;
  std::vector<std::size_t> levels_;
};

/// Activities of `inst` with the bounds of `state` and their heights on
/// resource `r`.
CuspInstance current_view(const RcpspInstance& inst, const SearchState& state, std::size_t r);

struct PropagationStatus {
  bool failed = false;
  bool changed = false;
};

/// s_min(succ) >= s_min(pred) + p(pred) forward and
/// s_max(pred) <= s_max(succ) - p(pred) backward, in topological order.
PropagationStatus precedence_filter(const RcpspInstance& inst, SearchState& state);

struct PropagationTelemetry {
  std::chrono::nanoseconds checker_time{0};
  CheckCounters counters;
};

/// Precedence and time-table filtering to a joint fixpoint, then the
/// configured checker per resource. Returns false on failure.
bool propagate(const RcpspInstance& inst, SearchState& state, const PropagationConfig& config,
               PropagationTelemetry* telemetry = nullptr);

struct Decision {
  std::size_t activity = 0;
  Time value = 0;  // left branch s = value, right branch s >= value + 1

  friend bool operator==(const Decision&, const Decision&) = default;
};

/// Smallest s_max - s_min among unfixed activities, lowest index on ties.
/// Nothing when every activity is fixed.
std::optional<Decision> branch_first_fail(const SearchState& state);

struct SearchLimits {
  std::optional<std::uint64_t> node_limit;
  std::optional<std::chrono::microseconds> time_limit;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t fails = 0;
  std::uint64_t solutions = 0;
  double wall_time_us = 0;
  double time_per_node_us = 0;
  double checker_time_us = 0;
  double checker_time_per_node_us = 0;
  std::uint64_t intervals_examined = 0;
  std::uint64_t events_processed = 0;
  bool proved_optimal = false;  // search tree fully explored
  bool budget_exhausted = false;
};

enum class DecisionStatus { sat, unsat, unknown };

std::string to_string(DecisionStatus status);

struct DecisionResult {
  DecisionStatus status = DecisionStatus::unknown;
  std::optional<std::vector<Time>> schedule;  // start times
  SearchStats stats;
};

DecisionResult solve_decision(const RcpspInstance& inst, const PropagationConfig& config,
                              const SearchLimits& limits = {});

struct MakespanResult {
  std::optional<Time> makespan;
  std::optional<std::vector<Time>> schedule;
  bool proved_optimal = false;
  SearchStats stats;
};

/// Depth-first branch and bound: every solution tightens e_max <= best - 1
/// for the rest of the search.
MakespanResult minimize_makespan(const RcpspInstance& inst, const PropagationConfig& config,
                                 const SearchLimits& limits = {});

}  // namespace erc
