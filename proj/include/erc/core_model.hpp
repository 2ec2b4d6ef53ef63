#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace erc {

using Time = std::int64_t;
using Energy = std::int64_t;

/// One non-preemptive task on a cumulative resource.
///
/// Start and end are bound variables linked by the fixed processing time:
/// e_min = s_min + p and e_max = s_max + p. Use Activity::make to obtain a
/// linked activity; the raw fields stay public so that malformed data can be
/// represented and reported by validate_instance.
struct Activity {
  std::size_t id = 0;
  Time s_min = 0;
  Time s_max = 0;
  Time e_min = 0;
  Time e_max = 0;
  Time p = 0;
  Energy h = 0;

  static Activity make(std::size_t id, Time s_min, Time s_max, Time p, Energy h);

  bool fixed() const { return s_min == s_max; }
  Time width() const { return s_max - s_min; }

  friend bool operator==(const Activity&, const Activity&) = default;
};

struct Horizon {
  Time lo = 0;
  Time hi = 0;

  friend bool operator==(const Horizon&, const Horizon&) = default;
};

/// Activities sharing one resource of capacity `capacity`.
struct CuspInstance {
  std::vector<Activity> activities;
  Energy capacity = 0;
  Horizon horizon;

  /// Horizon defaults to [min s_min, max e_max] ([0, 0] when empty).
  static CuspInstance make(std::vector<Activity> activities, Energy capacity);
  static CuspInstance make(std::vector<Activity> activities, Energy capacity, Horizon horizon);

  std::size_t size() const { return activities.size(); }
  bool empty() const { return activities.empty(); }

  friend bool operator==(const CuspInstance&, const CuspInstance&) = default;
};

Horizon default_horizon(const std::vector<Activity>& activities);

struct Resource {
  Energy capacity = 0;
  std::vector<Energy> heights;  // one entry per activity

  friend bool operator==(const Resource&, const Resource&) = default;
};

struct Precedence {
  std::size_t pred = 0;
  std::size_t succ = 0;

  friend bool operator==(const Precedence&, const Precedence&) = default;
};

/// Multi-resource project: shared time windows, one height vector per
/// resource and a precedence DAG. The `h` field of `activities` mirrors the
/// first resource (0 without resources) and is not consulted; resource_view
/// fills it from the selected resource.
struct RcpspInstance {
  std::vector<Activity> activities;
  std::vector<Resource> resources;
  std::vector<Precedence> precedences;
  Horizon horizon;

  static RcpspInstance from_cusp(const CuspInstance& inst);

  std::size_t size() const { return activities.size(); }

  /// Activities with their heights on resource `r`, horizon of the project.
  CuspInstance resource_view(std::size_t r) const;

  friend bool operator==(const RcpspInstance&, const RcpspInstance&) = default;
};

struct Witness {
  Time t1 = 0;
  Time t2 = 0;
  Energy slack = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Checker verdict. A failure always carries an interval with negative slack.
struct CheckResult {
  bool feasible = true;
  std::optional<Witness> witness;

  static CheckResult pass() { return {}; }
  static CheckResult fail(Witness w) { return {false, w}; }
};

/// max(0, min(p, t2 - t1, e_min - t1, t2 - s_max)): the part of `a` that lies
/// inside [t1, t2) whatever its placement. Throws std::invalid_argument
/// unless t1 < t2.
Time min_intersection(const Activity& a, Time t1, Time t2);

/// C * (t2 - t1) - sum_a h_a * min_intersection(a, t1, t2). Throws unless t1 < t2.
Energy slack(const CuspInstance& inst, Time t1, Time t2);

/// Exhaustive scan of every integer pair t1 < t2 of the horizon. The witness
/// is the lexicographically smallest failing pair.
CheckResult brute_force_check(const CuspInstance& inst);

enum class ViolationKind {
  bound_order,
  link,
  negative_duration,
  negative_height,
  outside_horizon,
  capacity,
  precedence_index,
  precedence_cycle,
  resource_shape,
};

struct Violation {
  ViolationKind kind;
  std::optional<std::size_t> activity;
  std::string message;
};

std::string to_string(ViolationKind kind);

std::vector<Violation> validate_instance(const CuspInstance& inst);
std::vector<Violation> validate_instance(const RcpspInstance& inst);

/// A cycle in the precedence graph as a closed walk (first == last), or
/// nothing when the graph is acyclic. Out-of-range indices are ignored.
std::optional<std::vector<std::size_t>> find_precedence_cycle(std::size_t n,
                                                              const std::vector<Precedence>& precedences);

}  // namespace erc
