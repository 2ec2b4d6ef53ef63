#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "erc/core_model.hpp"

namespace erc {

struct Interval {
  Time t1 = 0;
  Time t2 = 0;

  friend auto operator<=>(const Interval&, const Interval&) = default;
};

enum class FamilyTag { baptiste, table1, brute };

std::string to_string(FamilyTag tag);

/// Sorted, duplicate-free candidate intervals, all with t1 < t2.
struct IntervalFamily {
  std::vector<Interval> intervals;
  FamilyTag provenance = FamilyTag::brute;

  std::size_t size() const { return intervals.size(); }
};

// Sorted, duplicate-free time sets.
std::vector<Time> o1_set(const CuspInstance& inst);  // s_min, s_max, e_min
std::vector<Time> o2_set(const CuspInstance& inst);  // e_max, s_max, e_min
std::vector<Time> ot_set(const CuspInstance& inst, Time t);  // s_min + e_max - t

/// [O1 x O2] + [t1 in O1, t2 in O(t1)] + [t2 in O2, t1 in O(t2)], restricted to t1 < t2.
IntervalFamily baptiste_intervals(const CuspInstance& inst);

/// Rows of the pair characterization. Interval start comes from `i`, end from `j`.
enum class PairRow { A, B, C, D, E, F, G, H };

char to_char(PairRow row);

/// Row E as printed ends at s_min_j + e_max_j - s_min_i. Its own guard
/// (s_min_j + e_max_j >= 2 s_max_i, i.e. t1 <= t2 for t1 = s_max_i) and the
/// inflection analysis put the end at s_min_j + e_max_j - s_max_i; with the
/// printed endpoint the pair family misses overloads on small instances.
enum class RowEEndpoint { corrected, as_printed };

struct PairInterval {
  PairRow row;
  Interval interval;
};

/// Guarded intervals for the ordered pair (i, j); rows whose interval is
/// empty (t1 >= t2) are dropped. At most eight entries, in row order.
std::vector<PairInterval> pair_intervals(const Activity& i, const Activity& j,
                                         RowEEndpoint row_e = RowEEndpoint::corrected);

/// Union of pair_intervals over all ordered pairs, plus the same family
/// computed on the mirrored instance and mapped back when `with_mirror`.
IntervalFamily table1_intervals(const CuspInstance& inst, RowEEndpoint row_e = RowEEndpoint::corrected,
                                bool with_mirror = true);

/// Shape of t2 -> min_intersection(a, t1, t2) for a fixed t1.
///
/// `soi` is where the function starts growing, `doi` where it stops (the
/// only point whose left slope exceeds its right slope). `initially_on`
/// means the function already grows from t2 = t1. `delta` is t1 - s_min
/// when positive, else 0.
struct InflectionProfile {
  std::size_t activity = 0;
  Time t1 = 0;
  bool initially_on = false;
  std::optional<Time> soi;
  std::optional<Time> doi;
  Time delta = 0;
};

InflectionProfile inflection_profile(const Activity& a, Time t1);

struct DiscreteSlopes {
  Time left = 0;   // MI(t1, t2) - MI(t1, t2 - 1)
  Time right = 0;  // MI(t1, t2 + 1) - MI(t1, t2)

  friend bool operator==(const DiscreteSlopes&, const DiscreteSlopes&) = default;
};

/// One-step differences of t2 -> MI(a, t1, t2). Throws std::invalid_argument
/// unless t1 < t2 - 1.
DiscreteSlopes discrete_slopes(const Activity& a, Time t1, Time t2);

}  // namespace erc
