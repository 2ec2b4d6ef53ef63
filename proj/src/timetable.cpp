#include "erc/timetable.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace erc {

std::optional<CompulsoryPart> compulsory_part(const Activity& a) {
  if (a.s_max < a.e_min) return CompulsoryPart{a.s_max, a.e_min, a.h};
  return std::nullopt;
}

Energy Profile::height_at(Time t) const {
  auto it = std::upper_bound(steps.begin(), steps.end(), t, [](Time x, const ProfileStep& s) { return x < s.time; });
  return it == steps.begin() ? 0 : std::prev(it)->height;
}

Energy Profile::max_height() const {
  Energy best = 0;
  for (const auto& s : steps) best = std::max(best, s.height);
  return best;
}

Profile build_profile(const CuspInstance& inst) {
  std::map<Time, Energy> delta;
  for (const auto& a : inst.activities) {
    if (a.h == 0) continue;
    if (auto cp = compulsory_part(a)) {
      delta[cp->start] += cp->h;
      delta[cp->end] -= cp->h;
    }
  }
  Profile prof;
  prof.capacity = inst.capacity;
  Energy level = 0;
  for (const auto& [t, d] : delta) {
    if (d == 0) continue;
    level += d;
    if (!prof.steps.empty() && prof.steps.back().height == level) continue;
    prof.steps.push_back({t, level});
  }
  return prof;
}

CheckResult tt_check(const CuspInstance& inst) {
  const Profile prof = build_profile(inst);
  for (const auto& s : prof.steps)
    if (s.height > inst.capacity) return CheckResult::fail({s.time, s.time + 1, inst.capacity - s.height});
  return CheckResult::pass();
}

namespace {

constexpr Time kForever = std::numeric_limits<Time>::max();

// Visits the pieces of the profile that start inside [lo, hi), split at the
// boundaries of the excluded part [own_lo, own_hi) of height own_h. The last
// piece is not clipped at hi. fn(x, y, height) returns false to stop.
template <typename Fn>
void for_each_piece(const Profile& prof, Time lo, Time hi, Time own_lo, Time own_hi, Energy own_h, Fn&& fn) {
  const auto& steps = prof.steps;
  auto it = std::upper_bound(steps.begin(), steps.end(), lo, [](Time x, const ProfileStep& s) { return x < s.time; });
  std::ptrdiff_t k = (it - steps.begin()) - 1;
  Time t = lo;
  while (t < hi) {
    const Energy height = k >= 0 ? steps[static_cast<std::size_t>(k)].height : 0;
    const Time seg_end = static_cast<std::size_t>(k + 1) < steps.size() ? steps[static_cast<std::size_t>(k + 1)].time
                                                                         : kForever;
    // Split [t, seg_end) at own_lo and own_hi.
    Time x = t;
    while (x < seg_end && x < hi) {
      Time y = seg_end;
      Energy eff = height;
      if (x < own_lo) {
        y = std::min(y, own_lo);
      } else if (x < own_hi) {
        y = std::min(y, own_hi);
        eff -= own_h;
      }
      if (!fn(x, y, eff)) return;
      x = y;
    }
    t = seg_end;
    ++k;
  }
}

}  // namespace

FilterResult tt_filter(const CuspInstance& inst) {
  const std::size_t n = inst.size();
  const Energy cap = inst.capacity;
  std::vector<Time> lo(n), hi(n);
  Time budget = 1;
  for (std::size_t k = 0; k < n; ++k) {
    lo[k] = inst.activities[k].s_min;
    hi[k] = inst.activities[k].s_max;
    budget += std::max<Time>(0, hi[k] - lo[k]) + 1;
  }

  FilterResult result;
  CuspInstance current = inst;
  for (Time round = 0;; ++round) {
    // Each productive round removes at least one start value.
    if (round > budget) throw std::logic_error("tt_filter did not reach a fixpoint");
    for (std::size_t k = 0; k < n; ++k) {
      Activity& a = current.activities[k];
      a = Activity::make(a.id, lo[k], hi[k], a.p, a.h);
    }
    const Profile prof = build_profile(current);
    if (prof.max_height() > cap) {
      result.failed = true;
      return result;
    }

    bool changed = false;
    for (std::size_t k = 0; k < n; ++k) {
      const Activity& a = current.activities[k];
      if (a.h == 0 || a.p == 0) continue;
      if (a.h > cap) {
        result.failed = true;
        result.wiped_out = k;
        return result;
      }
      const auto cp = compulsory_part(a);
      const Time own_lo = cp ? cp->start : 0;
      const Time own_hi = cp ? cp->end : 0;
      auto conflicts = [&](Energy eff) { return eff + a.h > cap; };

      // Earliest start: jump past the last conflicting piece in the window.
      for (;;) {
        std::optional<Time> jump;
        for_each_piece(prof, lo[k], lo[k] + a.p, own_lo, own_hi, a.h, [&](Time, Time y, Energy eff) {
          if (conflicts(eff)) jump = y;
          return true;
        });
        if (!jump) break;
        lo[k] = *jump;
        changed = true;
        if (lo[k] > hi[k]) break;
      }
      // Latest start: end before the first conflicting piece in the window.
      while (lo[k] <= hi[k]) {
        std::optional<Time> first;
        for_each_piece(prof, hi[k], hi[k] + a.p, own_lo, own_hi, a.h, [&](Time x, Time, Energy eff) {
          if (!conflicts(eff)) return true;
          first = std::max(x, hi[k]);
          return false;
        });
        if (!first) break;
        hi[k] = *first - a.p;
        changed = true;
      }
      if (lo[k] > hi[k]) {
        result.failed = true;
        result.wiped_out = k;
        return result;
      }
    }
    if (!changed) break;
  }

  for (std::size_t k = 0; k < n; ++k) {
    const Activity& a = inst.activities[k];
    DomainUpdate up{k, std::nullopt, std::nullopt};
    if (lo[k] != a.s_min) up.new_s_min = lo[k];
    if (hi[k] != a.s_max) up.new_s_max = hi[k];
    if (up.new_s_min || up.new_s_max) result.updates.push_back(up);
  }
  return result;
}

CuspInstance apply_updates(const CuspInstance& inst, const std::vector<DomainUpdate>& updates) {
  CuspInstance out = inst;
  for (const auto& up : updates) {
    Activity& a = out.activities.at(up.activity);
    a = Activity::make(a.id, up.new_s_min.value_or(a.s_min), up.new_s_max.value_or(a.s_max), a.p, a.h);
  }
  return out;
}

}  // namespace erc
