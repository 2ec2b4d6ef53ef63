#pragma once

#include <optional>
#include <vector>

#include "erc/core_model.hpp"

namespace erc {

struct CompulsoryPart {
  Time start = 0;
  Time end = 0;
  Energy h = 0;

  friend bool operator==(const CompulsoryPart&, const CompulsoryPart&) = default;
};

/// [s_max, e_min) when non-empty.
std::optional<CompulsoryPart> compulsory_part(const Activity& a);

struct ProfileStep {
  Time time = 0;
  Energy height = 0;

  friend bool operator==(const ProfileStep&, const ProfileStep&) = default;
};

/// Piecewise-constant resource usage: `height` holds from `time` up to the
/// next step. Times strictly increase, consecutive heights differ and the
/// last height is 0.
struct Profile {
  std::vector<ProfileStep> steps;
  Energy capacity = 0;

  Energy height_at(Time t) const;
  Energy max_height() const;
};

Profile build_profile(const CuspInstance& inst);

/// Fails with witness [t, t + 1] at the first time the profile exceeds the
/// capacity; the witness slack is C minus the profile height there.
CheckResult tt_check(const CuspInstance& inst);

struct DomainUpdate {
  std::size_t activity = 0;
  std::optional<Time> new_s_min;
  std::optional<Time> new_s_max;

  friend bool operator==(const DomainUpdate&, const DomainUpdate&) = default;
};

struct FilterResult {
  bool failed = false;
  std::optional<std::size_t> wiped_out;  // activity whose domain emptied
  std::vector<DomainUpdate> updates;     // net tightening per activity, by index
};

/// Time-table bound filtering to a local fixpoint. An activity may not start
/// where its window would meet a time whose profile (without the activity's
/// own compulsory part) plus its height exceeds the capacity.
FilterResult tt_filter(const CuspInstance& inst);

/// The instance with `updates` applied, end bounds relinked.
CuspInstance apply_updates(const CuspInstance& inst, const std::vector<DomainUpdate>& updates);

}  // namespace erc
