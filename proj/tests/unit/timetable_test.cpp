#include <random>

#include "doctest.h"
#include "erc/timetable.hpp"
#include "../oracles.hpp"

using namespace erc;

namespace {

CuspInstance staggered(Energy capacity) {
  return CuspInstance::make({Activity::make(0, 0, 0, 2, 1), Activity::make(1, 1, 1, 2, 1)}, capacity);
}

}  // namespace

TEST_SUITE("timetable") {
  TEST_CASE("compulsory parts") {
    CHECK(compulsory_part(Activity::make(0, 2, 4, 4, 3)) == CompulsoryPart{4, 6, 3});
    CHECK_FALSE(compulsory_part(Activity::make(0, 0, 10, 2, 1)));
    CHECK(compulsory_part(Activity::make(0, 3, 3, 2, 2)) == CompulsoryPart{3, 5, 2});
  }

  TEST_CASE("profile of two staggered fixed activities") {
    const Profile prof = build_profile(staggered(1));
    CHECK(prof.steps == std::vector<ProfileStep>{{0, 1}, {1, 2}, {2, 1}, {3, 0}});
    CHECK(prof.height_at(-1) == 0);
    CHECK(prof.height_at(1) == 2);
    CHECK(prof.height_at(3) == 0);
    CHECK(prof.max_height() == 2);
  }

  TEST_CASE("profile corner cases") {
    CHECK(build_profile(CuspInstance::make({Activity::make(0, 0, 10, 2, 1)}, 1)).steps.empty());
    const Profile single = build_profile(CuspInstance::make({Activity::make(0, 4, 4, 3, 2)}, 2));
    CHECK(single.steps == std::vector<ProfileStep>{{4, 2}, {7, 0}});
  }

  TEST_CASE("profile matches pointwise sums") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 200; ++k) {
      const CuspInstance inst = oracle::small_instance(rng, 6, 20, 8, 4, 6);
      const Profile prof = build_profile(inst);
      for (Time t = -1; t <= 21; ++t) {
        Energy sum = 0;
        for (const auto& a : inst.activities)
          if (a.s_max <= t && t < a.e_min) sum += a.h;
        REQUIRE(prof.height_at(t) == sum);
      }
    }
  }

  TEST_CASE("profile check") {
    const CheckResult over = tt_check(staggered(1));
    REQUIRE_FALSE(over.feasible);
    CHECK(*over.witness == Witness{1, 2, -1});
    CHECK(tt_check(staggered(2)).feasible);
    CHECK(tt_check(CuspInstance::make({}, 1)).feasible);
  }

  TEST_CASE("filter pushes a start past the profile") {
    const CuspInstance inst =
        CuspInstance::make({Activity::make(0, 0, 0, 2, 1), Activity::make(1, 0, 5, 2, 1)}, 1);
    const FilterResult r = tt_filter(inst);
    CHECK_FALSE(r.failed);
    REQUIRE(r.updates.size() == 1);
    CHECK(r.updates[0] == DomainUpdate{1, 2, std::nullopt});
  }

  TEST_CASE("filter leaves free and zero-height activities alone") {
    CHECK(tt_filter(CuspInstance::make({Activity::make(0, 0, 6, 2, 1), Activity::make(1, 0, 5, 2, 1)}, 1))
              .updates.empty());
    CHECK(tt_filter(CuspInstance::make({Activity::make(0, 0, 0, 2, 1), Activity::make(1, 0, 5, 2, 0)}, 1))
              .updates.empty());
  }

  TEST_CASE("filter is idempotent") {
    std::mt19937_64 rng(32);
    for (int k = 0; k < 300; ++k) {
      const CuspInstance inst = oracle::small_instance(rng, 5, 16, 6, 3, 4);
      const FilterResult first = tt_filter(inst);
      if (first.failed) continue;
      const FilterResult second = tt_filter(apply_updates(inst, first.updates));
      CHECK_FALSE(second.failed);
      CHECK(second.updates.empty());
    }
  }

  TEST_CASE("filter never removes a start used by a feasible schedule") {
    std::mt19937_64 rng(33);
    int checked = 0;
    for (int k = 0; k < 300; ++k) {
      const CuspInstance inst = oracle::small_instance(rng, 4, 10, 5, 3, 4);
      const FilterResult r = tt_filter(inst);
      const CuspInstance after = r.failed ? inst : apply_updates(inst, r.updates);
      oracle::for_each_schedule(inst, [&](const std::vector<Time>& starts) {
        if (!oracle::cusp_schedule_fits(inst, starts)) return;
        ++checked;
        REQUIRE_FALSE(r.failed);
        for (std::size_t a = 0; a < starts.size(); ++a) {
          REQUIRE(after.activities[a].s_min <= starts[a]);
          REQUIRE(starts[a] <= after.activities[a].s_max);
        }
      });
    }
    CHECK(checked > 0);
  }
}
