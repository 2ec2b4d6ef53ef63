#include <random>

#include "doctest.h"
#include "erc/checkers.hpp"
#include "erc/generator.hpp"
#include "erc/intervals.hpp"
#include "../oracles.hpp"

using namespace erc;

namespace {

CuspInstance two_fixed() {
  return CuspInstance::make({Activity::make(0, 0, 0, 2, 1), Activity::make(1, 0, 0, 2, 1)}, 1);
}

const CheckerKind kQuadratic[] = {CheckerKind::cubic, CheckerKind::baptiste, CheckerKind::sweep};

}  // namespace

TEST_SUITE("checkers") {
  TEST_CASE("overload and trivial instances") {
    for (CheckerKind kind : kQuadratic) {
      CAPTURE(to_string(kind));
      CHECK_FALSE(run_checker(two_fixed(), kind).feasible);
      CHECK(run_checker(CuspInstance::make({}, 2), kind).feasible);
      CHECK(run_checker(CuspInstance::make({Activity::make(0, 0, 4, 3, 2)}, 2), kind).feasible);
    }
  }

  TEST_CASE("sweep witness on the overload instance") {
    const CheckResult r = check_sweep(two_fixed());
    REQUIRE(r.witness);
    CHECK(*r.witness == Witness{0, 2, -2});
  }

  TEST_CASE("witnesses carry their true slack") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 400; ++k) {
      const CuspInstance inst = oracle::small_instance(rng, 5, 20, 8, 4, 6);
      for (CheckerKind kind : kQuadratic) {
        const CheckResult r = run_checker(inst, kind);
        if (r.feasible) continue;
        REQUIRE(r.witness);
        CHECK(r.witness->t1 < r.witness->t2);
        CHECK(r.witness->slack < 0);
        CHECK(slack(inst, r.witness->t1, r.witness->t2) == r.witness->slack);
      }
    }
  }

  TEST_CASE("verdicts equal brute force on small instances") {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 1500; ++k) {
      const CuspInstance inst = oracle::small_instance(rng, 1 + static_cast<std::size_t>(k % 7), 4 + k % 25, 9, 5, 7);
      const bool truth = oracle::global_min_slack(inst).slack >= 0;
      for (CheckerKind kind : kQuadratic) {
        CAPTURE(k);
        CAPTURE(to_string(kind));
        REQUIRE(run_checker(inst, kind).feasible == truth);
      }
    }
  }

  TEST_CASE("verdicts equal brute force on generated instances") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      GenParams params;
      params.n = 10;
      params.seed = seed;
      const CuspInstance inst = gen_random(params);
      const bool truth = brute_force_check(inst).feasible;
      for (CheckerKind kind : kQuadratic) CHECK(run_checker(inst, kind).feasible == truth);
    }
  }

  TEST_CASE("mirror examples") {
    const CuspInstance a = CuspInstance::make({Activity::make(0, 2, 4, 4, 1)}, 1, Horizon{0, 10});
    CHECK(mirror_instance(a).activities[0] == a.activities[0]);

    const CuspInstance b = CuspInstance::make({Activity::make(0, 0, 1, 2, 1)}, 1, Horizon{0, 10});
    const Activity m = mirror_instance(b).activities[0];
    CHECK(m.s_min == 7);
    CHECK(m.s_max == 8);
    CHECK(m.e_min == 9);
    CHECK(m.e_max == 10);
  }

  TEST_CASE("slack is mirror invariant") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 100; ++k) {
      const CuspInstance inst = oracle::small_instance(rng, 4, 15, 6, 4, 6);
      const CuspInstance m = mirror_instance(inst);
      const Time pivot = inst.horizon.lo + inst.horizon.hi;
      for (Time t1 = inst.horizon.lo; t1 < inst.horizon.hi; ++t1)
        for (Time t2 = t1 + 1; t2 <= inst.horizon.hi; ++t2)
          REQUIRE(slack(inst, t1, t2) == slack(m, pivot - t2, pivot - t1));
    }
  }

  TEST_CASE("event lists") {
    const EventLists one = build_event_lists(CuspInstance::make({Activity::make(0, 2, 4, 4, 1)}, 1));
    CHECK(one.e_max_events == std::vector<Event>{{8, 0}});
    CHECK(one.e_min_events == std::vector<Event>{{6, 0}});
    CHECK(one.s_max_events == std::vector<Event>{{4, 0}});
    CHECK(one.l_events == std::vector<Event>{{10, 0}});

    const EventLists none = build_event_lists(CuspInstance::make({}, 1));
    CHECK(none.e_max_events.empty());
    CHECK(none.l_events.empty());
  }

  TEST_CASE("sweep visits every later event of each start") {
    // Two activities, generous capacity: no early exit, so every event after
    // each start time is merged once per pass.
    const CuspInstance inst =
        CuspInstance::make({Activity::make(0, 0, 2, 3, 1), Activity::make(1, 0, 1, 2, 1)}, 5);
    auto expected_for = [](const CuspInstance& c) {
      std::uint64_t total = 0;
      std::vector<Time> starts;
      for (const auto& a : c.activities) {
        starts.push_back(a.s_min);
        starts.push_back(a.s_max);
      }
      std::sort(starts.begin(), starts.end());
      starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
      for (Time t1 : starts)
        for (const auto& a : c.activities)
          for (Time t : {a.s_max, a.e_min, a.e_max, a.s_min + a.e_max - t1}) total += t > t1 ? 1 : 0;
      return total;
    };
    CheckCounters counters;
    CHECK(check_sweep(inst, {}, &counters).feasible);
    CHECK(counters.events_processed == expected_for(inst) + expected_for(mirror_instance(inst)));

    // From t1 = 0 all eight events of the two activities lie ahead.
    std::uint64_t first = 0;
    for (const auto& a : inst.activities)
      for (Time t : {a.s_max, a.e_min, a.e_max, a.s_min + a.e_max}) first += t > 0 ? 1 : 0;
    CHECK(first == 8);
  }

  TEST_CASE("sweep load equals slack at every test") {
    std::mt19937_64 rng(14);
    std::size_t tests = 0;
    for (int k = 0; k < 200; ++k) {
      const CuspInstance inst = oracle::small_instance(rng, 5, 20, 8, 4, 8);
      SweepOptions options;
      options.on_test = [&](const CuspInstance& pass, Time t1, Time t2, Energy load) {
        ++tests;
        REQUIRE(load == oracle::slack_by_units(pass, t1, t2));
      };
      check_sweep(inst, options);
    }
    CHECK(tests > 0);
  }

  TEST_CASE("work bounds") {
    std::mt19937_64 rng(15);
    for (int k = 0; k < 100; ++k) {
      const CuspInstance inst = oracle::small_instance(rng, 8, 30, 10, 5, 20);
      const auto n = static_cast<std::uint64_t>(inst.size());
      CheckCounters sweep, baptiste, cubic;
      check_sweep(inst, {}, &sweep);
      check_baptiste(inst, &baptiste);
      check_cubic(inst, &cubic);
      // Two passes, at most 2n starts each, at most 4n events per start.
      CHECK(sweep.events_processed <= 2 * (2 * n) * (4 * n));
      CHECK(sweep.intervals_examined <= sweep.events_processed);
      CHECK(baptiste.events_processed <= 2 * (3 * n) * (4 * n));
      CHECK(cubic.intervals_examined <= baptiste_intervals(inst).size());
    }
  }

  TEST_CASE("checker names") {
    for (CheckerKind kind : {CheckerKind::none, CheckerKind::brute, CheckerKind::cubic, CheckerKind::baptiste,
                             CheckerKind::sweep, CheckerKind::time_table})
      CHECK(parse_checker_kind(to_string(kind)) == kind);
    CHECK_FALSE(parse_checker_kind("edge-finding"));
  }
}
