#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "erc/bench.hpp"

using namespace erc;

TEST_SUITE("bench") {
  TEST_CASE("csv round trip and header") {
    std::vector<BenchRow> rows(2);
    rows[0] = {"random10-1", "tt+sweep", "sat", 12, 340.5, 28.375, 99, true, 3.25};
    rows[1] = {"odd,name", "tt", "error: \"x\"", 0, 0, 0, 0, false, 0};
    std::stringstream ss;
    write_csv(ss, rows);
    const std::string text = ss.str();
    CHECK(text.rfind("instance,config,result,nodes,time_us,time_per_node_us,intervals_examined,proved_optimal", 0) == 0);
    const auto back = read_csv(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[0].instance == "random10-1");
    CHECK(back[0].nodes == 12);
    CHECK(back[0].time_per_node_us == doctest::Approx(28.375));
    CHECK(back[0].proved_optimal);
    CHECK(back[1].instance == "odd,name");
    CHECK(back[1].result == "error: \"x\"");
  }

  TEST_CASE("bad csv header is rejected") {
    std::stringstream ss("a,b,c\n");
    CHECK_THROWS(read_csv(ss));
  }

  TEST_CASE("one row per instance and config, deterministic nodes") {
    const Suite suite = resolve_suite("random10", 5);
    REQUIRE(suite.entries.size() == 5);
    CHECK(suite.objective == Objective::decision);
    const std::vector<PropagationConfig> configs = {*parse_config("tt+sweep"), *parse_config("tt+baptiste"),
                                                    *parse_config("tt+cubic")};
    BenchOptions options;
    options.limits.node_limit = 5000;
    const auto a = run_bench(suite, configs, options);
    options.jobs = 3;
    const auto b = run_bench(suite, configs, options);
    REQUIRE(a.size() == 15);
    REQUIRE(b.size() == 15);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].instance == b[k].instance);
      CHECK(a[k].config == b[k].config);
      CHECK(a[k].nodes == b[k].nodes);
      CHECK(a[k].result == b[k].result);
    }
    for (std::size_t k = 0; k < a.size(); k += 3) {
      CHECK(a[k].nodes == a[k + 1].nodes);
      CHECK(a[k].nodes == a[k + 2].nodes);
    }
    const auto summary = summarize(a);
    REQUIRE(summary.size() == 3);
    CHECK(summary[0].runs == 5);
  }

  TEST_CASE("missing files become error rows") {
    const Suite suite = resolve_suite("/nonexistent/suite.txt");
    REQUIRE(suite.entries.size() == 1);
    const auto rows = run_bench(suite, {*parse_config("tt")});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].result.rfind("error", 0) == 0);
  }

  TEST_CASE("pair reduction") {
    std::vector<CuspInstance> corpus;
    for (const auto& e : resolve_suite("random20", 10).entries) corpus.push_back(e.instance->resource_view(0));
    const PairReduction r = measure_pair_reduction(corpus, 500, 3);
    CHECK(r.pairs == 500);
    CHECK(r.max_intervals <= 8);
    CHECK(r.factor == doctest::Approx(15.0 / r.mean_intervals));
  }

  TEST_CASE("durations") {
    using std::chrono::microseconds;
    CHECK(parse_duration("300s") == microseconds(300000000));
    CHECK(parse_duration("250ms") == microseconds(250000));
    CHECK(parse_duration("2m") == microseconds(120000000));
    CHECK(parse_duration("1.5") == microseconds(1500000));
    CHECK_FALSE(parse_duration("soon"));
    CHECK_FALSE(parse_duration("5 days"));
  }

  TEST_CASE("time limit from the environment") {
    ::setenv("ERC_TIME_LIMIT", "2s", 1);
    CHECK(time_limit_from_env() == std::chrono::microseconds(2000000));
    ::setenv("ERC_TIME_LIMIT", "never", 1);
    CHECK_FALSE(time_limit_from_env());
    ::unsetenv("ERC_TIME_LIMIT");
    CHECK_FALSE(time_limit_from_env());
  }

  TEST_CASE("median") {
    CHECK(median({}) == 0);
    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 2, 3}) == doctest::Approx(2.5));
  }
}
