#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "apw/bench.hpp"

using namespace apw;

TEST_CASE("small in-process sweep produces one row per cell") {
  ExperimentSpec spec;
  spec.policies = {"policy1"};
  spec.scores = {0, 1};
  spec.trials = 5;
  spec.rng_seed = 31337;

  auto outcome = run_experiment(spec);
  CHECK(!outcome.any_failed());
  REQUIRE(outcome.rows.size() == 2);

  CHECK(outcome.rows[0].policy == "policy1");
  CHECK(outcome.rows[0].score == 0);
  CHECK(outcome.rows[0].difficulty_mode == 1);
  CHECK(outcome.rows[0].median_attempts >= 1);

  CHECK(outcome.rows[1].score == 1);
  CHECK(outcome.rows[1].difficulty_mode == 2);
}

TEST_CASE("policy2 demands far more work than policy1 at the same score") {
  ExperimentSpec spec;
  spec.policies = {"policy1", "policy2"};
  spec.scores = {5};
  spec.trials = 15;
  spec.rng_seed = 424242;

  auto outcome = run_experiment(spec);
  REQUIRE(outcome.rows.size() == 2);
  const auto& p1 = outcome.rows[0];
  const auto& p2 = outcome.rows[1];
  CHECK(p1.difficulty_mode == 6);
  CHECK(p2.difficulty_mode == 10);
  // expected attempts 2^6 = 64 vs 2^10 = 1024; medians separate cleanly
  CHECK(p2.median_attempts > p1.median_attempts);

  SUBCASE("csv layout is fixed") {
    auto csv = rows_to_csv(outcome.rows);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "policy,score,median_total_ms,median_solve_ms,median_attempts,difficulty_mode");
    std::string row1, row2, extra;
    REQUIRE(std::getline(lines, row1));
    REQUIRE(std::getline(lines, row2));
    CHECK(!std::getline(lines, extra));
    CHECK(row1.substr(0, 10) == "policy1,5,");
    CHECK(row2.substr(0, 10) == "policy2,5,");
  }
}

TEST_CASE("emit_csv writes the file and round-trips") {
  std::vector<ResultRow> rows;
  rows.push_back({"policy1", 0, 1.5, 0.25, 2, 1});
  rows.push_back({"policy3", 7, 12.125, 11.0, 300, 8});

  const std::string path = "bench_test_out.csv";
  emit_csv(rows, path);

  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header, line1, line2;
  std::getline(in, header);
  std::getline(in, line1);
  std::getline(in, line2);
  CHECK(line1 == "policy1,0,1.500,0.250,2,1");
  CHECK(line2 == "policy3,7,12.125,11.000,300,8");
  in.close();
  std::remove(path.c_str());
}

TEST_CASE("emit_csv refuses an empty result set") {
  CHECK_THROWS_AS(emit_csv({}, "never_written.csv"), std::invalid_argument);
  std::ifstream in("never_written.csv");
  CHECK(!in.good());
}

TEST_CASE("spec validation") {
  ExperimentSpec spec;
  spec.trials = 0;
  CHECK_THROWS_AS(run_experiment(spec), std::invalid_argument);

  spec.trials = 1;
  spec.scores = {11};
  CHECK_THROWS_AS(run_experiment(spec), std::invalid_argument);
}

TEST_CASE("external gate that is unreachable raises") {
  ExperimentSpec spec;
  spec.policies = {"policy1"};
  spec.scores = {0};
  spec.trials = 1;
  spec.gate = "127.0.0.1:1";
  CHECK_THROWS_AS(run_experiment(spec), std::runtime_error);
}
