#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace apw {

// Latency/attempts sweep across policies and reputation scores, one cell
// per (policy, score), `trials` exchanges per cell.
struct ExperimentSpec {
  std::vector<std::string> policies = {"policy1", "policy2", "policy3"};
  std::vector<int> scores = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int trials = 30;
  double epsilon = 1.0;
  int d_max = 30;
  std::string gate = "inprocess";  // or a base URL / host:port
  std::optional<std::uint64_t> rng_seed;
  double attempt_budget_factor = 3.0;  // per exchange, times 2^d
};

struct ResultRow {
  std::string policy;
  int score = 0;
  double median_total_ms = 0.0;
  double median_solve_ms = 0.0;
  std::uint64_t median_attempts = 0;
  int difficulty_mode = 0;  // most frequent issued difficulty
};

struct ExperimentOutcome {
  std::vector<ResultRow> rows;            // successful cells, (policy, score) order
  std::vector<std::string> failed_cells;  // "policy1/score=3" style labels

  bool any_failed() const { return !failed_cells.empty(); }
};

// Runs the sweep. In-process mode launches one test-mode gate per policy
// with a fixture table mapping 10.0.0.s to score s. Throws
// std::runtime_error when an external gate is unreachable.
ExperimentOutcome run_experiment(const ExperimentSpec& spec);

// "policy,score,median_total_ms,median_solve_ms,median_attempts,difficulty_mode"
std::string rows_to_csv(const std::vector<ResultRow>& rows);

// Refuses to write an empty result set; throws on IO failure.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);

}  // namespace apw
