#include "apw/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "apw/client.hpp"
#include "apw/gate_server.hpp"

namespace apw {
namespace {

template <typename T>
T lower_median(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

int difficulty_mode(const std::vector<int>& difficulties) {
  std::map<int, int> counts;
  for (int d : difficulties) ++counts[d];
  int best_d = 0, best_n = 0;
  for (auto [d, n] : counts) {
    if (n > best_n) {  // ties resolve to the smallest difficulty
      best_d = d;
      best_n = n;
    }
  }
  return best_d;
}

std::string cell_label(const std::string& policy, int score) {
  return policy + "/score=" + std::to_string(score);
}

ScoreTable fixture_table(const std::vector<int>& scores) {
  ScoreTable table;
  for (int s : scores) {
    table["10.0.0." + std::to_string(s)] = static_cast<double>(s);
  }
  return table;
}

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", ms);
  return buf;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
  for (int s : spec.scores) {
    if (s < 0 || s > 10) throw std::invalid_argument("scores must lie in [0,10]");
  }

  const bool inprocess = spec.gate == "inprocess";
  ExperimentOutcome outcome;

  std::uint64_t policy_index = 0;
  for (const auto& policy : spec.policies) {
    std::unique_ptr<GateServer> server;
    std::string base_url;

    if (inprocess) {
      GateConfig config;
      config.listen = "127.0.0.1:0";
      config.policy = policy;
      config.epsilon = spec.epsilon;
      config.d_max = spec.d_max;
      config.test_mode = true;
      if (spec.rng_seed) config.rng_seed = *spec.rng_seed + policy_index;
      auto scorer = std::make_shared<FixtureScorer>(fixture_table(spec.scores));
      server = std::make_unique<GateServer>(std::move(config), std::move(scorer));
      if (!server->start()) throw std::runtime_error("cannot start in-process gate");
      base_url = "http://127.0.0.1:" + std::to_string(server->port()) + "/";
    } else {
      base_url = spec.gate;
      if (base_url.find("://") == std::string::npos) {
        base_url = "http://" + base_url;
      }
      if (base_url.back() != '/') base_url += '/';
    }
    ++policy_index;

    for (int score : spec.scores) {
      std::vector<double> total_ms, solve_ms;
      std::vector<std::uint64_t> attempts;
      std::vector<int> difficulties;
      bool failed = false;

      for (int t = 0; t < spec.trials; ++t) {
        ClientOptions options;
        options.url = base_url;
        options.spoof_ip = "10.0.0." + std::to_string(score);
        // Cell-scale solve budget: 3x the expected attempts of the whole
        // cell. Exceeding it is a ~e^-(3*trials) event, so a budget abort
        // means something is actually wrong rather than an unlucky draw.
        options.budget_factor = spec.attempt_budget_factor * spec.trials;
        ExchangeResult r = request_with_pow(options);
        if (!inprocess && r.error == ClientError::ConnectionFailed) {
          throw std::runtime_error("gate unavailable: " + r.message);
        }
        if (!r.ok() || r.report.outcome != 200) {
          failed = true;
          break;
        }
        total_ms.push_back(r.report.total_ms);
        solve_ms.push_back(r.report.solve_ms);
        attempts.push_back(r.report.attempts);
        difficulties.push_back(r.report.difficulty);
      }

      if (failed) {
        outcome.failed_cells.push_back(cell_label(policy, score));
        continue;
      }
      ResultRow row;
      row.policy = policy;
      row.score = score;
      row.median_total_ms = lower_median(total_ms);
      row.median_solve_ms = lower_median(solve_ms);
      row.median_attempts = lower_median(attempts);
      row.difficulty_mode = difficulty_mode(difficulties);
      outcome.rows.push_back(std::move(row));
    }
  }
  return outcome;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::string out =
      "policy,score,median_total_ms,median_solve_ms,median_attempts,difficulty_mode\n";
  for (const auto& row : rows) {
    out += row.policy;
    out += ',' + std::to_string(row.score);
    out += ',' + format_ms(row.median_total_ms);
    out += ',' + format_ms(row.median_solve_ms);
    out += ',' + std::to_string(row.median_attempts);
    out += ',' + std::to_string(row.difficulty_mode);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  if (rows.empty()) {
    throw std::invalid_argument("refusing to write an empty result set");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << rows_to_csv(rows);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace apw
