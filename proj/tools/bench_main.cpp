// apw-bench: per-policy latency/attempts sweep over reputation scores.

#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <sstream>

#include "apw/bench.hpp"

namespace {

// "0..10" or "0,3,7"
std::vector<int> parse_scores(const std::string& text) {
  std::vector<int> scores;
  auto range_at = text.find("..");
  if (range_at != std::string::npos) {
    int lo = std::stoi(text.substr(0, range_at));
    int hi = std::stoi(text.substr(range_at + 2));
    for (int s = lo; s <= hi; ++s) scores.push_back(s);
    return scores;
  }
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) scores.push_back(std::stoi(cell));
  return scores;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reputation-score / puzzle-latency experiment"};

  std::string policies = "policy1,policy2,policy3";
  std::string scores = "0..10";
  std::string out_path = "results.csv";
  apw::ExperimentSpec spec;
  std::optional<std::uint64_t> seed;

  app.add_option("--policies", policies, "comma-separated policy presets");
  app.add_option("--trials", spec.trials, "exchanges per (policy, score) cell")
      ->check(CLI::PositiveNumber);
  app.add_option("--scores", scores, "score sweep, e.g. 0..10 or 0,5,10");
  app.add_option("--epsilon", spec.epsilon, "error-range half-width");
  app.add_option("--d_max", spec.d_max, "difficulty cap");
  app.add_option("--out", out_path, "output CSV path");
  app.add_option("--gate", spec.gate, "\"inprocess\" or a gate address");
  app.add_option("--seed", seed, "fix gate RNGs for a reproducible run");

  CLI11_PARSE(app, argc, argv);

  try {
    spec.policies = split_csv(policies);
    spec.scores = parse_scores(scores);
    if (seed) spec.rng_seed = seed;

    if (spec.gate != "inprocess" && spec.policies.size() != 1) {
      std::cerr << "an external gate runs one policy; pass exactly one via "
                   "--policies\n";
      return 2;
    }

    auto outcome = apw::run_experiment(spec);
    if (!outcome.rows.empty()) {
      apw::emit_csv(outcome.rows, out_path);
      std::cerr << outcome.rows.size() << " rows -> " << out_path << "\n";
    }
    for (const auto& cell : outcome.failed_cells) {
      std::cerr << "failed cell: " << cell << "\n";
    }
    return outcome.any_failed() ? 1 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
