// apw-gate: adaptive proof-of-work HTTP gateway.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <iostream>
#include <thread>

#include "apw/errors.hpp"
#include "apw/gate_server.hpp"

namespace {

std::atomic<bool> g_stop{false};

void handle_signal(int) { g_stop.store(true); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive proof-of-work gateway"};

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override it");

  // Mirrors of the config keys.
  std::optional<std::string> listen, scorer, policy, upstream, static_body;
  std::optional<std::string> corpus_path, feature_table_path, score_table_path;
  std::optional<int> offset, d_max;
  std::optional<double> epsilon, unknown_client_score;
  std::optional<std::int64_t> ttl;
  std::optional<std::size_t> store_capacity;
  std::optional<bool> test_mode;
  std::optional<std::uint64_t> rng_seed;
  std::vector<std::string> exempt_ips;

  app.add_option("--listen", listen, "host:port to bind (port 0 = ephemeral)");
  app.add_option("--scorer", scorer, "euclidean | fixture");
  app.add_option("--policy", policy,
                 "policy1 | policy2 | policy3 | linear | error-range");
  app.add_option("--offset", offset, "linear policy offset (>= 1)");
  app.add_option("--epsilon", epsilon, "error-range half-width (>= 0)");
  app.add_option("--d_max", d_max, "difficulty cap");
  app.add_option("--ttl", ttl, "challenge lifetime in seconds");
  app.add_option("--store_capacity", store_capacity, "max live seeds");
  app.add_option("--upstream", upstream, "\"static\" or an origin base URL");
  app.add_option("--static_body", static_body, "body served in static mode");
  app.add_option("--test_mode", test_mode, "honor X-Client-IP (benchmarking)");
  app.add_option("--exempt_ips", exempt_ips, "IPs challenged at difficulty 0");
  app.add_option("--corpus_path", corpus_path, "malicious-corpus CSV");
  app.add_option("--feature_table_path", feature_table_path, "ip,f1..fk CSV");
  app.add_option("--score_table_path", score_table_path, "ip,score CSV");
  app.add_option("--unknown_client_score", unknown_client_score,
                 "score for clients absent from the tables");
  app.add_option("--rng_seed", rng_seed, "fix the server RNG (reproducible runs)");

  CLI11_PARSE(app, argc, argv);

  try {
    apw::GateConfig config;
    if (!config_path.empty()) config = apw::load_gate_config(config_path);

    if (listen) config.listen = *listen;
    if (scorer) config.scorer = *scorer;
    if (policy) config.policy = *policy;
    if (offset) config.offset = *offset;
    if (epsilon) config.epsilon = *epsilon;
    if (d_max) config.d_max = *d_max;
    if (ttl) config.ttl = *ttl;
    if (store_capacity) config.store_capacity = *store_capacity;
    if (upstream) config.upstream = *upstream;
    if (static_body) config.static_body = *static_body;
    if (test_mode) config.test_mode = *test_mode;
    if (!exempt_ips.empty()) config.exempt_ips = exempt_ips;
    if (corpus_path) config.corpus_path = *corpus_path;
    if (feature_table_path) config.feature_table_path = *feature_table_path;
    if (score_table_path) config.score_table_path = *score_table_path;
    if (unknown_client_score) config.unknown_client_score = *unknown_client_score;
    if (rng_seed) config.rng_seed = *rng_seed;

    apw::validate_gate_config(config);

    auto scorer_impl = apw::scorer_from_config(config);
    apw::GateServer server(config, scorer_impl);
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);

    if (!server.start()) {
      std::cerr << "cannot bind " << config.listen << "\n";
      return 1;
    }
    std::cerr << "listening on port " << server.port() << " (policy "
              << config.policy << ", scorer " << config.scorer << ")\n";
    while (!g_stop.load()) {
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    server.stop();
  } catch (const apw::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
