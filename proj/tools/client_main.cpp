// apw-client: command-line puzzle solver; one JSON report line per exchange.

#include <CLI11.hpp>

#include <atomic>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include "apw/client.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Proof-of-work exchange client"};

  apw::ClientOptions options;
  int repeat = 1;
  int concurrency = 1;
  std::string spoof_ip;

  app.add_option("--url", options.url, "gate URL, e.g. http://127.0.0.1:8080/")
      ->required();
  app.add_option("--spoof-ip", spoof_ip,
                 "identity sent as X-Client-IP (test-mode gates)");
  app.add_option("--repeat", repeat, "total exchanges to run")
      ->check(CLI::PositiveNumber);
  app.add_option("--concurrency", concurrency, "parallel workers")
      ->check(CLI::PositiveNumber);
  app.add_option("--timeout-ms", options.timeout_ms, "per-request timeout");
  app.add_option("--client-ip", options.client_ip,
                 "IP bound into the preimage when not spoofing");

  CLI11_PARSE(app, argc, argv);
  if (!spoof_ip.empty()) options.spoof_ip = spoof_ip;

  std::atomic<int> remaining{repeat};
  std::atomic<int> failures{0};
  std::mutex stdout_mu;

  auto worker = [&] {
    while (remaining.fetch_sub(1) > 0) {
      auto result = apw::request_with_pow(options);
      std::lock_guard lock(stdout_mu);
      if (result.ok()) {
        std::cout << apw::report_to_json(result.report) << "\n";
        if (result.report.outcome != 200) failures.fetch_add(1);
      } else {
        failures.fetch_add(1);
        std::cerr << "error: " << apw::to_string(result.error) << ": "
                  << result.message << "\n";
      }
    }
  };

  std::vector<std::thread> workers;
  for (int i = 0; i < std::min(concurrency, repeat); ++i) {
    workers.emplace_back(worker);
  }
  for (auto& w : workers) w.join();

  return failures.load() == 0 ? 0 : 1;
}
