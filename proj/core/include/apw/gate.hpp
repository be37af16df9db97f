#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "apw/audit.hpp"
#include "apw/policy.hpp"
#include "apw/reputation.hpp"
#include "apw/seed_store.hpp"
#include "apw/wire.hpp"

namespace apw {

struct GateConfig {
  std::string listen = "127.0.0.1:8080";
  std::string scorer = "fixture";   // "euclidean" | "fixture"
  std::string policy = "policy1";   // preset or "linear" | "error-range"
  int offset = 1;
  double epsilon = kDefaultEpsilon;
  int d_max = kDefaultMaxDifficulty;
  std::int64_t ttl = 120;
  std::size_t store_capacity = std::size_t{1} << 20;
  std::string upstream = "static";  // "static" or an origin base URL
  std::string static_body = "ok";
  bool test_mode = false;           // honor X-Client-IP (bench/experiments only)
  std::vector<std::string> exempt_ips;
  std::string corpus_path;
  std::string feature_table_path;
  std::string score_table_path;
  double unknown_client_score = kDefaultUnknownClientScore;
  std::optional<std::uint64_t> rng_seed;  // fixed seed for reproducible runs

  bool forward_mode() const { return upstream != "static"; }
};

// Throws ParseError{Malformed} on bad types or bad values.
GateConfig gate_config_from_json(std::string_view json);
GateConfig load_gate_config(const std::string& path);

// Sanity checks shared by the JSON loader and CLI flag merging.
void validate_gate_config(const GateConfig& config);

PolicySpec policy_from_config(const GateConfig& config);

// Builds the configured scorer, loading corpus/table files as needed.
std::shared_ptr<Scorer> scorer_from_config(const GateConfig& config);

// Transport-agnostic request view; the HTTP layer fills it in.
struct GateRequest {
  std::string method = "GET";
  std::string path = "/";
  std::string peer_addr;
  std::optional<std::string> pow_header;
  std::optional<std::string> client_ip_header;
};

struct GateResponse {
  int status = 0;
  std::string content_type = "text/plain";
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;
  // Forward mode: the caller relays the request to the origin instead of
  // sending body (set only after an Accept).
  bool serve_upstream = false;
};

// The decision pipeline: score the client, map to a difficulty, challenge,
// verify, serve. One instance handles many concurrent requests.
class GateCore {
public:
  GateCore(GateConfig config, std::shared_ptr<Scorer> scorer,
           std::function<std::int64_t()> clock = {});

  GateResponse handle(const GateRequest& request);

  // Peer address, unless test mode is on and X-Client-IP is present.
  // nullopt when the effective address is not a parseable IP.
  std::optional<std::string> resolve_client_ip(const GateRequest& request) const;

  const GateConfig& config() const { return config_; }
  AuditLog& audit() { return audit_; }
  SeedStore& store() { return store_; }

private:
  GateResponse challenge_response(const std::string& client_ip,
                                  std::optional<VerifyOutcome::Code> reject,
                                  std::int64_t now);
  int pick_difficulty(const std::string& client_ip);

  GateConfig config_;
  PolicySpec policy_;
  std::shared_ptr<Scorer> scorer_;
  std::set<std::string> exempt_;
  SeedStore store_;
  AuditLog audit_;
  std::function<std::int64_t()> clock_;
  std::mutex rng_mu_;
  std::mt19937_64 rng_;
};

}  // namespace apw
