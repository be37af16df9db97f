#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace apw {

struct ClientOptions {
  std::string url;                       // e.g. http://127.0.0.1:8080/
  std::optional<std::string> spoof_ip;   // sent as X-Client-IP (test-mode gates)
  std::string client_ip = "127.0.0.1";   // preimage IP when not spoofing
  int timeout_ms = 10000;
  // Solve budget; derived from the challenge when budget_factor is set
  // (budget = factor * 2^d), otherwise the full nonce space.
  std::uint64_t max_attempts = std::uint64_t{1} << 32;
  std::optional<double> budget_factor;
};

// Latency/attempts breakdown of one two-round exchange. When the first
// response is already 200 (no challenge), the solve fields stay zero.
struct ExchangeReport {
  double challenge_rtt_ms = 0.0;
  double solve_ms = 0.0;
  double verify_rtt_ms = 0.0;
  double total_ms = 0.0;
  std::uint64_t attempts = 0;
  int difficulty = 0;
  int outcome = 0;             // final HTTP status
  std::string reject_reason;   // X-PoW-Reject on the final response, if any
};

enum class ClientError {
  None,
  ConnectionFailed,
  ProtocolError,   // unparseable or unexpected challenge response
  SolveFailed,     // nonce space or budget exhausted
};

std::string_view to_string(ClientError error);

struct ExchangeResult {
  ClientError error = ClientError::None;
  std::string message;
  ExchangeReport report;

  bool ok() const { return error == ClientError::None; }
};

// Full exchange: request, parse challenge, solve, retry with the solution
// header. Reads the clock around each phase for the report.
ExchangeResult request_with_pow(const ClientOptions& options);

// One JSON object per exchange (the bench consumes these).
std::string report_to_json(const ExchangeReport& report);

}  // namespace apw
