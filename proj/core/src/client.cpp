#include "apw/client.hpp"

#include <chrono>
#include <cmath>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "apw/wire.hpp"

namespace apw {
namespace {

using SteadyClock = std::chrono::steady_clock;

double ms_between(SteadyClock::time_point a, SteadyClock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

// "http://host:port/path" -> {"http://host:port", "/path"}
std::pair<std::string, std::string> split_url(const std::string& url) {
  std::size_t scheme = url.find("://");
  std::size_t path_at = scheme == std::string::npos
                            ? url.find('/')
                            : url.find('/', scheme + 3);
  if (path_at == std::string::npos) return {url, "/"};
  return {url.substr(0, path_at), url.substr(path_at)};
}

}  // namespace

std::string_view to_string(ClientError error) {
  switch (error) {
    case ClientError::None: return "None";
    case ClientError::ConnectionFailed: return "ConnectionFailed";
    case ClientError::ProtocolError: return "ProtocolError";
    case ClientError::SolveFailed: return "SolveFailed";
  }
  return "Unknown";
}

ExchangeResult request_with_pow(const ClientOptions& options) {
  ExchangeResult result;
  auto [base, path] = split_url(options.url);

  httplib::Client http(base);
  http.set_connection_timeout(0, options.timeout_ms * 1000);
  http.set_read_timeout(0, options.timeout_ms * 1000);

  httplib::Headers headers;
  if (options.spoof_ip) {
    headers.emplace(std::string(kClientIpHeader), *options.spoof_ip);
  }

  const auto t0 = SteadyClock::now();
  httplib::Result first = http.Get(path, headers);
  const auto t1 = SteadyClock::now();
  if (!first) {
    result.error = ClientError::ConnectionFailed;
    result.message = httplib::to_string(first.error());
    return result;
  }

  result.report.challenge_rtt_ms = ms_between(t0, t1);

  if (first->status == 200) {
    result.report.outcome = 200;
    result.report.total_ms = result.report.challenge_rtt_ms;
    return result;  // not challenged (plain upstream or exempt path)
  }

  if (first->status != 403 || !first->has_header(std::string(kPowRequiredHeader))) {
    result.error = ClientError::ProtocolError;
    result.message = "expected a 403 challenge, got " + std::to_string(first->status);
    result.report.outcome = first->status;
    return result;
  }

  auto challenge = challenge_from_json(first->body);
  if (!challenge) {
    result.error = ClientError::ProtocolError;
    result.message = "unparseable challenge body";
    result.report.outcome = first->status;
    return result;
  }
  result.report.difficulty = challenge->difficulty;

  std::uint64_t budget = options.max_attempts;
  if (options.budget_factor) {
    budget = static_cast<std::uint64_t>(
        std::ceil(*options.budget_factor *
                  std::pow(2.0, static_cast<double>(challenge->difficulty))));
  }

  const std::string ip = options.spoof_ip ? *options.spoof_ip : options.client_ip;
  auto solved = solve(*challenge, ip, budget);
  const auto t2 = SteadyClock::now();
  result.report.solve_ms = ms_between(t1, t2);
  if (!solved) {
    result.error = ClientError::SolveFailed;
    result.message = "no qualifying nonce within budget";
    return result;
  }
  result.report.attempts = solved->attempts;

  httplib::Headers retry_headers = headers;
  retry_headers.emplace(std::string(kPowHeader),
                        format_pow_header(solved->solution));
  httplib::Result second = http.Get(path, retry_headers);
  const auto t3 = SteadyClock::now();
  if (!second) {
    result.error = ClientError::ConnectionFailed;
    result.message = httplib::to_string(second.error());
    return result;
  }

  result.report.verify_rtt_ms = ms_between(t2, t3);
  result.report.total_ms = ms_between(t0, t3);
  result.report.outcome = second->status;
  if (second->has_header(std::string(kPowRejectHeader))) {
    result.report.reject_reason =
        second->get_header_value(std::string(kPowRejectHeader));
  }
  return result;
}

std::string report_to_json(const ExchangeReport& report) {
  nlohmann::json j;
  j["challenge_rtt_ms"] = report.challenge_rtt_ms;
  j["solve_ms"] = report.solve_ms;
  j["verify_rtt_ms"] = report.verify_rtt_ms;
  j["total_ms"] = report.total_ms;
  j["attempts"] = report.attempts;
  j["difficulty"] = report.difficulty;
  j["outcome"] = report.outcome;
  if (!report.reject_reason.empty()) j["reject_reason"] = report.reject_reason;
  return j.dump();
}

}  // namespace apw
