#include "apw/gate.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "apw/errors.hpp"
#include "apw/hex.hpp"
#include "apw/ip.hpp"

namespace apw {
namespace {

std::int64_t system_now() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(ParseError::Kind::Malformed, "cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string json_error_body(std::string_view message) {
  nlohmann::json j;
  j["error"] = std::string(message);
  return j.dump();
}

}  // namespace

GateConfig gate_config_from_json(std::string_view json) {
  nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError(ParseError::Kind::Malformed, "config is not a JSON object");
  }

  GateConfig config;
  try {
    if (j.contains("listen")) config.listen = j["listen"].get<std::string>();
    if (j.contains("scorer")) config.scorer = j["scorer"].get<std::string>();
    if (j.contains("policy")) config.policy = j["policy"].get<std::string>();
    if (j.contains("offset")) config.offset = j["offset"].get<int>();
    if (j.contains("epsilon")) config.epsilon = j["epsilon"].get<double>();
    if (j.contains("d_max")) config.d_max = j["d_max"].get<int>();
    if (j.contains("ttl")) config.ttl = j["ttl"].get<std::int64_t>();
    if (j.contains("store_capacity")) {
      config.store_capacity = j["store_capacity"].get<std::size_t>();
    }
    if (j.contains("upstream")) config.upstream = j["upstream"].get<std::string>();
    if (j.contains("static_body")) {
      config.static_body = j["static_body"].get<std::string>();
    }
    if (j.contains("test_mode")) config.test_mode = j["test_mode"].get<bool>();
    if (j.contains("exempt_ips")) {
      config.exempt_ips = j["exempt_ips"].get<std::vector<std::string>>();
    }
    if (j.contains("corpus_path")) {
      config.corpus_path = j["corpus_path"].get<std::string>();
    }
    if (j.contains("feature_table_path")) {
      config.feature_table_path = j["feature_table_path"].get<std::string>();
    }
    if (j.contains("score_table_path")) {
      config.score_table_path = j["score_table_path"].get<std::string>();
    }
    if (j.contains("unknown_client_score")) {
      config.unknown_client_score = j["unknown_client_score"].get<double>();
    }
    if (j.contains("rng_seed")) {
      config.rng_seed = j["rng_seed"].get<std::uint64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(ParseError::Kind::Malformed,
                     std::string("bad config value: ") + e.what());
  }

  validate_gate_config(config);
  return config;
}

void validate_gate_config(const GateConfig& config) {
  if (config.scorer != "euclidean" && config.scorer != "fixture") {
    throw ParseError(ParseError::Kind::Malformed,
                     "scorer must be \"euclidean\" or \"fixture\"");
  }
  if (!PolicySpec::preset(config.policy, config.offset, config.epsilon,
                          config.d_max)) {
    throw ParseError(ParseError::Kind::Malformed,
                     "unknown policy \"" + config.policy + "\"");
  }
  if (config.offset < 1) {
    throw ParseError(ParseError::Kind::Malformed, "offset must be >= 1");
  }
  if (config.epsilon < 0.0) {
    throw ParseError(ParseError::Kind::Malformed, "epsilon must be >= 0");
  }
  if (config.d_max < 1) {
    throw ParseError(ParseError::Kind::Malformed, "d_max must be >= 1");
  }
  if (config.ttl <= 0) {
    throw ParseError(ParseError::Kind::Malformed, "ttl must be > 0");
  }
}

GateConfig load_gate_config(const std::string& path) {
  return gate_config_from_json(read_file(path));
}

PolicySpec policy_from_config(const GateConfig& config) {
  auto spec = PolicySpec::preset(config.policy, config.offset, config.epsilon,
                                 config.d_max);
  if (!spec) {
    throw ParseError(ParseError::Kind::Malformed,
                     "unknown policy \"" + config.policy + "\"");
  }
  return *spec;
}

std::shared_ptr<Scorer> scorer_from_config(const GateConfig& config) {
  if (config.scorer == "euclidean") {
    MaliciousCorpus corpus = parse_corpus(read_file(config.corpus_path));
    FeatureTable features;
    if (!config.feature_table_path.empty()) {
      features = parse_feature_table(read_file(config.feature_table_path));
    }
    return std::make_shared<EuclideanScorer>(std::move(corpus), std::move(features),
                                             config.unknown_client_score);
  }
  ScoreTable scores;
  if (!config.score_table_path.empty()) {
    scores = parse_score_table(read_file(config.score_table_path));
  }
  return std::make_shared<FixtureScorer>(std::move(scores),
                                         config.unknown_client_score);
}

GateCore::GateCore(GateConfig config, std::shared_ptr<Scorer> scorer,
                   std::function<std::int64_t()> clock)
    : config_(std::move(config)),
      policy_(policy_from_config(config_)),
      scorer_(std::move(scorer)),
      store_(config_.store_capacity, config_.ttl),
      clock_(clock ? std::move(clock) : system_now),
      rng_(config_.rng_seed ? *config_.rng_seed : std::random_device{}()) {
  for (const auto& ip : config_.exempt_ips) {
    if (auto canonical = canonical_ip(ip)) exempt_.insert(*canonical);
  }
}

std::optional<std::string> GateCore::resolve_client_ip(
    const GateRequest& request) const {
  if (config_.test_mode && request.client_ip_header) {
    return canonical_ip(*request.client_ip_header);
  }
  return canonical_ip(request.peer_addr);
}

int GateCore::pick_difficulty(const std::string& client_ip) {
  if (exempt_.contains(client_ip)) return 0;
  double score = scorer_->score(client_ip);
  std::lock_guard lock(rng_mu_);
  return apply_policy(policy_, score, rng_);
}

GateResponse GateCore::challenge_response(const std::string& client_ip,
                                          std::optional<VerifyOutcome::Code> reject,
                                          std::int64_t now) {
  int difficulty = pick_difficulty(client_ip);
  std::optional<PuzzleChallenge> challenge;
  {
    std::lock_guard lock(rng_mu_);
    challenge = store_.issue(client_ip, difficulty, rng_, now);
  }
  if (!challenge) {
    audit_.append({now, "error", client_ip, "", "store full"});
    return {503, "application/json", json_error_body("seed store full"), {}, false};
  }

  audit_.append({now, "challenge", client_ip, hex_encode(challenge->seed),
                 "d=" + std::to_string(difficulty)});

  GateResponse response;
  response.status = 403;
  response.content_type = "application/json";
  response.body = challenge_to_json(*challenge);
  response.headers.emplace_back(std::string(kPowRequiredHeader), "1");
  if (reject) {
    response.headers.emplace_back(std::string(kPowRejectHeader),
                                  std::string(to_string(*reject)));
  }
  return response;
}

GateResponse GateCore::handle(const GateRequest& request) {
  const std::int64_t now = clock_();

  if (request.path == "/healthz") {
    return {200, "text/plain", "ok", {}, false};
  }

  auto client_ip = resolve_client_ip(request);
  if (!client_ip) {
    return {400, "application/json", json_error_body("unparseable client address"),
            {}, false};
  }

  if (!request.pow_header) {
    return challenge_response(*client_ip, std::nullopt, now);
  }

  auto solution = parse_pow_header(*request.pow_header);
  if (!solution) {
    return {400, "application/json", json_error_body("bad X-PoW header"), {}, false};
  }

  VerifyOutcome outcome = store_.verify(*solution, *client_ip, now);
  const std::string seed_hex = hex_encode(solution->seed);
  if (!outcome.accepted()) {
    audit_.append({now, "reject", *client_ip, seed_hex,
                   std::string(to_string(outcome.code))});
    return challenge_response(*client_ip, outcome.code, now);
  }

  audit_.append({now, "accept", *client_ip, seed_hex, ""});
  if (config_.forward_mode()) {
    GateResponse response;
    response.status = 200;  // placeholder; the relay sets the real status
    response.serve_upstream = true;
    return response;
  }
  audit_.append({now, "serve", *client_ip, seed_hex, "200"});
  return {200, "text/plain", config_.static_body, {}, false};
}

}  // namespace apw
