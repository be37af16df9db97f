#include <doctest.h>

#include <httplib.h>

#include <set>

#include "apw/errors.hpp"
#include "apw/gate.hpp"
#include "apw/gate_server.hpp"

using namespace apw;

namespace {

GateConfig test_config() {
  GateConfig config;
  config.listen = "127.0.0.1:0";
  config.test_mode = true;
  config.rng_seed = 1234;
  return config;
}

std::shared_ptr<Scorer> fixture_scorer(std::initializer_list<std::pair<const std::string, double>> scores) {
  return std::make_shared<FixtureScorer>(ScoreTable(scores));
}

GateRequest plain_request(const std::string& ip) {
  GateRequest request;
  request.peer_addr = "127.0.0.1";
  request.client_ip_header = ip;
  return request;
}

std::optional<std::string> header_value(const GateResponse& response,
                                        std::string_view name) {
  for (const auto& [k, v] : response.headers) {
    if (k == name) return v;
  }
  return std::nullopt;
}

// One full challenge-solve round against the in-memory core.
GateResponse exchange(GateCore& core, const std::string& ip) {
  auto challenged = core.handle(plain_request(ip));
  REQUIRE(challenged.status == 403);
  auto challenge = challenge_from_json(challenged.body);
  REQUIRE(challenge.has_value());
  auto solved = solve(*challenge, ip);
  REQUIRE(solved.has_value());
  auto retry = plain_request(ip);
  retry.pow_header = format_pow_header(solved->solution);
  return core.handle(retry);
}

}  // namespace

TEST_CASE("healthz is never challenged") {
  GateCore core(test_config(), fixture_scorer({}));
  GateRequest request;
  request.path = "/healthz";
  request.peer_addr = "127.0.0.1";
  auto response = core.handle(request);
  CHECK(response.status == 200);
  CHECK(response.body == "ok");
}

TEST_CASE("first contact gets a 403 challenge with the policy difficulty") {
  // score 0 under policy1 -> 1-difficult puzzle
  GateCore core(test_config(), fixture_scorer({{"10.0.0.0", 0.0}}));
  auto response = core.handle(plain_request("10.0.0.0"));
  CHECK(response.status == 403);
  CHECK(response.content_type == "application/json");
  CHECK(header_value(response, kPowRequiredHeader) == "1");
  CHECK(!header_value(response, kPowRejectHeader).has_value());

  auto challenge = challenge_from_json(response.body);
  REQUIRE(challenge.has_value());
  CHECK(challenge->difficulty == 1);
  CHECK(challenge->ttl == core.config().ttl);
}

TEST_CASE("valid solution earns the protected resource") {
  auto config = test_config();
  config.static_body = "the goods";
  GateCore core(config, fixture_scorer({{"10.0.0.2", 2.0}}));

  auto response = exchange(core, "10.0.0.2");
  CHECK(response.status == 200);
  CHECK(response.body == "the goods");

  auto events = core.audit().snapshot();
  REQUIRE(events.size() >= 3);
  CHECK(events[0].kind == "challenge");
  CHECK(events[1].kind == "accept");
  CHECK(events[2].kind == "serve");
}

TEST_CASE("replayed solution is rejected with a fresh challenge") {
  GateCore core(test_config(), fixture_scorer({{"10.0.0.3", 3.0}}));

  auto challenged = core.handle(plain_request("10.0.0.3"));
  auto challenge = challenge_from_json(challenged.body);
  REQUIRE(challenge.has_value());
  auto solved = solve(*challenge, "10.0.0.3");
  REQUIRE(solved.has_value());

  auto retry = plain_request("10.0.0.3");
  retry.pow_header = format_pow_header(solved->solution);
  CHECK(core.handle(retry).status == 200);

  auto replay = core.handle(retry);
  CHECK(replay.status == 403);
  CHECK(header_value(replay, kPowRejectHeader) == "Replayed");

  auto fresh = challenge_from_json(replay.body);
  REQUIRE(fresh.has_value());
  CHECK(fresh->seed != challenge->seed);
}

TEST_CASE("syntactically invalid solution header is a 400") {
  GateCore core(test_config(), fixture_scorer({}));
  auto request = plain_request("10.0.0.4");
  request.pow_header = "v=1;seed=nothex;ts=1;d=1;nonce=zzzzzzzz";
  CHECK(core.handle(request).status == 400);
}

TEST_CASE("client IP resolution") {
  SUBCASE("test mode honors X-Client-IP") {
    GateCore core(test_config(), fixture_scorer({}));
    auto ip = core.resolve_client_ip(plain_request("10.0.0.9"));
    CHECK(ip == "10.0.0.9");
  }
  SUBCASE("production mode ignores the header") {
    auto config = test_config();
    config.test_mode = false;
    GateCore core(config, fixture_scorer({}));
    auto ip = core.resolve_client_ip(plain_request("10.0.0.9"));
    CHECK(ip == "127.0.0.1");
  }
  SUBCASE("malformed header IP is a 400") {
    GateCore core(test_config(), fixture_scorer({}));
    auto request = plain_request("not-an-ip");
    CHECK(core.handle(request).status == 400);
  }
  SUBCASE("IPv6 is canonicalized") {
    GateCore core(test_config(), fixture_scorer({}));
    auto ip = core.resolve_client_ip(plain_request("2001:DB8:0:0:0:0:0ter:1"));
    CHECK(!ip.has_value());
    ip = core.resolve_client_ip(plain_request("2001:DB8::1"));
    CHECK(ip == "2001:db8::1");
  }
}

TEST_CASE("exempt IPs get difficulty-0 challenges and still complete the round") {
  auto config = test_config();
  config.exempt_ips = {"10.0.0.99"};
  GateCore core(config, fixture_scorer({{"10.0.0.99", 10.0}}));

  auto challenged = core.handle(plain_request("10.0.0.99"));
  CHECK(challenged.status == 403);
  auto challenge = challenge_from_json(challenged.body);
  REQUIRE(challenge.has_value());
  CHECK(challenge->difficulty == 0);

  CHECK(exchange(core, "10.0.0.99").status == 200);
}

TEST_CASE("store exhaustion surfaces as 503") {
  auto config = test_config();
  config.store_capacity = 2;
  GateCore core(config, fixture_scorer({}));
  CHECK(core.handle(plain_request("10.0.0.1")).status == 403);
  CHECK(core.handle(plain_request("10.0.0.2")).status == 403);
  CHECK(core.handle(plain_request("10.0.0.3")).status == 503);
}

TEST_CASE("every challenge carries a fresh seed") {
  GateCore core(test_config(), fixture_scorer({}));
  std::set<std::string> seeds;
  for (int i = 0; i < 50; ++i) {
    auto response = core.handle(plain_request("10.0.0.8"));
    auto challenge = challenge_from_json(response.body);
    REQUIRE(challenge.has_value());
    seeds.insert(std::string(challenge->seed.begin(), challenge->seed.end()));
  }
  CHECK(seeds.size() == 50);
}

TEST_CASE("reject reasons on the wire match VerifyOutcome spellings") {
  GateCore core(test_config(), fixture_scorer({}));

  auto challenged = core.handle(plain_request("10.0.0.5"));
  auto challenge = challenge_from_json(challenged.body);
  REQUIRE(challenge.has_value());
  auto solved = solve(*challenge, "10.0.0.5");
  REQUIRE(solved.has_value());

  SUBCASE("WrongClient") {
    auto retry = plain_request("10.0.0.6");  // different identity
    retry.pow_header = format_pow_header(solved->solution);
    auto response = core.handle(retry);
    CHECK(response.status == 403);
    CHECK(header_value(response, kPowRejectHeader) == "WrongClient");
  }
  SUBCASE("UnknownSeed") {
    auto tampered = solved->solution;
    tampered.seed[3] ^= 0x40;
    auto retry = plain_request("10.0.0.5");
    retry.pow_header = format_pow_header(tampered);
    auto response = core.handle(retry);
    CHECK(header_value(response, kPowRejectHeader) == "UnknownSeed");
  }
  SUBCASE("DifficultyMismatch") {
    auto tampered = solved->solution;
    tampered.difficulty += 1;
    auto retry = plain_request("10.0.0.5");
    retry.pow_header = format_pow_header(tampered);
    auto response = core.handle(retry);
    CHECK(header_value(response, kPowRejectHeader) == "DifficultyMismatch");
  }
}

TEST_CASE("end-to-end liveness across the difficulty range") {
  // Drive each d in 1..16 through its own gate: fixture score 0 plus a
  // linear offset d yields exactly d.
  for (int d = 1; d <= 16; ++d) {
    auto config = test_config();
    config.policy = "linear";
    config.offset = d;
    GateCore core(config, fixture_scorer({{"10.0.0.1", 0.0}}));

    auto challenged = core.handle(plain_request("10.0.0.1"));
    auto challenge = challenge_from_json(challenged.body);
    REQUIRE(challenge.has_value());
    CHECK(challenge->difficulty == d);

    auto solved = solve(*challenge, "10.0.0.1");
    REQUIRE(solved.has_value());
    auto retry = plain_request("10.0.0.1");
    retry.pow_header = format_pow_header(solved->solution);
    CHECK(core.handle(retry).status == 200);
  }
}

TEST_CASE("gate server speaks HTTP on an ephemeral port") {
  GateServer server(test_config(), fixture_scorer({{"10.0.0.1", 1.0}}));
  REQUIRE(server.start());
  REQUIRE(server.port() > 0);

  httplib::Client http("127.0.0.1", server.port());

  auto health = http.Get("/healthz");
  REQUIRE(health);
  CHECK(health->status == 200);

  httplib::Headers headers{{std::string(kClientIpHeader), "10.0.0.1"}};
  auto first = http.Get("/", headers);
  REQUIRE(first);
  CHECK(first->status == 403);
  CHECK(first->get_header_value(std::string(kPowRequiredHeader)) == "1");

  auto challenge = challenge_from_json(first->body);
  REQUIRE(challenge.has_value());
  CHECK(challenge->difficulty == 2);  // policy1, score 1

  auto solved = solve(*challenge, "10.0.0.1");
  REQUIRE(solved.has_value());
  httplib::Headers retry = headers;
  retry.emplace(std::string(kPowHeader), format_pow_header(solved->solution));
  auto second = http.Get("/", retry);
  REQUIRE(second);
  CHECK(second->status == 200);
  CHECK(second->body == "ok");

  server.stop();
}

TEST_CASE("forward mode relays the origin response") {
  // stand-in origin
  httplib::Server origin;
  origin.Get("/hello", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("hello from origin", "text/plain");
  });
  int origin_port = origin.bind_to_any_port("127.0.0.1");
  REQUIRE(origin_port > 0);
  std::thread origin_thread([&] { origin.listen_after_bind(); });
  origin.wait_until_ready();

  auto config = test_config();
  config.upstream = "http://127.0.0.1:" + std::to_string(origin_port);
  GateServer server(config, fixture_scorer({{"10.0.0.1", 0.0}}));
  REQUIRE(server.start());

  httplib::Client http("127.0.0.1", server.port());
  httplib::Headers headers{{std::string(kClientIpHeader), "10.0.0.1"}};

  auto first = http.Get("/hello", headers);
  REQUIRE(first);
  REQUIRE(first->status == 403);
  auto challenge = challenge_from_json(first->body);
  REQUIRE(challenge.has_value());
  auto solved = solve(*challenge, "10.0.0.1");
  REQUIRE(solved.has_value());

  httplib::Headers retry = headers;
  retry.emplace(std::string(kPowHeader), format_pow_header(solved->solution));
  auto second = http.Get("/hello", retry);
  REQUIRE(second);
  CHECK(second->status == 200);
  CHECK(second->body == "hello from origin");

  SUBCASE("origin down yields 502") {
    origin.stop();
    origin_thread.join();

    auto third = http.Get("/hello", headers);
    REQUIRE(third);
    REQUIRE(third->status == 403);
    auto c2 = challenge_from_json(third->body);
    REQUIRE(c2.has_value());
    auto s2 = solve(*c2, "10.0.0.1");
    REQUIRE(s2.has_value());
    httplib::Headers retry2 = headers;
    retry2.emplace(std::string(kPowHeader), format_pow_header(s2->solution));
    auto fourth = http.Get("/hello", retry2);
    REQUIRE(fourth);
    CHECK(fourth->status == 502);
  }

  server.stop();
  if (origin_thread.joinable()) {
    origin.stop();
    origin_thread.join();
  }
}

TEST_CASE("gate config JSON parsing") {
  auto config = gate_config_from_json(R"({
    "listen": "127.0.0.1:9099",
    "scorer": "fixture",
    "policy": "policy2",
    "epsilon": 0.5,
    "d_max": 20,
    "ttl": 60,
    "store_capacity": 4096,
    "upstream": "static",
    "static_body": "served",
    "test_mode": true,
    "exempt_ips": ["192.0.2.1"],
    "rng_seed": 42
  })");
  CHECK(config.listen == "127.0.0.1:9099");
  CHECK(config.policy == "policy2");
  CHECK(config.d_max == 20);
  CHECK(config.ttl == 60);
  CHECK(config.store_capacity == 4096);
  CHECK(config.static_body == "served");
  CHECK(config.test_mode);
  CHECK(config.exempt_ips == std::vector<std::string>{"192.0.2.1"});
  CHECK(config.rng_seed == 42);

  CHECK_THROWS_AS(gate_config_from_json("not json"), ParseError);
  CHECK_THROWS_AS(gate_config_from_json(R"({"scorer":"mystery"})"), ParseError);
  CHECK_THROWS_AS(gate_config_from_json(R"({"policy":"policy9"})"), ParseError);
  CHECK_THROWS_AS(gate_config_from_json(R"({"ttl":0})"), ParseError);
  CHECK_THROWS_AS(gate_config_from_json(R"({"offset":0})"), ParseError);
  CHECK_THROWS_AS(gate_config_from_json(R"({"epsilon":-1})"), ParseError);
}
